import collections.abc
import copy


class ContainerBase:
    def __init__(self, data):
        self._data = data

    def has(self, key) -> bool:
        return key in self._data.keys()

    def asdict(self) -> dict:
        return self._data

    def get(self, key, default=None):
        if key in self._data:
            return self.__getitem__(key)
        return default

    def keys(self):
        return self._data.keys()

    def values(self) -> list:
        return [self.__getitem__(k) for k in self._data.keys()]

    def items(self) -> list:
        return [(k, self.__getitem__(k)) for k in self._data.keys()]

    def __len__(self):
        return len(self._data)

    def __getitem__(self, key):
        raise RuntimeError("ContainerBase.__getitem__(): abstract method")

    def __contains__(self, item):
        return item in self._data.keys()

    def __repr__(self):
        return "{}({!r})".format(type(self).__name__, self._data)


class Container(ContainerBase):
    """
    Immutable (read-only) container that copies initial data

    Used for curve provenance metadata; changes to the source dict after construction
    do not affect the container
    """

    def __init__(self, data: dict = None):
        if data is None:
            data = {}
        if not isinstance(data, collections.abc.Mapping):
            raise ValueError("Container(): expected dict/Mapping, %s found instead" % str(type(data)))
        super().__init__(copy.deepcopy(dict(data)))

    def __getitem__(self, key):
        v = self._data[key]
        if isinstance(v, collections.abc.Mapping):
            return Container(v)
        return v

    def merged(self, extra: dict) -> "Container":
        """
        Build a new container with extra keys added or replaced
        :param extra: keys to add
        :return: Container
        """
        data = dict(self._data)
        data.update(extra)
        return Container(data)


class ShallowContainer(ContainerBase):
    """
    Immutable (read-only) container that does not copy initial data

    Note: if the underlying dict passed on the constructor is changed, container contents *will* change
    """

    def __init__(self, data: dict):
        if not isinstance(data, collections.abc.Mapping):
            raise ValueError("ShallowContainer(): expected dict/Mapping, %s found instead" % str(type(data)))
        super().__init__(data)

    def __getitem__(self, key):
        v = self._data[key]
        if isinstance(v, collections.abc.Mapping):
            return ShallowContainer(v)
        return v
