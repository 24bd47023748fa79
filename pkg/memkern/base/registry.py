from threading import Lock
from typing import Any, Iterator, List


class BaseRegistry:
    """
    Thread-safe name -> entry map shared by kernels, backends, commands, rules and filters

    Entries keep registration order; names() and iteration follow it
    """

    def __init__(self, interface):
        self._interface = interface
        self._entries = {}
        self._lock = Lock()

    def _put(self, caller: str, name: str, entry: Any, override: bool):
        with self._lock:
            if not override and name in self._entries:
                raise ValueError("{}(): name '{}' already exists".format(caller, name))
            self._entries[name] = entry

    def get(self, name: str):
        """
        Look up an entry
        :param name: entry name
        :return: registered object or class
        """
        with self._lock:
            try:
                return self._entries[name]
            except KeyError:
                known = ", ".join(sorted(self._entries))
        raise ValueError("Registry.get(): unknown name '{}'; available: {}".format(name, known))

    def has(self, name: str) -> bool:
        return name in self

    def names(self) -> List[str]:
        with self._lock:
            return list(self._entries)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names())

    def __getitem__(self, name):
        with self._lock:
            return self._entries[name]

    def __setitem__(self, name, value):
        raise RuntimeError("Registry: use the register methods to add '{}'".format(name))

    def __contains__(self, name) -> bool:
        with self._lock:
            return name in self._entries

    def __len__(self) -> int:
        with self._lock:
            return len(self._entries)

    def __repr__(self):
        return "{}({})".format(type(self).__name__, ", ".join(self.names()))


class Registry(BaseRegistry):
    """
    Registry of singleton instances; the decorator instantiates the class once
    """

    def register_cls(self, name: str = None, override: bool = False):
        """
        Decorator registering one instance of the decorated class
        :param name: entry name
        :param override: replace an existing entry
        """
        if not name:
            raise ValueError("Registry.register_cls(): missing name parameter")

        def decorator(cls):
            self.register_obj(name, cls(), override)
            return cls

        return decorator

    def register_obj(self, name: str, obj, override: bool = False):
        if not isinstance(obj, self._interface):
            raise TypeError(
                "Registry.register_obj(): '{}' is not a {}".format(type(obj).__name__, self._interface.__name__)
            )
        self._put("Registry.register_obj", name, obj, override)


class ClassRegistry(BaseRegistry):
    """
    Registry of classes; create() instantiates on demand
    """

    def register(self, name: str = None, override: bool = False):
        """
        Decorator registering the decorated class itself
        :param name: entry name
        :param override: replace an existing entry
        """
        if not name:
            raise ValueError("ClassRegistry.register(): missing name parameter")

        def decorator(cls):
            self.register_cls(name, cls, override)
            return cls

        return decorator

    def register_cls(self, name: str, cls, override: bool = False):
        if not (isinstance(cls, type) and issubclass(cls, self._interface)):
            raise TypeError(
                "ClassRegistry.register_cls(): '{}' does not extend {}".format(
                    getattr(cls, "__name__", cls), self._interface.__name__
                )
            )
        self._put("ClassRegistry.register_cls", name, cls, override)

    def create(self, name: str, *args, **kwargs):
        return self.get(name)(*args, **kwargs)
