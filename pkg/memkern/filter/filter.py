from typing import Any

from memkern.base import Registry
from memkern.util.cast import cast_bool, cast_float, cast_float_list, cast_int, cast_str


class Filter:
    def transform(self, src: Any) -> Any:
        return src


# Filter registry
registry = Registry(Filter)


@registry.register_cls(name="int")
class Int(Filter):
    def transform(self, src: Any) -> Any:
        return cast_int(src)


@registry.register_cls(name="float")
class Float(Filter):
    def transform(self, src: Any) -> Any:
        return cast_float(src)


@registry.register_cls(name="bool")
class Bool(Filter):
    def transform(self, src: Any) -> Any:
        return cast_bool(src)


@registry.register_cls(name="floatlist")
class FloatList(Filter):
    def transform(self, src: Any) -> Any:
        return cast_float_list(src)


@registry.register_cls(name="strlist")
class StrList(Filter):
    def transform(self, src: Any) -> Any:
        if src is None:
            return None
        if isinstance(src, str):
            return [s.strip() for s in src.split(",") if s.strip()]
        return [cast_str(s) for s in src]


def apply_filters(values: dict, filters: dict) -> dict:
    """
    Transform selected entries of a dict; keys without a filter pass through
    :param values: raw values
    :param filters: field name -> filter name
    :return: new dict
    """
    result = dict(values)
    for name, filter_name in filters.items():
        if name in result and result[name] is not None:
            result[name] = registry.get(filter_name).transform(result[name])
    return result
