from typing import List, Optional

TRUE_VALUES = ("1", "y", "yes", "t", "true", "on")
FALSE_VALUES = ("0", "n", "no", "f", "false", "off")


def cast_str(value) -> Optional[str]:
    try:
        return str(value) if value is not None else None
    except ValueError:
        return None


def cast_int(value) -> Optional[int]:
    if isinstance(value, bool):
        return None
    try:
        return int(value) if value is not None else None
    except (TypeError, ValueError):
        return None


def cast_float(value) -> Optional[float]:
    if isinstance(value, bool):
        return None
    try:
        return float(value) if value is not None else None
    except (TypeError, ValueError):
        return None


def cast_bool(value) -> Optional[bool]:
    """
    Parse boolean-ish text; None when the value is not recognized
    """
    if isinstance(value, bool):
        return value
    value = cast_str(value)
    if value is None:
        return None
    value = value.strip().lower()
    if value in TRUE_VALUES:
        return True
    if value in FALSE_VALUES:
        return False
    return None


def cast_float_list(value) -> Optional[List[float]]:
    """
    Comma-separated (or already split) numbers to a list of floats; None if any item fails
    """
    if value is None:
        return None
    if isinstance(value, str):
        value = [v for v in value.split(",") if v.strip()]
    try:
        items = list(value)
    except TypeError:
        return None
    result = []
    for item in items:
        number = cast_float(item.strip() if isinstance(item, str) else item)
        if number is None:
            return None
        result.append(number)
    return result
