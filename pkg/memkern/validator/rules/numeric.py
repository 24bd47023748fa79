import math

from memkern.util.cast import cast_float, cast_float_list, cast_int

from .rule import Rule, registry


def _number(value):
    number = cast_float(value)
    if number is None or not math.isfinite(number):
        return None
    return number


@registry.register_cls(name="numeric")
class Numeric(Rule):
    MSG_ERROR = "must be a finite number"

    def validate(self, value, options: list = None, error_msg=None):
        if _number(value) is not None:
            return True, ""
        return False, self.error_message(error_msg)


@registry.register_cls(name="int")
class Int(Rule):
    MSG_ERROR = "must be an integer"

    def validate(self, value, options: list = None, error_msg=None):
        number = cast_int(value)
        if number is not None and not (isinstance(value, float) and not value.is_integer()):
            return True, ""
        return False, self.error_message(error_msg)


@registry.register_cls(name="positive")
class Positive(Rule):
    MSG_ERROR = "must be positive"

    def validate(self, value, options: list = None, error_msg=None):
        number = _number(value)
        if number is not None and number > 0:
            return True, ""
        return False, self.error_message(error_msg)


@registry.register_cls(name="nonnegative")
class NonNegative(Rule):
    MSG_ERROR = "must be non-negative"

    def validate(self, value, options: list = None, error_msg=None):
        number = _number(value)
        if number is not None and number >= 0:
            return True, ""
        return False, self.error_message(error_msg)


@registry.register_cls(name="gt")
class GreaterThan(Rule):
    MSG_ERROR = "must be greater than {0}"

    def validate(self, value, options: list = None, error_msg=None):
        number = _number(value)
        if number is not None and number > float(options[0]):
            return True, ""
        return False, self.error_message(error_msg, *options)


@registry.register_cls(name="min")
class Min(Rule):
    MSG_ERROR = "must be at least {0}"

    def validate(self, value, options: list = None, error_msg=None):
        number = _number(value)
        if number is not None and number >= float(options[0]):
            return True, ""
        return False, self.error_message(error_msg, *options)


@registry.register_cls(name="max")
class Max(Rule):
    MSG_ERROR = "must be at most {0}"

    def validate(self, value, options: list = None, error_msg=None):
        number = _number(value)
        if number is not None and number <= float(options[0]):
            return True, ""
        return False, self.error_message(error_msg, *options)


@registry.register_cls(name="between")
class Between(Rule):
    MSG_ERROR = "must be between {0} and {1}"

    def validate(self, value, options: list = None, error_msg=None):
        if not options or len(options) != 2:
            raise ValueError("Between.validate(): invalid options parameter length")
        number = _number(value)
        if number is not None and float(options[1]) >= number >= float(options[0]):
            return True, ""
        return False, self.error_message(error_msg, *options)


@registry.register_cls(name="positivelist")
class PositiveList(Rule):
    MSG_ERROR = "must be a list of positive numbers"

    def validate(self, value, options: list = None, error_msg=None):
        numbers = cast_float_list(value)
        if numbers and all(math.isfinite(n) and n > 0 for n in numbers):
            return True, ""
        return False, self.error_message(error_msg)
