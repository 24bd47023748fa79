from memkern.util.cast import cast_bool, cast_str

from .rule import Rule, registry


@registry.register_cls(name="bail")
class Bail(Rule):
    def validate(self, value, options: list = None, error_msg=None):
        return True, ""


@registry.register_cls(name="required")
class Required(Rule):
    MSG_ERROR = "value required"

    def validate(self, value, options: list = None, error_msg=None):
        if value is None:
            return False, self.error_message(error_msg)
        return True, ""


@registry.register_cls(name="notempty")
class NotEmpty(Rule):
    MSG_ERROR = "cannot be empty"

    def validate(self, value, options: list = None, error_msg=None):
        if isinstance(value, (list, tuple)):
            return (True, "") if len(value) > 0 else (False, self.error_message(error_msg))
        value = cast_str(value)
        if value is not None and len(value.strip()) > 0:
            return True, ""
        return False, self.error_message(error_msg)


@registry.register_cls(name="strin")
class StrIn(Rule):
    MSG_ERROR = "must be one of: {0}"

    def validate(self, value, options: list = None, error_msg=None):
        options = options or []
        value = cast_str(value)
        if value is not None and value in options:
            return True, ""
        return False, self.error_message(error_msg, ", ".join(options))


@registry.register_cls(name="bool")
class Bool(Rule):
    MSG_ERROR = "invalid boolean"

    def validate(self, value, options: list = None, error_msg=None):
        if cast_bool(value) is not None:
            return True, ""
        return False, self.error_message(error_msg)


@registry.register_cls(name="list")
class RuleList(Rule):
    MSG_ERROR = "value is not a list"

    def validate(self, value, options: list = None, error_msg=None):
        if type(value) not in (tuple, list):
            return False, self.error_message(error_msg)
        return True, ""


@registry.register_cls(name="listlen")
class ListLen(Rule):
    MSG_ERROR = "item count must be between {0} and {1}"

    def validate(self, value, options: list = None, error_msg=None):
        size = len(value) if type(value) in (list, tuple) else 0
        options = options or []
        if len(options) >= 2:
            if size < int(options[0]) or size > int(options[1]):
                return False, self.error_message(error_msg, *options[:2])
        elif len(options) == 1 and size < int(options[0]):
            return False, self.error_message(error_msg, options[0], "∞")
        return True, ""
