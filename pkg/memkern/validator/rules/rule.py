from memkern.base import Registry


class Rule:
    ERROR_ATTR = "MSG_ERROR"

    def validate(self, value, options: list = None, error_msg=None):
        raise NotImplementedError()

    def error_message(self, msg_override=None, *args) -> str:
        msg = msg_override if msg_override else getattr(self, self.ERROR_ATTR, None)
        if not msg:
            raise RuntimeError(
                "missing error message attribute '{0}' on Rule '{1}'".format(self.ERROR_ATTR, str(type(self)))
            )
        if len(args) > 0:
            return msg.format(*args)
        return msg


# Validator registry
registry = Registry(Rule)
