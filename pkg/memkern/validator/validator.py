from typing import Any, Dict, List, Optional, Tuple, Union

from memkern.validator.rules import registry

RuleMap = Dict[str, Optional[List]]


def parse_rules(text: str) -> RuleMap:
    """
    Parse a laravel-style rule chain, e.g. 'required|positive|between:1,64'
    :param text: rule chain
    :return: dict rule name -> option list (None when the rule takes no options)
    """
    result = {}
    for token in text.split("|"):
        name, *options = token.split(":")
        if not name or len(options) > 1:
            raise ValueError("parse_rules(): malformed rule '{}' in '{}'".format(token, text))
        result[name] = options[0].split(",") if options else None
    return result


class Validator:
    """
    Per-field rule validation for run configuration values

    Example:
        v = Validator({"dt": "required|positive", "n_max": "int|between:1,64"})
        if not v.is_valid({"dt": 0.01, "n_max": 80}):
            field, message = v.first_error()    # ('n_max', 'must be between 1 and 64')

    Rules run in declaration order and every failing rule is reported, unless 'bail' stops at the first one.
    A field holding None fails 'required' when present and skips the other rules otherwise.
    """

    RULE_BAIL = "bail"
    RULE_REQUIRED = "required"

    def __init__(self, rules: dict = None, messages: dict = None):
        """
        :param rules: optional field -> rule chain (str) or rule map (dict)
        :param messages: optional field -> message replacing every error of that field
        """
        self._fields = {}
        self._messages = {}
        self._errors = {}
        messages = messages or {}
        for name, chain in (rules or {}).items():
            self.add_field(name, chain, messages.get(name))

    def add_field(self, name: str, rules: Union[RuleMap, str], message: str = None) -> "Validator":
        if name in self._fields:
            raise ValueError("Validator.add_field(): field '{}' already exists".format(name))
        if isinstance(rules, str):
            rules = parse_rules(rules)
        unknown = [rule for rule in rules if not registry.has(rule)]
        if unknown:
            raise ValueError("Validator.add_field(): unknown rule '{}' for field '{}'".format(unknown[0], name))

        self._fields[name] = dict(rules)
        if message is not None:
            self._messages[name] = message
        return self

    def field_names(self) -> List[str]:
        return list(self._fields)

    def field_rules(self, name: str) -> RuleMap:
        try:
            return self._fields[name]
        except KeyError:
            raise ValueError("Validator.field_rules(): unknown field '{}'".format(name))

    def clear(self):
        self._fields = {}
        self._messages = {}

    def reset(self):
        self._errors = {}

    def get_errors(self, name: str = None) -> dict:
        """
        {field: {rule: message}}, or {rule: message} for a single field
        """
        if name is None:
            return self._errors
        return self._errors.get(name, {})

    def first_error(self) -> Optional[Tuple[str, str]]:
        """
        (field, message) of the first failing field in declaration order
        """
        for name in self._fields:
            errors = self._errors.get(name)
            if errors:
                return name, next(iter(errors.values()))
        return None

    def is_valid(self, values: dict) -> bool:
        self.reset()
        for name in self._fields:
            errors = self.validate_field(name, values.get(name))
            if errors:
                self._errors[name] = errors
        return not self._errors

    def validate_field(self, name: str, value: Any) -> dict:
        """
        Errors of one field as {rule: message}; empty when valid
        """
        rules = self.field_rules(name)
        errors = self._check(rules, value)
        if errors and name in self._messages:
            return {"*": self._messages[name]}
        return errors

    def _check(self, rules: RuleMap, value: Any) -> dict:
        present, message = registry.get(self.RULE_REQUIRED).validate(value)
        if not present:
            return {self.RULE_REQUIRED: message} if self.RULE_REQUIRED in rules else {}

        bail = self.RULE_BAIL in rules
        errors = {}
        for rule, options in rules.items():
            if rule == self.RULE_REQUIRED:
                continue
            if options is not None and not isinstance(options, (list, tuple)):
                options = [options]
            valid, message = registry.get(rule).validate(value, options=options)
            if not valid:
                errors[rule] = message
                if bail:
                    break
        return errors
