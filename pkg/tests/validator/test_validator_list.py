import pytest

from memkern.validator import Validator

FIELD_NAME = "tau_c_list"

list_values = {
    "v1": {FIELD_NAME: None},
    "v2": {FIELD_NAME: "1,2,4"},
    "v3": {FIELD_NAME: 3},
    "v4": {},
    "v5": {FIELD_NAME: [1.0]},
    "v6": {FIELD_NAME: [1.0, 2.0, 4.0, 8.0, 16.0, 32.0]},
    "v7": {FIELD_NAME: [1.0, -2.0, 4.0]},
}

MSG_LIST = "value is not a list"
MSG_REQUIRED = "value required"
MSG_POSITIVE = "must be a list of positive numbers"

list_rules_results = {
    "list": {
        "v1": {},  # field not required, None is fine
        "v2": {FIELD_NAME: {"list": MSG_LIST}},
        "v3": {FIELD_NAME: {"list": MSG_LIST}},
        "v4": {},
        "v5": {},
        "v6": {},
        "v7": {},
    },
    "required|list|positivelist": {
        "v1": {FIELD_NAME: {"required": MSG_REQUIRED}},
        "v2": {FIELD_NAME: {"list": MSG_LIST}},
        "v3": {FIELD_NAME: {"list": MSG_LIST, "positivelist": MSG_POSITIVE}},
        "v4": {FIELD_NAME: {"required": MSG_REQUIRED}},
        "v5": {},
        "v6": {},
        "v7": {FIELD_NAME: {"positivelist": MSG_POSITIVE}},
    },
    "bail|required|list|positivelist": {
        "v1": {FIELD_NAME: {"required": MSG_REQUIRED}},
        "v2": {FIELD_NAME: {"list": MSG_LIST}},
        "v3": {FIELD_NAME: {"list": MSG_LIST}},
        "v4": {FIELD_NAME: {"required": MSG_REQUIRED}},
        "v5": {},
        "v6": {},
        "v7": {FIELD_NAME: {"positivelist": MSG_POSITIVE}},
    },
    "required|list|listlen:2": {
        "v1": {FIELD_NAME: {"required": MSG_REQUIRED}},
        "v2": {
            FIELD_NAME: {
                "list": MSG_LIST,
                "listlen": "item count must be between 2 and ∞",
            }
        },
        "v3": {
            FIELD_NAME: {
                "list": MSG_LIST,
                "listlen": "item count must be between 2 and ∞",
            }
        },
        "v4": {FIELD_NAME: {"required": MSG_REQUIRED}},
        "v5": {FIELD_NAME: {"listlen": "item count must be between 2 and ∞"}},
        "v6": {},
        "v7": {},
    },
    "required|list|listlen:2,4": {
        "v1": {FIELD_NAME: {"required": MSG_REQUIRED}},
        "v2": {
            FIELD_NAME: {
                "list": MSG_LIST,
                "listlen": "item count must be between 2 and 4",
            }
        },
        "v3": {
            FIELD_NAME: {
                "list": MSG_LIST,
                "listlen": "item count must be between 2 and 4",
            }
        },
        "v4": {FIELD_NAME: {"required": MSG_REQUIRED}},
        "v5": {FIELD_NAME: {"listlen": "item count must be between 2 and 4"}},
        "v6": {FIELD_NAME: {"listlen": "item count must be between 2 and 4"}},
        "v7": {},
    },
}


@pytest.mark.parametrize("data", [(list_rules_results, list_values)])
def test_validator_list(data):
    for rule, results in data[0].items():
        for tag, result in results.items():
            v = Validator()
            v.add_field(FIELD_NAME, rule)

            valid = v.is_valid(data[1][tag])
            assert v.get_errors() == result
            assert valid == (len(result) == 0)
