import json
import os
from typing import Any, List

from memkern.base import ShallowContainer


class EnvironmentConfig:
    """
    Base class for environment-based config

    Config attributes must be named uppercase; These attribute names will be translated to lowercase
    on the ShallowContainer; The uppercase names (plus prefix) are used to override values from existing
    environment variables. The default value type selects the conversion.

    Example:
        EXISTING OS ENV VARS: [MEMKERN_THREADS="4"]

        class MyConfig(EnvironmentConfig):
            THREADS = 0
            LOG_LEVEL = 'WARNING'

        cfg = MyConfig().build('MEMKERN_')
        assert cfg['threads'] == 4
        assert cfg['log_level'] == 'WARNING'
    """

    list_separator = ","

    def build(self, prefix="") -> ShallowContainer:
        """
        Assemble a final ShallowContainer based on the env vars
        :param prefix: optional prefix name for env vars
        :return: ShallowContainer
        """
        data = {}
        for name in dir(self):
            if name.isupper():
                value = getattr(self, name)
                if not callable(value):
                    data[name.lower()] = self._parse_value(prefix + name, value)
        return ShallowContainer(data)

    def _parse_value(self, env_var_name, existing_value) -> Any:
        """
        Extract environment variable based on the type of the default value

        :param env_var_name: env var to process
        :param existing_value: existing default value
        :return: converted env var value if it exists; existing_value otherwise
        """
        value = os.environ.get(env_var_name)
        if value is None:
            return existing_value

        # if default value of attribute is none, always assume string
        if existing_value is None:
            return value

        mapper = getattr(self, "_{}_conv".format(type(existing_value).__name__), None)
        if not mapper:
            raise ValueError("Invalid data type detected when parsing environment variable '{}'".format(env_var_name))
        try:
            return mapper(value)
        except ValueError as e:
            raise ValueError("Invalid value for environment variable '{}': {}".format(env_var_name, e))

    def _str_conv(self, v) -> str:
        return str(v)

    def _int_conv(self, v) -> int:
        return int(v)

    def _float_conv(self, v) -> float:
        return float(v)

    def _list_conv(self, v) -> List:
        return [item.strip() for item in str(v).split(self.list_separator) if item.strip()]

    def _dict_conv(self, v) -> dict:
        try:
            return json.loads(v)
        except Exception as e:
            raise ValueError("Error when parsing JSON: {}".format(e))

    def _bool_conv(self, v) -> bool:
        return v in [1, "1", "true", "TRUE", "True", "T", "t"]


class MemkernEnv(EnvironmentConfig):
    """
    Process-wide settings read from MEMKERN_* environment variables
    """

    env_prefix = "MEMKERN_"

    # worker cap; 0 means os.cpu_count()
    THREADS = 0
    LOG_LEVEL = "WARNING"
    # trajectories per seeding block of the stochastic backend
    BLOCK_SIZE = 1000

    def build(self, prefix=None) -> ShallowContainer:
        return super().build(self.env_prefix if prefix is None else prefix)
