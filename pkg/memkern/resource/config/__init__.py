from .environment import EnvironmentConfig, MemkernEnv
from .kv import kv_file
