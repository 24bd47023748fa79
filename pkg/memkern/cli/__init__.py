from .config import RunConfig, build_config, parse_config
from .main import main
