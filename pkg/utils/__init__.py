"""Utils package for PencilSpec."""

from .config_manager import ConfigManager, get_app_data_dir
from .logger import Logger, get_logger
