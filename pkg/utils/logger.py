"""
Logger for PencilSpec
Handles logging to file and, on request, to the console.
Core modules obtain child loggers through get_logger().
"""

import logging
import sys

from .config_manager import get_app_data_dir

ROOT_LOGGER_NAME = 'PencilSpec'
LOG_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'
DATE_FORMAT = '%Y-%m-%d %H:%M:%S'


def get_logger(component):
    """Return the child logger used by one PencilSpec component."""
    return logging.getLogger(f'{ROOT_LOGGER_NAME}.{component}')


class Logger:
    """Application logger."""
    
    def __init__(self, name=ROOT_LOGGER_NAME, level='DEBUG', console=False):
        self.name = name
        
        # Create logs directory
        self.logs_dir = get_app_data_dir() / 'logs'
        self.logs_dir.mkdir(parents=True, exist_ok=True)
        self.log_file = self.logs_dir / f'{name.lower()}.log'
        
        # Configure logger
        self.logger = logging.getLogger(name)
        self.logger.setLevel(logging.DEBUG)
        
        formatter = logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT)
        
        # File handler, installed once per log file
        if not self._has_file_handler():
            try:
                file_handler = logging.FileHandler(self.log_file, encoding='utf-8')
                file_handler.setLevel(getattr(logging, str(level).upper(), logging.DEBUG))
                file_handler.setFormatter(formatter)
                self.logger.addHandler(file_handler)
            except OSError as e:
                sys.stderr.write(f"Error setting up file logger: {e}\n")
        
        if console and not self._has_console_handler():
            console_handler = logging.StreamHandler(sys.stderr)
            console_handler.setLevel(logging.DEBUG)
            console_handler.setFormatter(formatter)
            console_handler.set_name('pencilspec-console')
            self.logger.addHandler(console_handler)
    
    def _has_file_handler(self):
        for handler in self.logger.handlers:
            if isinstance(handler, logging.FileHandler) and \
                    handler.baseFilename == str(self.log_file.resolve()):
                return True
        return False
    
    def _has_console_handler(self):
        return any(handler.get_name() == 'pencilspec-console' for handler in self.logger.handlers)
    
    def debug(self, message):
        """Log debug message."""
        self.logger.debug(message)
    
    def info(self, message):
        """Log info message."""
        self.logger.info(message)
    
    def warning(self, message):
        """Log warning message."""
        self.logger.warning(message)
    
    def error(self, message):
        """Log error message."""
        self.logger.error(message)
    
    def critical(self, message):
        """Log critical message."""
        self.logger.critical(message)
    
    def success(self, message):
        """Log success message."""
        self.logger.info(f"✓ {message}")
    
    def close(self):
        """Detach and close every handler this logger owns."""
        for handler in list(self.logger.handlers):
            self.logger.removeHandler(handler)
            handler.close()
    
    def get_logs(self, lines=100):
        """Get last N lines from log file."""
        try:
            with open(self.log_file, 'r', encoding='utf-8', errors='ignore') as f:
                all_lines = f.readlines()
                return all_lines[-lines:]
        except OSError:
            return []
