"""
Configuration Manager for PencilSpec
Handles loading and saving numerical defaults (tolerances, quadrature and
sampling settings, generator seed).
"""

import copy
import json
import logging
import os
from pathlib import Path


def get_app_data_dir():
    """Return the per-user PencilSpec directory, creating it if needed."""
    override = os.environ.get('PENCILSPEC_HOME')
    if override:
        app_dir = Path(override)
    else:
        app_dir = Path(os.environ.get('APPDATA', os.path.expanduser('~'))) / 'PencilSpec'
    app_dir.mkdir(parents=True, exist_ok=True)
    return app_dir


class ConfigManager:
    """Manages application configuration."""
    
    # Must agree with the module-level defaults in core/
    DEFAULT_CONFIG = {
        'general': {
            'log_level': 'INFO',
            'console_log': False
        },
        'tolerances': {
            'contain': 1e-7,
            'resid': 1e-8,
            'hermitian': 1e-12,
            'gap': 1e-6,
            'cluster': 1e-8
        },
        'contour': {
            'nodes': 256
        },
        'sampling': {
            'resolution': 64,
            'rho': 0.25,
            'refinements': 4
        },
        'plot': {
            'grid': 400
        },
        'gallery': {
            'seed': 0
        }
    }
    
    def __init__(self, config_file=None):
        if config_file is None:
            self.app_data_dir = get_app_data_dir()
            self.config_file = self.app_data_dir / 'config.json'
        else:
            self.config_file = Path(config_file)
            self.app_data_dir = self.config_file.parent
        
        self.config = copy.deepcopy(self.DEFAULT_CONFIG)
        self.logger = logging.getLogger('PencilSpec.config')
        
        self.load()
    
    def load(self):
        """Load configuration from file."""
        if not self.config_file.exists():
            return
        try:
            with open(self.config_file, 'r', encoding='utf-8') as f:
                saved_config = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            self.logger.warning(f"Ignoring unreadable config {self.config_file}: {e}")
            return
        
        if not isinstance(saved_config, dict):
            self.logger.warning(f"Ignoring config {self.config_file}: top level is not an object")
            return
        
        # Merge with defaults to handle new keys
        for section, values in saved_config.items():
            if not isinstance(values, dict):
                self.logger.warning(f"Ignoring config section '{section}': not an object")
                continue
            if section in self.config:
                self.config[section].update(values)
            else:
                self.config[section] = values
    
    def save(self):
        """Save configuration to file."""
        try:
            self.config_file.parent.mkdir(parents=True, exist_ok=True)
            with open(self.config_file, 'w', encoding='utf-8') as f:
                json.dump(self.config, f, indent=4, sort_keys=True)
        except OSError as e:
            self.logger.error(f"Error saving config: {e}")
    
    def get(self, section, key, default=None):
        """Get a configuration value."""
        if section in self.config and key in self.config[section]:
            return self.config[section][key]
        return default
    
    def set(self, section, key, value):
        """Set a configuration value."""
        if section not in self.config:
            self.config[section] = {}
        self.config[section][key] = value
    
    def get_section(self, section):
        """Get all values in a section."""
        return self.config.get(section, {})
