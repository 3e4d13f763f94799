"""
Settings
Loads config.yaml, applies environment overrides from .env.local / .env and
configures logging for the command-line entry point.
"""

import copy
import logging
import os
from pathlib import Path
from typing import Dict, Optional

import yaml
from dotenv import load_dotenv

logger = logging.getLogger(__name__)

CONFIG_ENV = 'ALMOST_CONFIG'
LOG_LEVEL_ENV = 'ALMOST_LOG_LEVEL'

DEFAULTS: Dict = {
    'logging': {
        'level': 'WARNING',
        'format': '%(asctime)s %(levelname)s %(name)s: %(message)s',
    },
    'oracle': {
        'max_degree': 8,
        'nearest_max_degree': 5,
        'nearest_max_arity': 2,
    },
    'repair': {
        'm_max': 6,
    },
    'output': {
        'decimal_digits': 6,
        'default_format': 'oneline',
    },
    'experiments': {
        'roots': {'samples': 200},
        'stability': {'samples': 50},
    },
}


def _deep_merge(base: Dict, override: Dict) -> Dict:
    merged = copy.deepcopy(base)
    for key, value in (override or {}).items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_config(path: Optional[str] = None) -> Dict:
    """
    Load configuration with defaults filled in.

    Args:
        path: YAML file; falls back to $ALMOST_CONFIG, then ./config.yaml

    Returns:
        Configuration dictionary

    Raises:
        FileNotFoundError: If an explicitly named file does not exist
        ValueError: If the YAML is not a mapping
        yaml.YAMLError: If the file is not valid YAML
    """
    load_dotenv(Path('.env.local'))
    load_dotenv(Path('.env'))

    explicit = path or os.getenv(CONFIG_ENV)
    config_path = Path(explicit) if explicit else Path('config.yaml')
    data: Dict = {}
    if config_path.is_file():
        with open(config_path, 'r', encoding='utf-8') as f:
            data = yaml.safe_load(f) or {}
        if not isinstance(data, dict):
            raise ValueError(f"Config file {config_path} must contain a mapping")
    elif explicit:
        raise FileNotFoundError(f"Config file not found: {config_path}")

    config = _deep_merge(DEFAULTS, data)
    level = os.getenv(LOG_LEVEL_ENV)
    if level:
        config['logging']['level'] = level
    return config


def configure_logging(config: Dict, level: Optional[str] = None) -> None:
    """Send log records to standard error at the configured level."""
    log_config = config.get('logging', {})
    name = (level or log_config.get('level', 'WARNING')).upper()
    numeric = getattr(logging, name, None)
    if not isinstance(numeric, int):
        raise ValueError(f"Unknown log level {name!r}")
    logging.basicConfig(level=numeric, format=log_config.get('format'), force=True)
