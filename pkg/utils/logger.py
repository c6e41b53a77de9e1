import json
import logging
import os
import sys
from typing import Optional

from dotenv import load_dotenv

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(filename)s:%(lineno)d - %(message)s'

LOG_LEVEL_MAP = {
    "DEBUG": logging.DEBUG,
    "INFO": logging.INFO,
    "WARNING": logging.WARNING,
    "ERROR": logging.ERROR,
    "CRITICAL": logging.CRITICAL
}


def resolve_config_path() -> Optional[str]:
    """
    Locate the active configuration file

    Returns:
        Path of the first existing candidate (FPPN_CONFIG, config.json,
        config_example.json), or None when no file exists
    """
    load_dotenv()
    for candidate in (os.getenv("FPPN_CONFIG"), "config.json", "config_example.json"):
        if candidate and os.path.exists(candidate):
            return candidate
    return None


def parse_log_level(level_str: str) -> int:
    """Map DEBUG..CRITICAL to the logging constant, INFO for anything else"""
    return LOG_LEVEL_MAP.get(level_str.upper(), logging.INFO)


def configured_log_level() -> int:
    """FPPN_LOG_LEVEL first, then system.logLevel of the active config file"""
    env_level = os.getenv("FPPN_LOG_LEVEL")
    if env_level:
        return parse_log_level(env_level)

    config_path = resolve_config_path()
    if config_path is None:
        return logging.INFO
    try:
        with open(config_path, 'r', encoding='utf-8') as file:
            system = json.load(file).get("system", {})
    except (OSError, ValueError, AttributeError):
        return logging.INFO
    return parse_log_level(str(system.get("logLevel", "INFO")))


def get_logger(name: str, level: Optional[int] = None) -> logging.Logger:
    """
    Named logger writing to stderr

    Args:
        name: Logger name
        level: Log level; the configured level when omitted

    Returns:
        Logger with a single stderr handler
    """
    level = configured_log_level() if level is None else level

    logger = logging.getLogger(name)
    logger.setLevel(level)
    logger.propagate = False

    handlers = [h for h in logger.handlers if isinstance(h, logging.StreamHandler) and not isinstance(h, logging.FileHandler)]
    if handlers:
        for handler in handlers:
            handler.setLevel(level)
        return logger

    # stdout carries command output
    handler = logging.StreamHandler(sys.stderr)
    handler.setLevel(level)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    logger.addHandler(handler)
    return logger
