from config import ConfigManager
from core import NetworkModel, validate_network
from scheduler import list_schedule, check_schedule
from sim import simulate

__all__ = [
    'ConfigManager',
    'NetworkModel',
    'validate_network',
    'list_schedule',
    'check_schedule',
    'simulate'
]

__version__ = '0.1.0'
