from .api import create_app, serve
from .auth import validate_apikey
from .processor import FlowProcessor

__all__ = ['create_app', 'serve', 'validate_apikey', 'FlowProcessor']
