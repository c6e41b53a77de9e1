from typing import Optional

from fastapi import Depends, Header, HTTPException, Request, status

from config.config_manager import ConfigManager
from utils.logger import get_logger

logger = get_logger("service_auth")

BEARER_PREFIX = "Bearer "


def get_config_manager() -> ConfigManager:
    """Configuration for requests; create_app overrides this with its own manager"""
    return ConfigManager()


def presented_key(x_api_key: Optional[str], authorization: Optional[str]) -> Optional[str]:
    """Key sent by the client: X-API-Key wins over an Authorization Bearer token"""
    if x_api_key:
        return x_api_key
    if authorization and authorization.startswith(BEARER_PREFIX):
        return authorization[len(BEARER_PREFIX):] or None
    return None


def _reject(code: int, detail: str) -> HTTPException:
    return HTTPException(status_code=code, detail=detail, headers={"WWW-Authenticate": "Bearer"})


async def validate_apikey(
    request: Request,
    x_api_key: Optional[str] = Header(None, alias="X-API-Key"),
    authorization: Optional[str] = Header(None),
    config_manager: ConfigManager = Depends(get_config_manager),
) -> bool:
    """
    Guard for the /api routes

    Args:
        request: Incoming request, used for logging
        x_api_key: X-API-Key header
        authorization: Authorization header
        config_manager: Source of system.apiKey

    Returns:
        True when the request may proceed; always True when no key is configured

    Raises:
        HTTPException: 401 when no key is presented, 403 when it does not match
    """
    expected = config_manager.get_system_api_key()
    if not expected:
        return True

    key = presented_key(x_api_key, authorization)
    if key is None:
        logger.warning(f"No API key on {request.method} {request.url.path}")
        raise _reject(status.HTTP_401_UNAUTHORIZED, "API Key is required")
    if key != expected:
        logger.warning(f"Wrong API key on {request.method} {request.url.path}")
        raise _reject(status.HTTP_403_FORBIDDEN, "Invalid API Key")
    return True
