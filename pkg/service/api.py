import traceback
from typing import Optional

from fastapi import Depends, FastAPI, HTTPException, status
from fastapi.middleware.cors import CORSMiddleware

from config.config_manager import ConfigManager
from service.auth import get_config_manager, validate_apikey
from service.processor import FlowProcessor, MinCoresRequest, ModelRequest, ScheduleRequest, SimulateRequest
from utils.logger import get_logger

logger = get_logger("service")


def create_app(config_manager: Optional[ConfigManager] = None) -> FastAPI:
    """
    Build the HTTP service

    Args:
        config_manager: Configuration to serve with; read from the default locations when omitted

    Returns:
        FastAPI application exposing the toolkit under /api
    """
    config_manager = config_manager or ConfigManager()
    processor = FlowProcessor(config_manager)

    app = FastAPI(title="FPPN Flow API", description="Design-flow toolkit for fixed priority process networks", version="1.0.0")
    app.dependency_overrides[get_config_manager] = lambda: config_manager

    app.add_middleware(
        CORSMiddleware,
        allow_origins=config_manager.get_cors_origins(),
        allow_credentials=True,
        allow_methods=["*"],
        allow_headers=["*"],
    )

    guarded = [Depends(validate_apikey)]

    @app.get("/")
    async def welcome():
        return {"message": "Welcome to FPPN Flow API"}

    @app.get("/api/examples", dependencies=guarded)
    async def examples():
        try:
            bundles = FlowProcessor.get_example_list()
            logger.info(f"Returning {len(bundles)} examples")
            return {"object": "list", "data": bundles}
        except Exception as e:
            logger.error(f"Example list error: {e}")
            logger.error(traceback.format_exc())
            raise HTTPException(
                status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
                detail={"error": str(e)}
            )

    @app.post("/api/validate", dependencies=guarded)
    async def validate(request: ModelRequest):
        return processor.run("validate", request)

    @app.post("/api/taskgraph", dependencies=guarded)
    async def taskgraph(request: ModelRequest):
        return processor.run("taskgraph", request)

    @app.post("/api/schedule", dependencies=guarded)
    async def schedule(request: ScheduleRequest):
        return processor.run("schedule", request)

    @app.post("/api/mincores", dependencies=guarded)
    async def mincores(request: MinCoresRequest):
        return processor.run("mincores", request)

    @app.post("/api/asap", dependencies=guarded)
    async def asap(request: SimulateRequest):
        return processor.run("asap", request)

    @app.post("/api/simulate", dependencies=guarded)
    async def simulate(request: SimulateRequest):
        return processor.run("simulate", request)

    @app.post("/api/flow", dependencies=guarded)
    async def flow(request: SimulateRequest):
        return processor.run("flow", request)

    return app


def serve(config_manager: ConfigManager, host: Optional[str] = None, port: Optional[int] = None) -> None:
    """Run the service with uvicorn until interrupted"""
    import uvicorn

    host = host or config_manager.get_service_host()
    port = port or config_manager.get_service_port()
    logger.info(f"Starting server on {host}:{port}")
    try:
        uvicorn.run(create_app(config_manager), host=host, port=port)
    except KeyboardInterrupt:
        logger.info("User interrupted")
