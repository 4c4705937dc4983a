from fastapi import FastAPI
from fastapi.responses import JSONResponse
import uvicorn
import logging
from contextlib import asynccontextmanager

from api.decoding import router as decoding_router
from utils.logging_config import setup_logging
from services.code_registry import code_registry
import config

# Setup logging
setup_logging()
logger = logging.getLogger(__name__)


@asynccontextmanager
async def lifespan(app: FastAPI):
    """Application lifespan - startup and shutdown"""
    try:
        # Startup
        logger.info("============================================================")
        logger.info("LDPC Decoding Service Starting")
        logger.info("============================================================")

        codes = code_registry.list_codes()
        logger.info(f"Codes directory: {code_registry.codes_dir} ({len(codes)} code(s))")
        logger.info(f"Default max iterations: {config.MAX_ITERATIONS}")
        logger.info(f"Default min-sum alpha: {config.MIN_SUM_ALPHA}")
        logger.info("Server ready to decode")

        yield

    finally:
        # Shutdown - always runs even if startup fails
        logger.info("Shutting down LDPC Decoding Service")
        code_registry.reload()
        logger.info("Cleanup complete")


# Create FastAPI app with lifespan
app = FastAPI(
    title="LDPC Decoding Service",
    description="Check-belief propagation and classic BP schedules for LDPC codes",
    version="1.0.0",
    lifespan=lifespan
)

# Include routers
app.include_router(decoding_router, tags=["decoding"])


@app.get("/")
async def root():
    """Root endpoint"""
    return {
        "service": "LDPC Decoding",
        "status": "running",
        "endpoints": {
            "health": "/health",
            "codes": "/codes",
            "decode": "/decode",
            "complexity": "/complexity",
            "docs": "/docs"
        }
    }


@app.get("/health")
async def health_check():
    """Health check with codes directory validation"""
    health_status = {
        "status": "healthy",
        "service": "ldpc_decoding",
        "checks": {}
    }

    try:
        codes = code_registry.list_codes()
        health_status["checks"]["codes"] = {
            "status": "ok" if codes else "warning",
            "count": len(codes),
            "message": f"{len(codes)} code(s) available in {code_registry.codes_dir}"
        }
    except Exception as e:
        health_status["status"] = "unhealthy"
        health_status["checks"]["codes"] = {
            "status": "error",
            "message": f"Failed to list codes: {str(e)}"
        }

    status_code = 503 if health_status["status"] == "unhealthy" else 200
    return JSONResponse(content=health_status, status_code=status_code)


if __name__ == "__main__":
    logger.info("Starting server...")
    uvicorn.run(
        app,
        host="127.0.0.1",
        port=config.PORT,
        log_level='info' if config.LOG_LEVEL.upper() == 'PRODUCTION' else config.LOG_LEVEL.lower()
    )
