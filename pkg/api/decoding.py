from fastapi import APIRouter, HTTPException
from pydantic import BaseModel, Field
from typing import List, Optional
import logging

from decoders.dispatcher import decode
from models.channel_config import ChannelConfig
from models.code_graph import DegreeDistribution
from models.decoding import DecoderConfig, Schedule, StopWindow
from services.channel import frame_llr
from services.code_registry import code_registry
from services.complexity_model import complexity_report
from utils.processing_logger import processing_logger
import config

logger = logging.getLogger(__name__)

router = APIRouter()


class DecodeRequest(BaseModel):
    """Either `llr` or (`eb_n0_db`, `seed`) must be given"""
    code: str
    schedule: str = Schedule.CBP.value
    llr: Optional[List[float]] = None
    eb_n0_db: Optional[float] = None
    seed: Optional[int] = Field(default=None, ge=0)
    frame_index: int = Field(default=0, ge=0)
    max_iterations: int = Field(default=config.MAX_ITERATIONS, ge=1)
    alpha: float = Field(default=config.MIN_SUM_ALPHA, gt=0.0, le=1.0)
    stop_window: str = config.STOP_WINDOW


class ComplexityRequest(BaseModel):
    regular: Optional[str] = None
    lambda_spec: Optional[str] = None
    rho_spec: Optional[str] = None
    n_variables: int = Field(ge=1)
    n_checks: Optional[int] = Field(default=None, ge=1)
    schedules: List[str] = [s.value for s in Schedule]
    parallelism: Optional[int] = Field(default=None, ge=1)
    q_bits: int = Field(default=8, ge=1)
    area_factor: float = Field(default=config.REGISTER_AREA_FACTOR, gt=0.0)


def _load_code(name: str):
    try:
        return code_registry.get(name)
    except FileNotFoundError as e:
        raise HTTPException(status_code=404, detail=str(e))
    except ValueError as e:
        logger.error(f"Failed to load code {name}: {e}")
        raise HTTPException(status_code=400, detail=str(e))


@router.get("/codes", summary="List available codes")
def list_codes():
    codes = code_registry.list_codes()
    return {"count": len(codes), "codes": codes}


@router.get("/codes/{name}", summary="Describe one code")
def get_code(name: str):
    graph = _load_code(name)
    return {
        "name": name,
        "n_variables": graph.n_variables,
        "n_checks": graph.n_checks,
        "n_edges": graph.n_edges,
        "design_rate": graph.design_rate,
        "max_variable_degree": graph.max_variable_degree,
        "max_check_degree": graph.max_check_degree,
    }


@router.post("/decode", summary="Decode one frame")
def decode_frame(request: DecodeRequest):
    graph = _load_code(request.code)
    try:
        cfg = DecoderConfig(
            schedule=Schedule.parse(request.schedule),
            max_iterations=request.max_iterations,
            alpha=request.alpha,
            stop_window=StopWindow.parse(request.stop_window),
        )
        if request.llr is not None:
            llr = request.llr
        elif request.eb_n0_db is not None and request.seed is not None:
            channel = ChannelConfig(eb_n0_db=request.eb_n0_db, code_rate=graph.design_rate, seed=request.seed)
            llr = frame_llr(graph.n_variables, channel, request.frame_index)
        else:
            raise ValueError("give either 'llr' or both 'eb_n0_db' and 'seed'")
        result = decode(graph, llr, cfg)
    except ValueError as e:
        logger.error(f"Decode request failed: {e}")
        raise HTTPException(status_code=400, detail=str(e))

    processing_logger.log_frame_decoded(
        result.schedule.value, result.success, result.iterations_used, result.stop_reason.value
    )
    return {"code": request.code, **result.to_dict()}


@router.post("/complexity", summary="Predicted operations and memory per schedule")
def complexity(request: ComplexityRequest):
    try:
        if request.regular is not None:
            dist = DegreeDistribution.parse_regular(request.regular)
        elif request.lambda_spec is not None and request.rho_spec is not None:
            dist = DegreeDistribution.parse(request.lambda_spec, request.rho_spec)
        else:
            raise ValueError("give either 'regular' or both 'lambda_spec' and 'rho_spec'")
        schedules = [Schedule.parse(s) for s in request.schedules]
        return complexity_report(
            dist,
            request.n_variables,
            schedules,
            n_checks=request.n_checks,
            parallelism=request.parallelism,
            q_bits=request.q_bits,
            register_area_factor=request.area_factor,
        )
    except ValueError as e:
        logger.error(f"Complexity request failed: {e}")
        raise HTTPException(status_code=400, detail=str(e))
