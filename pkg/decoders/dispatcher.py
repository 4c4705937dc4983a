import logging
from dataclasses import replace
from typing import Callable, Dict, List

from decoders.cbp import decode_cbp, decode_cbp_minsum
from decoders.common import is_codeword
from decoders.flooding import decode_fbp
from decoders.layered import decode_lbp
from decoders.residual import decode_rbp, decode_svnf_rbp
from models.code_graph import CodeGraph
from models.decoding import DecodeResult, DecoderConfig, Schedule
from models.errors import InvariantViolation

logger = logging.getLogger(__name__)

DecodeFn = Callable[[CodeGraph, object, DecoderConfig], DecodeResult]


class DecoderDispatcher:
    """Route frames to the decoder that implements the configured schedule"""

    _decoders: Dict[Schedule, DecodeFn] = {
        Schedule.FBP: decode_fbp,
        Schedule.LBP: decode_lbp,
        Schedule.RBP: decode_rbp,
        Schedule.SVNF_RBP: decode_svnf_rbp,
        Schedule.CBP: decode_cbp,
        Schedule.CBP_MINSUM: decode_cbp_minsum,
    }

    @staticmethod
    def decode(graph: CodeGraph, llr, cfg: DecoderConfig) -> DecodeResult:
        """
        Decode one frame with cfg.schedule.

        Raises InvariantViolation if a decoder reports success for a word
        with a nonzero syndrome.
        """
        decoder = DecoderDispatcher._decoders[cfg.schedule]
        return DecoderDispatcher.verify(graph, decoder(graph, llr, cfg))

    @staticmethod
    def verify(graph: CodeGraph, result: DecodeResult) -> DecodeResult:
        if result.success and not is_codeword(graph, result.hard_bits):
            raise InvariantViolation(f"{result.schedule.value} reported success with a nonzero syndrome")
        return result

    @staticmethod
    def decode_paired(
        graph: CodeGraph,
        llr,
        schedules: List[Schedule],
        cfg: DecoderConfig,
    ) -> Dict[Schedule, DecodeResult]:
        """Decode the same channel LLRs with every schedule in `schedules`"""
        results = {}
        for schedule in schedules:
            results[schedule] = DecoderDispatcher.decode(graph, llr, replace(cfg, schedule=schedule))
        failed = [s.value for s, r in results.items() if not r.success]
        if failed:
            logger.debug(f"Frame not decoded by: {', '.join(failed)}")
        return results


decode = DecoderDispatcher.decode
