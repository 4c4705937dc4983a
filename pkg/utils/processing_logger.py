import logging
import json
from datetime import datetime, timezone
from pathlib import Path
from typing import List, Optional

import config

logger = logging.getLogger(__name__)


class ProcessingLogger:
    """
    Log sweep and decode lifecycle events as JSON lines, one file per day.
    Artifacts (CSV/JSON reports) never carry timestamps; this log does.
    """

    def __init__(self, log_dir: Optional[str] = None, enabled: Optional[bool] = None):
        self.log_dir = Path(log_dir or config.PROCESSING_LOG_DIR)
        self.enabled = config.PROCESSING_LOG_ENABLED if enabled is None else enabled

    def log_sweep_started(
        self,
        n_variables: int,
        n_checks: int,
        schedules: List[str],
        eb_n0_points: List[float],
        seed: int,
        threads: int
    ):
        """Log when a sweep begins"""
        entry = {
            'event': 'sweep_started',
            'n_variables': n_variables,
            'n_checks': n_checks,
            'schedules': schedules,
            'eb_n0_points': eb_n0_points,
            'seed': seed,
            'threads': threads
        }
        self._write_log(entry)

    def log_point_complete(self, point: dict, elapsed_ms: int):
        """Log the accumulated stats of one (schedule, Eb/N0) point"""
        entry = {
            'event': 'point_complete',
            'schedule': point.get('schedule'),
            'ebn0_db': point.get('ebn0_db'),
            'frames': point.get('frames'),
            'frame_errors': point.get('frame_errors'),
            'ber': point.get('ber'),
            'fer': point.get('fer'),
            'avg_iters': point.get('avg_iters'),
            'elapsed_ms': elapsed_ms
        }
        self._write_log(entry)

    def log_sweep_complete(self, points: int, total_frames: int, total_time_ms: int):
        entry = {
            'event': 'sweep_complete',
            'points': points,
            'total_frames': total_frames,
            'total_time_ms': total_time_ms
        }
        self._write_log(entry)

    def log_frame_decoded(self, schedule: str, success: bool, iterations: float, stop_reason: str):
        """Log a single-frame decode from the CLI or API"""
        entry = {
            'event': 'frame_decoded',
            'schedule': schedule,
            'success': success,
            'iterations_used': iterations,
            'stop_reason': stop_reason
        }
        self._write_log(entry)

    def _write_log(self, entry: dict):
        """Append entry to the daily log file; failures are logged, never raised"""
        if not self.enabled:
            return

        now = datetime.now(timezone.utc)
        record = {'timestamp': now.isoformat(), **entry}
        log_file = self.log_dir / f"processing_{now.strftime('%Y%m%d')}.jsonl"

        try:
            self.log_dir.mkdir(parents=True, exist_ok=True)
            with open(log_file, 'a') as f:
                f.write(json.dumps(record) + '\n')
        except Exception as e:
            logger.error(f"Failed to write processing log: {e}")


# Global instance
processing_logger = ProcessingLogger()
