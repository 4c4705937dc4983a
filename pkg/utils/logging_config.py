import logging
import os
from logging.handlers import RotatingFileHandler

from config import LOG_FILE, LOG_LEVEL

CONSOLE_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
FILE_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(funcName)s:%(lineno)d - %(message)s'
DATE_FORMAT = '%Y-%m-%d %H:%M:%S'

# INFO messages that survive the PRODUCTION level (case-insensitive substrings)
ESSENTIAL_KEYWORDS = (
    'starting', 'ready', 'shutting down',
    'peg construction complete', 'loaded code', 'wrote',
    'starting sweep', 'point result', 'sweep complete',
    'failed', 'stalled', 'invalid',
)


class ProductionFilter(logging.Filter):
    """PRODUCTION level: warnings and errors, plus INFO lines naming a lifecycle step"""

    def filter(self, record):
        if record.levelno >= logging.WARNING:
            return True
        if record.levelno != logging.INFO:
            return False
        message = record.getMessage().lower()
        return any(keyword in message for keyword in ESSENTIAL_KEYWORDS)


def _handler(handler: logging.Handler, level: int, fmt: str, production: bool) -> logging.Handler:
    handler.setLevel(level)
    handler.setFormatter(logging.Formatter(fmt, datefmt=DATE_FORMAT))
    if production:
        handler.addFilter(ProductionFilter())
    handler._from_setup = True
    return handler


def setup_logging(level: str = LOG_LEVEL, log_file: str = LOG_FILE):
    """
    Configure root logging: console on stderr plus a rotating file
    (10MB x 5). Calling it again replaces the handlers it installed earlier.
    """
    level = level.upper()
    if level != 'PRODUCTION' and not isinstance(getattr(logging, level, None), int):
        raise ValueError(f"Unknown log level '{level}'")

    log_dir = os.path.dirname(log_file)
    if log_dir:
        os.makedirs(log_dir, exist_ok=True)

    is_production = level == 'PRODUCTION'
    actual_level = logging.INFO if is_production else getattr(logging, level)

    root = logging.getLogger()
    root.setLevel(actual_level)
    for handler in [h for h in root.handlers if getattr(h, '_from_setup', False)]:
        root.removeHandler(handler)
        handler.close()

    root.addHandler(_handler(logging.StreamHandler(), actual_level, CONSOLE_FORMAT, is_production))
    root.addHandler(_handler(
        RotatingFileHandler(log_file, maxBytes=10 * 1024 * 1024, backupCount=5),
        actual_level, FILE_FORMAT, False,
    ))

    logging.getLogger('httpx').setLevel(logging.WARNING)
    logging.getLogger('uvicorn.access').setLevel(logging.WARNING)

    return root
