import logging
import re
import time
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from models.code_graph import CodeGraph
from services.alist_io import read_alist_file
import config

logger = logging.getLogger(__name__)

_NAME_PATTERN = re.compile(r'^[A-Za-z0-9_.-]+$')


class CodeRegistry:
    """Serve alist codes from a directory by name, cached with a TTL"""

    def __init__(self, codes_dir: Optional[str] = None, ttl: Optional[float] = None):
        self.codes_dir = Path(codes_dir or config.CODES_DIR)
        self._cache: Dict[str, Tuple[CodeGraph, float]] = {}
        self._cache_ttl = config.CODE_CACHE_TTL if ttl is None else ttl

    def list_codes(self) -> List[str]:
        if not self.codes_dir.is_dir():
            logger.warning(f"Codes directory not found: {self.codes_dir}")
            return []
        return sorted(p.stem for p in self.codes_dir.glob('*.alist'))

    def get(self, name: str) -> CodeGraph:
        """
        Load `<codes_dir>/<name>.alist` (cached).

        Raises ValueError for names that are not plain file stems and
        FileNotFoundError for unknown codes.
        """
        if not _NAME_PATTERN.match(name) or name.startswith('.'):
            raise ValueError(f"Invalid code name '{name}'")

        now = time.time()
        cached = self._cache.get(name)
        if cached and (now - cached[1]) < self._cache_ttl:
            logger.debug(f"Returning cached code {name}")
            return cached[0]

        path = self.codes_dir / f"{name}.alist"
        if not path.is_file():
            raise FileNotFoundError(f"Unknown code '{name}'")

        graph = read_alist_file(path)
        self._cache[name] = (graph, now)
        return graph

    def reload(self):
        """Drop every cached graph; the next request reads from disk"""
        self._cache.clear()
        logger.info("Code cache cleared, will reload on next request")


# Global instance
code_registry = CodeRegistry()
