import logging
import sys
import time
import uuid
from contextlib import contextmanager
from datetime import datetime, timezone
from typing import Any, Dict, Iterator, Optional

logger = logging.getLogger(__name__)

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def configure_logging(level: str = "WARNING") -> None:
    """Send package logs to stderr; stdout is reserved for CLI documents."""
    root = logging.getLogger("free_knots")
    root.setLevel(level.upper())
    # sys.stderr may have been swapped (and the old stream closed) since the last call
    for stale in [h for h in root.handlers if getattr(h, "_free_knots", False)]:
        root.removeHandler(stale)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    handler._free_knots = True  # type: ignore[attr-defined]
    root.addHandler(handler)


def log_search_performance(
    operation: str,
    duration_ms: int,
    n: Optional[int] = None,
    run_id: Optional[str] = None,
    extra_data: Optional[Dict[str, Any]] = None,
) -> Dict[str, Any]:
    """
    Logs timing data for one search run (decide, oracle, certificate check).

    Args:
        operation (str): Which procedure ran (e.g. 'decide_slice').
        duration_ms (int): Duration in milliseconds.
        n (int, optional): Chord count of the diagram.
        run_id (str, optional): Correlates records of a single CLI invocation.
        extra_data (dict, optional): Additional context, e.g. verdict and node count.

    Returns:
        The record that was logged.

    Example usage:
        with timed_search("decide_slice", n=D.n) as extra:
            verdict = decide_slice(D)
            extra["verdict"] = verdict.kind.value
    """
    log_entry = {
        "id": run_id or str(uuid.uuid4()),
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "operation": operation,
        "duration_ms": duration_ms,
        "n": n,
        "extra_data": extra_data or {},
    }
    logger.info(f"{operation} finished in {duration_ms} ms (n={n}) {log_entry['extra_data']}")
    return log_entry


@contextmanager
def timed_search(operation: str, n: Optional[int] = None) -> Iterator[Dict[str, Any]]:
    """Time the enclosed block and log it; callers may fill the yielded dict."""
    extra: Dict[str, Any] = {}
    start = time.perf_counter()
    try:
        yield extra
    finally:
        duration_ms = int((time.perf_counter() - start) * 1000)
        log_search_performance(operation, duration_ms, n=n, extra_data=extra)
