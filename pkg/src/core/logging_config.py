"""
Logging Configuration for the throughput lab.
Structured logging for commands, runs and verification events.

Console output goes to stderr so CSV written to stdout stays clean.
With a log file, records are rendered as JSON lines.
"""

import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

import structlog


def setup_logging(
    level: str = "WARNING",
    log_file: Optional[str] = None,
    console_logging: bool = True,
) -> structlog.stdlib.BoundLogger:
    """
    Configure structured logging.

    Args:
        level: Log level (DEBUG, INFO, WARNING, ERROR)
        log_file: Optional path to a JSON-lines log file
        console_logging: Whether to log to stderr

    Returns:
        Configured structlog logger
    """
    log_level = getattr(logging, level.upper(), logging.WARNING)

    handlers: List[logging.Handler] = []

    if console_logging:
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(log_level)
        handlers.append(console_handler)

    if log_file:
        log_path = Path(log_file)
        log_path.parent.mkdir(parents=True, exist_ok=True)

        file_handler = logging.FileHandler(log_file)
        file_handler.setLevel(log_level)
        handlers.append(file_handler)

    logging.basicConfig(
        level=log_level,
        format="%(message)s",
        handlers=handlers,
        force=True,
    )

    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            structlog.processors.UnicodeDecoder(),
            structlog.processors.JSONRenderer() if log_file else structlog.dev.ConsoleRenderer(),
        ],
        wrapper_class=structlog.make_filtering_bound_logger(log_level),
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        cache_logger_on_first_use=False,
    )

    return structlog.get_logger("stl")


class RunLogger:
    """
    Records command runs and verification outcomes as structured events.
    """

    def __init__(self, command: str):
        self.command = command
        self.logger = structlog.get_logger("stl.run")
        self._events: List[Dict[str, Any]] = []

    def log_run_started(self, parameters: Dict[str, Any]) -> None:
        self._record("run_started", parameters=parameters)
        self.logger.info("run_started", command=self.command, parameters=parameters)

    def log_run_completed(self, duration_s: float, outputs: List[str]) -> None:
        self._record("run_completed", duration_s=duration_s, outputs=outputs)
        self.logger.info(
            "run_completed",
            command=self.command,
            duration_s=round(duration_s, 6),
            outputs=outputs,
        )

    def log_domain_error(self, precondition: str) -> None:
        self._record("domain_error", precondition=precondition)
        self.logger.error("domain_error", command=self.command, precondition=precondition)

    def log_oracle_mismatch(self, config: Dict[str, Any], closed_form: int, oracle: int) -> None:
        self._record("oracle_mismatch", config=config)
        self.logger.warning(
            "oracle_mismatch",
            command=self.command,
            config=config,
            closed_form=closed_form,
            oracle=oracle,
        )

    def log_audit_violation(self, t: float, min_distance: float) -> None:
        self._record("audit_violation", t=t, min_distance=min_distance)
        self.logger.error("audit_violation", command=self.command, t=t, min_distance=min_distance)

    @property
    def events(self) -> List[Dict[str, Any]]:
        return list(self._events)

    def _record(self, event: str, **fields: Any) -> None:
        self._events.append({"event": event, **fields})
