"""Base runner implementation for command-line operations.

Every command (simulate, train, evaluate, ...) is a runner: an object that is
configured up front, executed once, and then asked to write its outputs. This
module provides the shared lifecycle, error wrapping and result reporting so
each concrete runner only implements the work itself.

The module implements:
- Lifecycle management for runs
- Error wrapping with context and exit codes
- Result reporting with warnings and written outputs

Path: survnet/common/base.py
"""
import logging
import time
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional

from survnet.common.errors import (
    SurvnetError, ErrorContext, ErrorCode, FileError, StateError
)

logger = logging.getLogger(__name__)

class RunnerState(Enum):
    """States a runner can be in during its lifecycle."""
    INITIALIZED = "initialized"
    READY = "ready"
    RUNNING = "running"
    COMPLETED = "completed"
    ERROR = "error"

@dataclass
class RunnerResult:
    """Results from a runner.

    Attributes:
        success: Whether the run completed successfully
        message: Human-readable status message
        outputs: Files written by the run
        summary: Key figures produced by the run, for display
        errors: Error messages
        warnings: Warning messages
        exit_code: Process exit status for the command line
        elapsed: Wall-clock seconds spent in execution
    """
    success: bool = True
    message: str = ""
    outputs: List[Path] = field(default_factory=list)
    summary: Dict[str, Any] = field(default_factory=dict)
    errors: List[str] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)
    exit_code: int = 0
    elapsed: float = 0.0

class BaseRunner(ABC):
    """Abstract base class for command runners.

    Subclasses implement `_execute` (the computation) and `_write_outputs`
    (persisting its results). `run` executes and writes in one go and never
    raises for errors from this package; it reports them in the result.

    Example:
        ```python
        class EchoRunner(BaseRunner):
            def _execute(self) -> None:
                self.summary["echo"] = 42

            def _write_outputs(self) -> List[Path]:
                return []

        result = EchoRunner().run()
        assert result.summary["echo"] == 42
        ```
    """

    def __init__(self) -> None:
        self.state = RunnerState.INITIALIZED
        self.summary: Dict[str, Any] = {}
        self._warnings: List[str] = []
        self._outputs: List[Path] = []
        self._elapsed = 0.0
        self.state = RunnerState.READY
        logger.debug("Initialized %s", self.__class__.__name__)

    def execute(self) -> None:
        """Run the computation without writing outputs.

        Raises:
            StateError: If the runner was already executed
            SurvnetError: If the computation fails
        """
        self._ensure_state(RunnerState.READY)
        self.state = RunnerState.RUNNING
        start = time.perf_counter()
        try:
            self._execute()
        except SurvnetError:
            self.state = RunnerState.ERROR
            raise
        except Exception as e:
            self.state = RunnerState.ERROR
            context = ErrorContext(
                operation=f"execute_{self.command_name}",
                error_code=ErrorCode.STATE_GENERAL,
                details={"runner": self.__class__.__name__}
            )
            raise SurvnetError(
                f"{self.command_name} failed: {e}",
                context=context,
                original_error=e
            ) from e
        finally:
            self._elapsed = time.perf_counter() - start
        self.state = RunnerState.COMPLETED
        logger.info("%s finished in %.2fs", self.command_name, self._elapsed)

    def write(self) -> List[Path]:
        """Write outputs of a completed run.

        Returns:
            Paths that were written

        Raises:
            StateError: If called before execute()
            FileError: If writing fails
        """
        self._ensure_state(RunnerState.COMPLETED)
        try:
            written = self._write_outputs()
        except SurvnetError:
            raise
        except OSError as e:
            raise FileError(
                f"Failed to write output: {e}",
                path=Path(e.filename or "."),
                operation="write_outputs",
                original_error=e
            ) from e
        self._outputs.extend(written)
        for path in written:
            logger.info("Wrote %s", path)
        return written

    def run(self) -> RunnerResult:
        """Execute and write, reporting failures in the result.

        Returns:
            RunnerResult with success status, summary and outputs
        """
        try:
            self.execute()
            self.write()
        except SurvnetError as e:
            logger.error("%s failed: %s", self.command_name, e)
            return RunnerResult(
                success=False,
                message=str(e),
                summary=dict(self.summary),
                errors=[str(e)],
                warnings=self._warnings.copy(),
                exit_code=e.exit_code,
                elapsed=self._elapsed
            )
        return RunnerResult(
            success=True,
            message=f"{self.command_name} completed successfully",
            outputs=self._outputs.copy(),
            summary=dict(self.summary),
            warnings=self._warnings.copy(),
            elapsed=self._elapsed
        )

    @property
    def command_name(self) -> str:
        """Name used in log lines and error messages."""
        return self.__class__.__name__.replace("Runner", "").lower()

    @abstractmethod
    def _execute(self) -> None:
        """Perform the computation. Must be implemented by subclasses."""
        raise NotImplementedError

    @abstractmethod
    def _write_outputs(self) -> List[Path]:
        """Persist results and return written paths."""
        raise NotImplementedError

    def _add_warning(self, warning: str) -> None:
        """Record a warning message and log it."""
        self._warnings.append(warning)
        logger.warning(warning)

    def _ensure_state(self, expected_state: RunnerState) -> None:
        if self.state != expected_state:
            raise StateError(
                "Invalid runner state for operation",
                operation=self.command_name,
                current_state=self.state.value,
                expected_state=expected_state.value
            )

    def __repr__(self) -> str:
        return (
            f"{self.__class__.__name__}("
            f"state={self.state.value}, "
            f"outputs={len(self._outputs)})"
        )

def ensure_parent(path: Path) -> Path:
    """Create the parent directory of an output path if needed."""
    path.parent.mkdir(parents=True, exist_ok=True)
    return path

def optional_path(value: Optional[str | Path]) -> Optional[Path]:
    """Convert an optional string to a Path."""
    return Path(value) if value is not None else None
