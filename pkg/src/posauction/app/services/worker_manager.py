from __future__ import annotations

import logging
import logging.handlers
import multiprocessing
import queue
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from ...core.errors import PosAuctionError, ValidationError
from ...oracle.grid import ChunkScore, reduce_scores
from ..workers.grid_worker import run_worker
from ..workers.protocol import GridChunkRequest, GridChunkResult

logger = logging.getLogger("posauction.manager")

RESULT_TIMEOUT = 600.0


class _RelayHandler(logging.Handler):
    """Re-emits worker records through the parent's logger of the same name."""

    def emit(self, record: logging.LogRecord) -> None:
        target = logging.getLogger(record.name)
        if target.isEnabledFor(record.levelno):
            target.handle(record)


class GridWorkerManager:
    """A pool of worker processes scoring grid chunks from one shared queue."""

    def __init__(self, workers: int) -> None:
        if workers < 1:
            raise ValidationError(f"workers must be >= 1, got {workers}")
        self._count = workers
        self._input_queue: multiprocessing.Queue = multiprocessing.Queue()
        self._output_queue: multiprocessing.Queue = multiprocessing.Queue()
        self._log_queue: multiprocessing.Queue = multiprocessing.Queue()
        self._workers: List[multiprocessing.Process] = []
        self._listener: Optional[logging.handlers.QueueListener] = None

    def __enter__(self) -> "GridWorkerManager":
        self.start()
        return self

    def __exit__(self, *exc_info: object) -> None:
        self.stop()

    def start(self) -> None:
        if self._workers:
            return
        level = logging.getLogger("posauction").getEffectiveLevel()
        self._listener = logging.handlers.QueueListener(self._log_queue, _RelayHandler())
        self._listener.start()
        for _ in range(self._count):
            worker = multiprocessing.Process(
                target=run_worker,
                args=(self._input_queue, self._output_queue, self._log_queue, level),
                daemon=True,
            )
            worker.start()
            self._workers.append(worker)
        logger.debug("Started %d grid workers.", self._count)

    def stop(self) -> None:
        for _ in self._workers:
            self._input_queue.put(None)
        for worker in self._workers:
            worker.join(timeout=1.0)
            if worker.is_alive():
                worker.terminate()
        self._workers = []
        if self._listener is not None:
            self._listener.stop()
            self._listener = None
        logger.debug("Grid workers stopped.")

    def map_chunks(self, chunks: Sequence[List[Tuple[int, ...]]], ratio: Fraction, grid_denominator: int) -> ChunkScore:
        """Score every chunk and reduce; the reduction does not depend on arrival order."""
        self.start()
        for index, points in enumerate(chunks):
            self._input_queue.put(
                GridChunkRequest(job_id=str(index), ratio=ratio, grid_denominator=grid_denominator, points=points)
            )
        results: Dict[str, GridChunkResult] = {}
        while len(results) < len(chunks):
            try:
                result = self._output_queue.get(timeout=RESULT_TIMEOUT)
            except queue.Empty:
                raise PosAuctionError(f"grid workers returned {len(results)} of {len(chunks)} chunks") from None
            if result.error:
                raise PosAuctionError(f"grid chunk {result.job_id or '?'} failed: {result.error}")
            results[result.job_id] = result
        return reduce_scores(
            ChunkScore(value=r.value, argmin=r.argmin, candidates=r.candidates) for r in results.values()
        )
