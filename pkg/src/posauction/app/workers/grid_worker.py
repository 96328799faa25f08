from __future__ import annotations

import logging
import logging.handlers
import multiprocessing
from typing import Optional

from ...oracle.grid import score_points
from .protocol import GridChunkRequest, GridChunkResult

logger = logging.getLogger("posauction.worker")


def run_worker(
    input_queue: multiprocessing.Queue,
    output_queue: multiprocessing.Queue,
    log_queue: Optional[multiprocessing.Queue] = None,
    log_level: int = logging.WARNING,
) -> None:
    if log_queue is not None:
        qh = logging.handlers.QueueHandler(log_queue)
        root = logging.getLogger()
        root.setLevel(log_level)
        root.handlers = []
        root.addHandler(qh)
        # records reach the parent through the queue only
        logging.getLogger("posauction").handlers = []

    logger.debug("Worker started.")

    while True:
        try:
            task = input_queue.get()
            if task is None:
                break
            if isinstance(task, GridChunkRequest):
                _process_chunk(task, output_queue)
                continue
            logger.warning("Ignoring unknown task type %s", type(task).__name__)
        except Exception as exc:
            logger.error("Worker loop exception: %s", exc, exc_info=True)
            output_queue.put(GridChunkResult(job_id="", error=f"Worker loop error: {exc}"))
    logger.debug("Worker stopped.")


def _process_chunk(task: GridChunkRequest, output_queue: multiprocessing.Queue) -> None:
    try:
        logger.debug("Scoring chunk %s with %d grid points", task.job_id, len(task.points))
        score = score_points(task.points, task.ratio, task.grid_denominator)
        output_queue.put(
            GridChunkResult(
                job_id=task.job_id,
                value=score.value,
                argmin=score.argmin,
                candidates=score.candidates,
            )
        )
    except Exception as exc:
        logger.error("Chunk %s failed: %s", task.job_id, exc, exc_info=True)
        output_queue.put(GridChunkResult(job_id=task.job_id, error=str(exc)))
