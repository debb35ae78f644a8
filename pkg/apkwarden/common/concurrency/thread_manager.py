from __future__ import annotations

import os
import threading
import time
from concurrent.futures import Future, ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Callable, Generic, Iterable, List, Optional, TypeVar

from apkwarden.common.logging import get_logger

T = TypeVar("T")
R = TypeVar("R")

log = get_logger(__name__)


@dataclass
class ThreadStats:
    start_ts: float
    tasks_submitted: int = 0
    tasks_completed: int = 0
    tasks_failed: int = 0

    @property
    def uptime_sec(self) -> float:
        return time.time() - self.start_ts

    @property
    def in_flight(self) -> int:
        return max(0, self.tasks_submitted - self.tasks_completed - self.tasks_failed)


def _default_workers() -> int:
    return max(1, min(8, os.cpu_count() or 4))


class ThreadManager(Generic[T, R]):
    """
    Thread pool for fanning APK scans out over a corpus.

    At most ``max_queue`` tasks are outstanding at once (submitted, not yet finished);
    ``submit`` blocks until a slot frees up. ``map`` collects results in input order, so a
    corpus run produces the same output whatever the scheduling. A task that raises is
    counted as failed and its exception surfaces from ``Future.result()``; corpus scans
    catch per-app errors inside the task instead.
    """

    def __init__(
        self,
        name: str = "scan",
        max_workers: Optional[int] = None,
        max_queue: Optional[int] = None,
        log_exceptions: bool = True,
    ) -> None:
        self._name = name
        self._pool = ThreadPoolExecutor(
            max_workers=max_workers or _default_workers(), thread_name_prefix=name
        )
        self._slots = threading.BoundedSemaphore(max_queue) if max_queue and max_queue > 0 else None
        self._log_exceptions = log_exceptions
        self._stats = ThreadStats(start_ts=time.time())
        self._lock = threading.Lock()
        self._closed = False

    # ---- lifecycle --------------------------------------------------------------------
    def __enter__(self) -> "ThreadManager[T, R]":
        return self

    def __exit__(self, exc_type, exc, tb) -> None:
        self.shutdown(wait=True, cancel_futures=True)

    def shutdown(self, wait: bool = True, cancel_futures: bool = False) -> None:
        """Idempotent."""
        with self._lock:
            if self._closed:
                return
            self._closed = True
        self._pool.shutdown(wait=wait, cancel_futures=cancel_futures)

    def stats(self) -> ThreadStats:
        with self._lock:
            return replace(self._stats)

    # ---- work -------------------------------------------------------------------------
    def _finished(self, fut: Future) -> None:
        if self._slots is not None:
            self._slots.release()
        failed = not fut.cancelled() and fut.exception() is not None
        with self._lock:
            if failed:
                self._stats.tasks_failed += 1
            else:
                self._stats.tasks_completed += 1
        if failed and self._log_exceptions:
            log.error("%s task failed: %s", self._name, fut.exception())

    def submit(self, fn: Callable[..., R], /, *args, **kwargs) -> Future[R]:
        if self._closed:
            raise RuntimeError(f"{self._name}: submit() after shutdown")
        if self._slots is not None:
            self._slots.acquire()
        try:
            fut: Future[R] = self._pool.submit(fn, *args, **kwargs)
        except RuntimeError:
            if self._slots is not None:
                self._slots.release()
            raise
        with self._lock:
            self._stats.tasks_submitted += 1
        fut.add_done_callback(self._finished)
        return fut

    def map(self, fn: Callable[[T], R], iterable: Iterable[T]) -> List[R]:
        """Run ``fn`` over every item; results come back in input order."""
        pending = [self.submit(fn, item) for item in iterable]
        log.debug("%s: %d task(s) submitted", self._name, len(pending))
        return [f.result() for f in pending]
