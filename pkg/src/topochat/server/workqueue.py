"""Bounded FIFO job queue with a fixed worker thread pool.

Jobs are plain callables; each submit returns a Future that resolves
exactly once, with the callable's result or its exception.  When the
queue is at capacity, submit raises queue.Full instead of blocking so
the caller can shed load.
"""

from __future__ import annotations

import queue
import threading
from concurrent.futures import Future

Full = queue.Full


class WorkQueue:
    def __init__(self, capacity: int = 64, workers: int = 2):
        if capacity < 1:
            raise ValueError("capacity must be positive")
        if workers < 1:
            raise ValueError("workers must be positive")
        self.capacity = capacity
        self.workers = workers
        self._jobs: queue.Queue = queue.Queue(maxsize=capacity)
        self._stopped = False
        self._threads = []
        for i in range(workers):
            thread = threading.Thread(
                target=self._worker, name=f"chat-worker-{i}", daemon=True
            )
            thread.start()
            self._threads.append(thread)

    def __len__(self) -> int:
        return self._jobs.qsize()

    def submit(self, fn, *args, **kwargs) -> Future:
        """Enqueue a job; raises queue.Full when at capacity."""
        if self._stopped:
            raise RuntimeError("work queue is stopped")
        future: Future = Future()
        self._jobs.put_nowait((fn, args, kwargs, future))
        return future

    def _worker(self) -> None:
        while True:
            item = self._jobs.get()
            if item is None:
                return
            fn, args, kwargs, future = item
            if not future.set_running_or_notify_cancel():
                continue  # cancelled while queued
            try:
                future.set_result(fn(*args, **kwargs))
            except BaseException as exc:
                future.set_exception(exc)

    def stop(self, timeout: float = 5.0) -> None:
        """Drain and join the workers.  Pending jobs still run."""
        if self._stopped:
            return
        self._stopped = True
        for _ in self._threads:
            self._jobs.put(None)
        for thread in self._threads:
            thread.join(timeout=timeout)
