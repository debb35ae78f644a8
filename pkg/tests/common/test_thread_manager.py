import threading
import time

import pytest

from apkwarden.common.concurrency import ThreadManager


def test_map_preserves_input_order():
    def slow_square(n):
        # later items finish first
        time.sleep(0.002 * (10 - n))
        return n * n

    with ThreadManager(name="t", max_workers=4) as tm:
        assert tm.map(slow_square, range(10)) == [n * n for n in range(10)]


@pytest.mark.threaded
def test_max_queue_bounds_outstanding_tasks():
    running = 0
    peak = 0
    lock = threading.Lock()

    def work(_):
        nonlocal running, peak
        with lock:
            running += 1
            peak = max(peak, running)
        time.sleep(0.01)
        with lock:
            running -= 1

    with ThreadManager(name="bounded", max_workers=8, max_queue=2) as tm:
        tm.map(work, range(12))
    assert peak <= 2


def test_failures_are_counted_and_propagate():
    def boom(n):
        if n == 2:
            raise ValueError("bad apk")
        return n

    tm = ThreadManager(name="f", max_workers=2, log_exceptions=False)
    futs = [tm.submit(boom, n) for n in range(4)]
    with pytest.raises(ValueError):
        futs[2].result()
    tm.shutdown()

    stats = tm.stats()
    assert stats.tasks_submitted == 4
    assert stats.tasks_completed == 3
    assert stats.tasks_failed == 1
    assert stats.in_flight == 0


def test_submit_after_shutdown_raises():
    tm = ThreadManager(name="closed", max_workers=1)
    tm.shutdown()
    tm.shutdown()  # idempotent
    with pytest.raises(RuntimeError):
        tm.submit(lambda: 1)
