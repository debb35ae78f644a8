from apkwarden.common.concurrency.thread_manager import ThreadManager, ThreadStats

__all__ = ["ThreadManager", "ThreadStats"]
