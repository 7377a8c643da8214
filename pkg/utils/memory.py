"""
記憶體監控功能
"""
import psutil
import os
import gc
import logging
import config.settings as settings


def get_memory_usage():
    """
    獲取當前記憶體使用量 (MB)
    """
    try:
        return psutil.Process(os.getpid()).memory_info().rss / 1024 / 1024
    except psutil.NoSuchProcess as e:
        logging.error(f"進程不存在，無法獲取內存使用量: {e}")
        return 0
    except psutil.AccessDenied as e:
        logging.warning(f"權限不足，無法獲取內存使用量: {e}")
        return 0
    except Exception as e:
        logging.error(f"獲取內存使用量時發生未知錯誤: {e}", exc_info=True)
        return 0


def check_memory_limit():
    """
    檢查記憶體使用是否超過限制
    """
    if not settings.ENABLE_MEMORY_MONITOR:
        return False

    current_memory = get_memory_usage()
    if current_memory > settings.MEMORY_LIMIT_MB:
        logging.warning(f"記憶體使用量過高: {current_memory:.1f} MB > {settings.MEMORY_LIMIT_MB} MB，執行垃圾回收")
        gc.collect()
        new_memory = get_memory_usage()
        logging.warning(f"垃圾回收後: {new_memory:.1f} MB")
        return new_memory > settings.MEMORY_LIMIT_MB
    return False


class MemoryGuard:
    """
    搜尋迴圈用的計數器：每 MEMORY_CHECK_INTERVAL 個新狀態檢查一次記憶體，
    超過上限時拋出 SearchAbortedError
    """

    def __init__(self, what):
        self.what = what
        self.count = 0

    def tick(self):
        self.count += 1
        if self.count % settings.MEMORY_CHECK_INTERVAL:
            return
        if settings.force_stop or check_memory_limit():
            from core.errors import SearchAbortedError
            raise SearchAbortedError(
                f"{self.what}: 已處理 {self.count} 個狀態，記憶體超過 {settings.MEMORY_LIMIT_MB} MB，搜尋中止"
            )
