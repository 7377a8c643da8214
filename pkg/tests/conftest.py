"""
pytest 共用設定：把專案根目錄加入 sys.path，每個測試之後還原設定
"""
import os
import sys

import pytest

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, ROOT)

import config.settings as settings  # noqa: E402


@pytest.fixture(autouse=True)
def _restore_settings():
    saved = (settings.APPLICABILITY_MODE, settings.KURODA_WIDE_CONTEXT,
             settings.DEFAULT_PARTNER_LEN_BOUND, settings.MEMORY_CHECK_INTERVAL)
    yield
    (settings.APPLICABILITY_MODE, settings.KURODA_WIDE_CONTEXT,
     settings.DEFAULT_PARTNER_LEN_BOUND, settings.MEMORY_CHECK_INTERVAL) = saved
    settings.force_stop = False
