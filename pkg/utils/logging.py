"""
日誌和打印功能

結果一律寫到 stdout (不加時間戳，確保輸出 byte-stable)；
進度與診斷訊息寫到 stderr，並加上時間戳。
"""
import sys
import logging
from datetime import datetime
from io import StringIO
from wcwidth import wcswidth, wcwidth

import config.settings as settings

TIMESTAMP_FORMAT = '%Y-%m-%d %H:%M:%S'


def timestamped_print(*args, **kwargs):
    """
    帶時間戳的進度輸出 (stderr)，只在 verbose 模式下顯示
    """
    if not settings.SHOW_DEBUG_MESSAGES:
        return

    output_buffer = StringIO()
    print(*args, file=output_buffer, **kwargs)
    message = output_buffer.getvalue()
    output_buffer.close()

    timestamp = datetime.now().strftime(TIMESTAMP_FORMAT)
    lines = message.rstrip().split('\n')
    stream = sys.stderr
    for line in lines:
        stream.write(f"[{timestamp}] {line}\n")
    stream.flush()


def init_logging(verbose=False):
    """
    初始化日誌系統
    """
    settings.SHOW_DEBUG_MESSAGES = bool(verbose)
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format='[%(asctime)s] %(levelname)s: %(message)s',
        datefmt=TIMESTAMP_FORMAT,
        stream=sys.stderr,
        force=True,
    )


def wrap_text_with_cjk_support(text, width):
    """
    支持 CJK 字符寬度的文本換行函數
    """
    lines = []
    line = ""
    current_width = 0
    for char in str(text):
        char_width = wcwidth(char)
        if char_width < 0:
            continue  # 跳過控制字符

        if current_width + char_width > width:
            lines.append(line)
            line = char
            current_width = char_width
        else:
            line += char
            current_width += char_width
    if line:
        lines.append(line)
    return lines or ['']


def _get_display_width(text):
    """
    精準計算一個字串的顯示闊度，處理 CJK 全形字元
    """
    width = wcswidth(str(text))
    return len(str(text)) if width < 0 else width


def pad_to_width(text, width):
    """
    以顯示闊度補空白
    """
    padding = width - _get_display_width(text)
    return str(text) + ' ' * padding if padding > 0 else str(text)
