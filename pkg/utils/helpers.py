"""
通用輔助函數
"""
import os
import logging

from utils.compression import read_text, write_text


def read_source(filepath):
    """
    讀取輸入檔 (.fss / .g / .hom，可壓縮)
    """
    try:
        return read_text(filepath)
    except FileNotFoundError:
        logging.error(f"檔案未找到: {filepath}")
        raise
    except PermissionError:
        logging.error(f"權限不足，無法存取檔案: {filepath}")
        raise
    except UnicodeDecodeError as e:
        logging.error(f"檔案不是 UTF-8 文字: {filepath}，錯誤: {e}")
        raise


def write_output(filepath, text):
    """
    寫出文字檔，確保以換行結尾
    """
    if not text.endswith('\n'):
        text += '\n'
    try:
        return write_text(filepath, text)
    except OSError as e:
        logging.error(f"無法寫入檔案: {filepath}，錯誤: {e}")
        raise


def iter_content_lines(text):
    """
    逐行產生 (行號, 欄位, 內容)：去掉 # 之後的註解與空白行，欄位從 1 起算
    """
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split('#', 1)[0]
        stripped = content.strip()
        if not stripped:
            continue
        column = len(content) - len(content.lstrip()) + 1
        yield number, column, stripped


def source_name(filepath):
    """錯誤訊息用的檔名"""
    return os.path.basename(str(filepath)) if filepath else '<text>'
