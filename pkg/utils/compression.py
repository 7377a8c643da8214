"""
壓縮工具模組 - 支援 LZ4、Zstd 和 gzip

provenance / 報告 JSON 及輸入檔案 (.fss / .g / .hom) 都可以壓縮存放，
格式由副檔名決定：.lz4、.zst、.gz，其他副檔名一律視為純文字。
"""
import os
import json
import gzip
import logging

# 導入壓縮庫，缺少時降級到 gzip
try:
    import lz4.frame
    HAS_LZ4 = True
except ImportError as e:
    HAS_LZ4 = False
    logging.debug(f"LZ4 模組載入失敗: {e}")

try:
    import zstandard as zstd
    HAS_ZSTD = True
except ImportError as e:
    HAS_ZSTD = False
    logging.debug(f"Zstandard 模組載入失敗: {e}")

import config.settings as settings


class CompressionFormat:
    """壓縮格式枚舉"""
    GZIP = 'gzip'
    LZ4 = 'lz4'
    ZSTD = 'zstd'

    @classmethod
    def detect_format(cls, filepath):
        """根據副檔名檢測壓縮格式，純文字檔回傳 None"""
        filepath = str(filepath)
        if filepath.endswith('.lz4'):
            return cls.LZ4
        elif filepath.endswith('.zst'):
            return cls.ZSTD
        elif filepath.endswith('.gz'):
            return cls.GZIP
        return None

    @classmethod
    def validate_format(cls, format_type):
        """驗證壓縮格式是否可用"""
        if format_type == cls.LZ4 and not HAS_LZ4:
            logging.warning("LZ4 格式不可用，降級到 gzip")
            return cls.GZIP
        elif format_type == cls.ZSTD and not HAS_ZSTD:
            logging.warning("Zstandard 格式不可用，降級到 gzip")
            return cls.GZIP
        return format_type


def compress_data(data, format_type, level=None):
    """
    壓縮數據
    """
    format_type = CompressionFormat.validate_format(format_type)

    if isinstance(data, str):
        data = data.encode('utf-8')

    if format_type == CompressionFormat.LZ4 and HAS_LZ4:
        compression_level = level or settings.LZ4_COMPRESSION_LEVEL
        return lz4.frame.compress(data, compression_level=compression_level)

    elif format_type == CompressionFormat.ZSTD and HAS_ZSTD:
        compression_level = level or settings.ZSTD_COMPRESSION_LEVEL
        compressor = zstd.ZstdCompressor(level=compression_level)
        return compressor.compress(data)

    compression_level = level or settings.GZIP_COMPRESSION_LEVEL
    return gzip.compress(data, compresslevel=compression_level)


def decompress_data(compressed_data, format_type=None):
    """
    解壓縮數據，未指定格式時依 magic bytes 自動判斷
    """
    if format_type is None:
        if compressed_data.startswith(b'\x04"M\x18'):
            format_type = CompressionFormat.LZ4
        elif compressed_data.startswith(b'(\xb5/\xfd'):
            format_type = CompressionFormat.ZSTD
        else:
            format_type = CompressionFormat.GZIP

    if format_type == CompressionFormat.LZ4:
        if not HAS_LZ4:
            raise ValueError("LZ4 格式不可用，無法解壓縮")
        return lz4.frame.decompress(compressed_data)
    if format_type == CompressionFormat.ZSTD:
        if not HAS_ZSTD:
            raise ValueError("Zstandard 格式不可用，無法解壓縮")
        return zstd.ZstdDecompressor().decompress(compressed_data)
    return gzip.decompress(compressed_data)


def write_text(filepath, text):
    """
    寫入文字檔，副檔名是壓縮格式時先壓縮
    """
    format_type = CompressionFormat.detect_format(filepath)
    directory = os.path.dirname(str(filepath))
    if directory:
        os.makedirs(directory, exist_ok=True)

    if format_type is None:
        with open(filepath, 'w', encoding='utf-8', newline='\n') as f:
            f.write(text)
        return filepath

    payload = compress_data(text, format_type)
    with open(filepath, 'wb') as f:
        f.write(payload)
    return filepath


def read_text(filepath):
    """
    讀取文字檔，壓縮檔會自動解壓縮
    """
    format_type = CompressionFormat.detect_format(filepath)
    if format_type is None:
        with open(filepath, 'r', encoding='utf-8') as f:
            return f.read()

    with open(filepath, 'rb') as f:
        raw = f.read()
    return decompress_data(raw, format_type).decode('utf-8')


def save_json(filepath, data):
    """
    保存 JSON (依副檔名決定是否壓縮)
    """
    text = json.dumps(data, ensure_ascii=False, indent=2, sort_keys=False) + '\n'
    write_text(filepath, text)
    logging.debug(f"已寫入 {filepath} ({CompressionFormat.detect_format(filepath) or 'plain'})")
    return filepath


def load_json(filepath):
    """
    載入 JSON，格式錯誤時記錄後重新拋出
    """
    try:
        return json.loads(read_text(filepath))
    except json.JSONDecodeError as e:
        logging.error(f"JSON 格式錯誤: {filepath}, 錯誤: {e}")
        raise
