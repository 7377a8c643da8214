"""
純文字輸出模組
"""
