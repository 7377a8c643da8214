"""
Flat Splicing Toolkit - 帶標籤 flat splicing 系統的模擬、文法編譯與有界驗證
"""
__version__ = "1.0.0"
