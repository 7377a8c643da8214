"""
核心功能模組：字詞、正規集合、splicing、推導、文法、編譯與判定
"""
