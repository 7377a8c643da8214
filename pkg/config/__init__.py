"""
配置管理模組
"""
# 空的 __init__.py 文件
