"""
工具模組：日誌、記憶體、壓縮與檔案輸入輸出
"""
