"""
系統配置設定
所有可調整的界限和開關都在這裡，命令列參數會在執行時覆寫部分設定
"""

# =========== Splicing Config ============
APPLICABILITY_MODE = 'partner'          # 'partner': 需要有可用的 partner 才算可套用; 'context-only': 只看 α/β
DEFAULT_PARTNER_LEN_BOUND = 8           # 正規初始集合: partner 及起始字詞的長度上限
DEFAULT_SENTENTIAL_BOUND = 12           # 非上下文無關文法的句型長度上限 (小於 k 時自動提高到 k)
MARKER_OVERHEAD_FACTOR = 4              # 預設 max_steps = k * (n + 4)
MAX_COUNTEREXAMPLES = 10                # FAIL 時最多列出多少個反例

# Kuroda 五符號右語境 (第五個符號等於第二個)
# False: 只保留前四個符號，系統維持 (4,2) 型; True: 原樣輸出，系統變成 (5,2) 型
KURODA_WIDE_CONTEXT = False

# =========== Memory Config ============
ENABLE_MEMORY_MONITOR = True
MEMORY_LIMIT_MB = 2048
MEMORY_CHECK_INTERVAL = 20000           # 每產生多少個新狀態檢查一次記憶體

# =========== Compression Config ============
# 壓縮格式由副檔名決定 (.lz4 / .zst / .gz)，這裡只設定壓縮級別
LZ4_COMPRESSION_LEVEL = 1       # LZ4: 0-16, 越高壓縮率越好但越慢
ZSTD_COMPRESSION_LEVEL = 3      # Zstd: 1-22, 推薦 3-6
GZIP_COMPRESSION_LEVEL = 6      # gzip: 1-9, 推薦 6

# =========== Output Config ============
SHOW_DEBUG_MESSAGES = False             # --verbose 時開啟
TRACE_TABLE_MAX_WIDTH = 160             # 推導表格最大寬度 (Result 欄位超過時換行)

# =========== 全局變數 ============
force_stop = False
