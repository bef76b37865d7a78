#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
全域配置管理模組 (config.py)

用途：
    提供全域配置管理功能，使用單例模式（Singleton Pattern）
    確保整個程式只有一個配置實例。配置資料以字典形式存放在記憶體中，
    並可序列化為 JSON 檔案持久儲存至 config/config.json。
    管理的設定項包括：Schreier 圖層級上限、單值群閉包上限、
    非回溯矩陣的有向邊上限、日誌與輸出資料夾等。

在整個應用中的角色：
    - 被所有需要檢查大小上限的模組透過 GlobalConfig() 取得同一實例
    - 環境變數 ZETAGRAPH_CAP 在每次讀取時覆寫 max_level

關聯檔案：
    - basilica.py / products.py：建構前呼叫 check_level()
    - covering.py：monodromy_order 讀取 monodromy_cap
    - zeta.py：nonbacktracking_reciprocal 讀取 nonbacktracking_cap
    - main.py：讀取 log_dir、output_dir
"""

import json
import logging
import os

from errors import CapExceededError, ConfigError

logger = logging.getLogger(__name__)

CAP_ENV_VAR = "ZETAGRAPH_CAP"


class GlobalConfig:
    """全域配置（單例）。

    第一次建立時由 config/config.json 載入，缺少的鍵以預設值補齊；
    之後所有 GlobalConfig() 都回傳同一個實例。測試以 reset() 回到預設值。

    屬性：
        _instance (GlobalConfig): 單例實例
        _config (dict): 目前生效的設定
    """

    _instance = None

    def __new__(cls, *args, **kwargs):
        if not cls._instance:
            cls._instance = super().__new__(cls)
            cls._instance._config = {}
        return cls._instance

    def __init__(self):
        if not hasattr(self, '_initialized'):
            self._initialized = True
            self.load_from_json()

    def set(self, key, value):
        self._config[key] = value

    def get(self, key, default=None):
        """讀取設定值，鍵不存在時回傳 default。"""
        return self._config.get(key, default)

    def reset(self):
        """恢復成預設配置。"""
        self._config = self._get_default_config()

    def save_to_json(self, filename='config/config.json'):
        """
        將目前的設定寫成 JSON（鍵排序、縮排 2）。

        Args:
            filename (str): 目標路徑，資料夾不存在時自動建立
        """
        config_dir = os.path.dirname(filename)
        if config_dir:
            os.makedirs(config_dir, exist_ok=True)
        with open(filename, mode='w', encoding='utf-8') as file:
            json.dump(self._config, file, ensure_ascii=False, indent=2, sort_keys=True)
        logger.debug("config saved to %s", filename)

    def load_from_json(self, file_path='config/config.json'):
        """從 JSON 檔案載入配置資料至 self._config。

        檔案中缺少的鍵以預設值補齊。

        Args:
            file_path (str): JSON 配置檔案路徑（預設為 config/config.json）
        """
        config = self._get_default_config()
        if os.path.exists(file_path):
            try:
                with open(file_path, mode='r', encoding='utf-8') as file:
                    config.update(json.load(file))
                logger.debug("Load config from: %s", file_path)
            except (json.JSONDecodeError, OSError) as e:
                logger.warning("Load config failed: %s, using default config", e)
        else:
            logger.debug("Config file not found: %s, using default config", file_path)
        self._config = config

    def _get_default_config(self):
        """取得預設配置字典。當 JSON 檔案不存在或解析失敗時使用。

        Returns:
            dict: 包含所有預設配置項目的字典
        """
        return {
            # ===== 大小上限 =====
            "max_level": 12,                     # Γ_n 的最大層級 n（乘積以 n+r 計）
            "monodromy_cap": 1_000_000,          # 置換群廣度優先閉包的元素上限
            "nonbacktracking_cap": 1024,         # 非回溯矩陣允許的有向邊數上限

            # ===== 檔案路徑 =====
            "log_dir": "logs",                   # --log 時日誌檔的資料夾
            "output_dir": "output",              # xlsx 報表預設輸出資料夾
            "golden_path": None,                 # 參考數值檔，None 表示使用內附檔案
        }

    def max_level(self):
        """目前生效的層級上限。環境變數 ZETAGRAPH_CAP 優先於配置值。

        Returns:
            int: 層級上限

        Raises:
            ConfigError: 環境變數不是正整數
        """
        raw = os.environ.get(CAP_ENV_VAR)
        if raw is None or raw.strip() == "":
            return int(self.get("max_level", 12))
        try:
            value = int(raw)
        except ValueError:
            raise ConfigError(f"{CAP_ENV_VAR} must be a positive integer, got {raw!r}") from None
        if value < 1:
            raise ConfigError(f"{CAP_ENV_VAR} must be a positive integer, got {raw!r}")
        return value

    def check_level(self, n, what="level"):
        """檢查層級是否在 1..max_level 範圍內。

        Args:
            n (int): 要求的層級
            what (str): 錯誤訊息中的名稱

        Raises:
            ValueError: n < 1
            CapExceededError: n 超過上限
        """
        if n < 1:
            raise ValueError(f"{what} must be >= 1, got {n}")
        limit = self.max_level()
        if n > limit:
            raise CapExceededError(
                f"{what} {n} exceeds the configured cap {limit} (set {CAP_ENV_VAR} to raise it)",
                limit=limit,
                requested=n,
            )
