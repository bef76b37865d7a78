#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
報表匯出模組 (report_export.py)

用途：
    將驗證結果表（pandas DataFrame）匯出為 Excel 活頁簿：
    粗體標題列、固定欄寬、檔案已存在時自動改名為 name_1.xlsx、name_2.xlsx…

在整個應用中的角色：
    - main.py verify-paper --xlsx

關聯檔案：
    - reference_suite.py：產生結果表
    - main.py：呼叫 export_excel
"""

import logging
import os

import openpyxl
from openpyxl.styles import Font
from openpyxl.utils import get_column_letter

logger = logging.getLogger(__name__)

COLUMN_WIDTHS = {"item": 8, "group": 14, "status": 10, "detail": 100}


def get_available_path(output_dir, base_filename):
    """
    取得不會覆蓋既有檔案的路徑。

    Args:
        output_dir (str): 輸出目錄
        base_filename (str): 基礎檔名（如 "verify.xlsx"）

    Returns:
        str: 可用的檔案路徑
    """
    name, ext = os.path.splitext(base_filename)
    candidate = os.path.join(output_dir, base_filename)
    counter = 1
    while os.path.exists(candidate):
        candidate = os.path.join(output_dir, f"{name}_{counter}{ext}")
        counter += 1
    return candidate


def export_excel(frame, path, sheet_title="verify-paper"):
    """
    將結果表寫成 xlsx。

    Args:
        frame (pandas.DataFrame): 結果表
        path (str): 目標路徑；已存在時改用不衝突的新檔名
        sheet_title (str): 工作表名稱

    Returns:
        str: 實際寫入的路徑
    """
    output_dir = os.path.dirname(path) or "."
    os.makedirs(output_dir, exist_ok=True)
    target = get_available_path(output_dir, os.path.basename(path))

    wb = openpyxl.Workbook()
    ws = wb.active
    ws.title = sheet_title
    columns = [str(c) for c in frame.columns]
    ws.append(columns)
    for cell in ws[1]:
        cell.font = Font(bold=True)
    for row in frame.itertuples(index=False):
        ws.append([v.item() if hasattr(v, "item") else v for v in row])
    for i, name in enumerate(columns):
        letter = get_column_letter(i + 1)
        ws.column_dimensions[letter].width = COLUMN_WIDTHS.get(name, 16)

    wb.save(target)
    logger.info("exported %d rows to %s", len(frame), target)
    return target
