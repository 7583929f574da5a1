"""
reporting.py - 状态输出与结果记录

功能：
- 彩色状态日志（输出到 stderr，stdout 只留给结果记录）
- 统一的结果记录字段
- CSV / JSON-lines 两种记录格式，浮点数保留 17 位有效数字
"""

import csv
import io
import json
import math
import sys
from typing import Dict, Iterable, List, Optional

from rich.console import Console
from rich.text import Text

console = Console(stderr=True, highlight=False)

_VERBOSE = False

# 记录字段顺序固定，跨版本保持稳定
RECORD_FIELDS = [
    "command", "identity",
    "z_re", "z_im", "y_re", "y_im", "x", "a",
    "s_re", "s_im", "t",
    "value_re", "value_im",
    "residual", "tolerance", "scale", "error_estimate", "evaluations",
    "passed", "wall_time", "error",
]

OUTPUT_FORMATS = ("csv", "jsonl")


def set_verbose(flag: bool) -> None:
    """切换详细输出"""
    global _VERBOSE
    _VERBOSE = bool(flag)


def _emit(tag: str, style: str, message: str) -> None:
    console.print(Text.assemble((tag, style), " ", message))


def log_info(message: str) -> None:
    _emit("[INFO]", "blue", message)


def log_success(message: str) -> None:
    _emit("[SUCCESS]", "green", message)


def log_warning(message: str) -> None:
    _emit("[WARNING]", "yellow", message)


def log_error(message: str) -> None:
    _emit("[ERROR]", "red", message)


def log_step(message: str) -> None:
    _emit("[STEP]", "magenta", message)


def log_verbose(message: str) -> None:
    if _VERBOSE:
        _emit("[VERBOSE]", "cyan", message)


def make_record(command: str, **fields) -> Dict:
    """生成一条完整记录，缺失字段为 None"""
    unknown = set(fields) - set(RECORD_FIELDS)
    if unknown:
        raise KeyError(f"未知记录字段: {', '.join(sorted(unknown))}")

    record = {key: None for key in RECORD_FIELDS}
    record["command"] = command
    for key, value in fields.items():
        record[key] = _clean_value(value)
    return record


def _clean_value(value):
    # numpy 标量转为内置类型；非有限浮点数没有可移植的文本形式
    if value is None or isinstance(value, (bool, str)):
        return value
    if hasattr(value, "item"):
        value = value.item()
    if isinstance(value, bool):
        return value
    if isinstance(value, int):
        return value
    value = float(value)
    return value if math.isfinite(value) else None


def format_csv_value(value) -> str:
    """CSV 单元格文本"""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def render_records(records: Iterable[Dict], output_format: str) -> str:
    """把记录渲染为文本"""
    if output_format not in OUTPUT_FORMATS:
        raise ValueError(f"不支持的输出格式: {output_format}")

    buffer = io.StringIO()
    if output_format == "csv":
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(RECORD_FIELDS)
        for record in records:
            writer.writerow([format_csv_value(record.get(key)) for key in RECORD_FIELDS])
    else:
        for record in records:
            row = {key: record.get(key) for key in RECORD_FIELDS}
            buffer.write(json.dumps(row, ensure_ascii=False))
            buffer.write("\n")
    return buffer.getvalue()


def write_records(records: List[Dict], output_format: str,
                  output_path: Optional[str] = None) -> None:
    """按固定顺序输出记录到文件或标准输出"""
    text = render_records(records, output_format)
    if output_path is None or output_path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return

    with open(output_path, 'w', encoding='utf-8', newline='') as f:
        f.write(text)
    log_verbose(f"📝 已写入 {len(records)} 条记录: {output_path}")
