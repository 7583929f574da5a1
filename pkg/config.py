"""
config.py - 数值默认值与运行配置文件

功能：
- 集中定义积分、级数、零点扫描的默认参数
- 读写 JSON 运行配置（格式与 config.json 一致）
"""

import json
import os
from typing import Dict

# 积分默认值
DEFAULT_ABS_TOL = 1e-10
DEFAULT_REL_TOL = 1e-10
DEFAULT_MAX_LEVELS = 12
DEFAULT_LINE_HALFHEIGHT = 40.0
MIN_LEVELS = 3

# H̄ 级数
DEFAULT_SERIES_ABS_TOL = 1e-18
DEFAULT_SERIES_N_MAX = 60

# 零点扫描
DEFAULT_SCAN_STEP = 0.05
ORDINATE_TOLERANCE = 1e-10
ZERO_TOLERANCE = 1e-9
SUSPECT_THRESHOLD = 0.1
MAX_SCAN_HEIGHT = 100.0

# ξ 的可去奇点半径与自变量范围
XI_SINGULAR_RADIUS = 1e-3
XI_MAX_MODULUS = 200.0
CRITICAL_LINE_IMAG_RTOL = 1e-10

# 求解器
DEFAULT_ABSCISSA = -0.5
SUPPORTED_X_MAX = 2.0
TOLERANCE_SAFETY_FACTOR = 10.0
OFF_ZERO_FLOOR = 1e-4

# 验收阈值
FEQ_TOLERANCE = 1e-7
RESIDUE_TOLERANCE = 1e-7
EQUIVALENCE_TOLERANCE = 1e-7
RH_TOLERANCE = 1e-6
MELLIN_TOLERANCE = 1e-8
KERNEL_PAIR_TOLERANCE = 1e-9
SELFDUAL_TOLERANCE = 1e-12
SYNTHETIC_TOLERANCE = 1e-8


def load_config(config_path: str) -> Dict:
    """加载配置文件"""
    if not os.path.exists(config_path):
        raise FileNotFoundError(f"配置文件不存在: {config_path}")

    with open(config_path, 'r', encoding='utf-8') as f:
        return json.load(f)


def save_config(config: Dict, config_path: str) -> str:
    """保存配置文件"""
    parent = os.path.dirname(config_path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    with open(config_path, 'w', encoding='utf-8') as f:
        json.dump(config, f, indent=2, ensure_ascii=False)
    return config_path
