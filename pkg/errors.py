"""
errors.py - 异常定义

功能：
- 统一的异常基类 FeqError
- 参数错误、极点、溢出、收敛失败、级数截断、精度检查失败
"""

from typing import Any, Optional


class FeqError(Exception):
    """所有数值错误的基类"""


class ParameterError(FeqError, ValueError):
    """参数不满足前置条件"""


class PoleError(ParameterError):
    """在函数极点处求值"""

    def __init__(self, function: str, point: Any):
        super().__init__(f"{function} 在极点处求值: s = {point}")
        self.function = function
        self.point = point


class RangeOverflowError(FeqError, OverflowError):
    """结果或自变量超出可表示范围"""


class ConvergenceError(FeqError, RuntimeError):
    """数值积分未收敛，携带最后一次的积分结果"""

    def __init__(self, message: str, result: Optional[Any] = None):
        super().__init__(message)
        self.result = result


class TruncationError(FeqError, RuntimeError):
    """级数在 n_max 项内达不到容差"""


class PrecisionError(FeqError, ArithmeticError):
    """临界线上 Ξ(t) 的虚部超出允许范围"""
