"""
quadrature.py - 数值积分引擎

功能：
- 半无穷区间 (0,∞) 上的双指数（exp-sinh）变换 + 梯形公式，逐层步长减半
- 竖直线 ℜ(s)=a 上的截断围道积分，按最后一段样本拟合尾部 C·e^{-κT}
- 误差估计取相邻两层之差，并以舍入误差为下限
- 不收敛时不抛异常，而是返回带状态标记的结果
"""

import math
from dataclasses import asdict, dataclass
from typing import Callable, Dict, Optional, Union

import numpy as np

from config import (
    DEFAULT_ABS_TOL, DEFAULT_LINE_HALFHEIGHT, DEFAULT_MAX_LEVELS,
    DEFAULT_REL_TOL, MIN_LEVELS,
)
from errors import ConvergenceError, ParameterError

Value = Union[complex, np.ndarray]
Integrand = Callable[[np.ndarray], np.ndarray]

STATUS_CONVERGED = "converged"
STATUS_NOT_CONVERGED = "not_converged"
STATUS_TAIL_DOMINATED = "tail_dominated"
STATUS_NONFINITE = "nonfinite"

_HALF_PI = 0.5 * math.pi
# exp-sinh 变换后的截断窗口 |t| ≤ 5，对应 u ∈ [e^{-116.6}, e^{116.6}]
_DE_WINDOW = 5.0
# 窗口内部出现非有限样本视为被积函数错误，外侧按下溢截断为 0
_DE_INTERIOR = 3.0
_ROUNDOFF = 10.0 * np.finfo(float).eps
# 竖直线初始步长 T/16
_LINE_INITIAL_PANELS = 16
_TAIL_FRACTION = 0.1


@dataclass(frozen=True)
class QuadratureSpec:
    """积分参数"""
    abs_tol: float = DEFAULT_ABS_TOL
    rel_tol: float = DEFAULT_REL_TOL
    max_levels: int = DEFAULT_MAX_LEVELS
    line_halfheight: float = DEFAULT_LINE_HALFHEIGHT

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ParameterError(f"容差必须为正: abs_tol={self.abs_tol}, rel_tol={self.rel_tol}")
        if not self.line_halfheight > 0:
            raise ParameterError(f"截断高度必须为正: T={self.line_halfheight}")
        if int(self.max_levels) != self.max_levels or self.max_levels < MIN_LEVELS:
            raise ParameterError(f"max_levels 至少为 {MIN_LEVELS}: {self.max_levels}")

    def tolerance(self, magnitude: float) -> float:
        return max(self.abs_tol, self.rel_tol * magnitude)

    def to_dict(self) -> Dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict) -> "QuadratureSpec":
        known = {key: data[key] for key in ("abs_tol", "rel_tol", "max_levels", "line_halfheight")
                 if key in data}
        return cls(**known)


@dataclass
class QuadratureResult:
    """积分结果"""
    value: Value
    error_estimate: float
    evaluations: int
    status: str = STATUS_CONVERGED
    levels: int = 0
    tail_estimate: float = 0.0

    @property
    def converged(self) -> bool:
        return self.status == STATUS_CONVERGED

    def raise_if_failed(self, context: str) -> "QuadratureResult":
        if not self.converged:
            raise ConvergenceError(
                f"{context}: 积分失败 ({self.status})，误差估计 {self.error_estimate:.3e}，"
                f"层数 {self.levels}，求值 {self.evaluations} 次",
                self,
            )
        return self


def _as_value(total: np.ndarray) -> Value:
    if np.ndim(total) == 0:
        return complex(total)
    return np.asarray(total, dtype=complex)


def _magnitude(value: np.ndarray) -> float:
    return float(np.max(np.abs(value))) if np.size(value) else 0.0


def _exp_sinh_nodes(t: np.ndarray):
    """u = exp(π/2·sinh t) 及其导数"""
    u = np.exp(_HALF_PI * np.sinh(t))
    jacobian = _HALF_PI * np.cosh(t) * u
    return u, jacobian


def _de_samples(f: Integrand, t: np.ndarray) -> Optional[np.ndarray]:
    u, jacobian = _exp_sinh_nodes(t)
    with np.errstate(all="ignore"):
        values = np.asarray(f(u), dtype=complex)
        if values.ndim == 0:
            values = np.full(t.shape, values, dtype=complex)
        if values.shape[0] != t.shape[0]:
            raise ParameterError(f"被积函数返回形状 {values.shape}，应为 ({t.shape[0]}, ...)")
        weights = jacobian if values.ndim == 1 else jacobian[:, None]
        samples = values * weights

    bad = ~np.isfinite(samples)
    bad_rows = bad if bad.ndim == 1 else bad.any(axis=1)
    if np.any(bad_rows & (np.abs(t) < _DE_INTERIOR)):
        return None
    # 端点钳制：被积函数已下溢的位置记为 0
    samples[bad] = 0.0
    return samples


def integrate_semi_infinite(f: Integrand, spec: Optional[QuadratureSpec] = None) -> QuadratureResult:
    """计算 ∫_0^∞ f(u) du。

    f 接收正实数数组 u，返回同长度的复数组（或形如 (len(u), m) 的矩阵，
    此时逐列积分）。每层步长减半，只计算新增节点。
    """
    spec = spec or QuadratureSpec()
    h = 1.0
    half_steps = int(round(_DE_WINDOW / h))
    t = np.arange(-half_steps, half_steps + 1, dtype=float) * h

    samples = _de_samples(f, t)
    evaluations = t.size
    if samples is None:
        return QuadratureResult(value=complex("nan"), error_estimate=math.inf,
                                evaluations=evaluations, status=STATUS_NONFINITE, levels=1)

    total = samples.sum(axis=0)
    abs_total = np.abs(samples).sum(axis=0)
    value = h * total
    error = math.inf

    for level in range(1, spec.max_levels):
        h *= 0.5
        panels = int(round(2 * _DE_WINDOW / h))
        t_new = -_DE_WINDOW + h * (2 * np.arange(panels // 2, dtype=float) + 1)

        samples = _de_samples(f, t_new)
        evaluations += t_new.size
        if samples is None:
            return QuadratureResult(value=_as_value(value), error_estimate=math.inf,
                                    evaluations=evaluations, status=STATUS_NONFINITE,
                                    levels=level + 1)

        total = total + samples.sum(axis=0)
        abs_total = abs_total + np.abs(samples).sum(axis=0)
        previous, value = value, h * total

        difference = _magnitude(value - previous)
        roundoff = _ROUNDOFF * h * float(np.max(abs_total))
        error = max(difference, roundoff)

        if level + 1 >= MIN_LEVELS and error <= spec.tolerance(_magnitude(value)):
            return QuadratureResult(value=_as_value(value), error_estimate=error,
                                    evaluations=evaluations, status=STATUS_CONVERGED,
                                    levels=level + 1)

    return QuadratureResult(value=_as_value(value), error_estimate=error,
                            evaluations=evaluations, status=STATUS_NOT_CONVERGED,
                            levels=spec.max_levels)


def _line_samples(F: Integrand, a: float, tau: np.ndarray) -> np.ndarray:
    with np.errstate(all="ignore"):
        values = np.asarray(F(a + 1j * tau), dtype=complex)
        if values.ndim == 0:
            values = np.full(tau.shape, values, dtype=complex)
    if values.shape != tau.shape:
        raise ParameterError(f"被积函数返回形状 {values.shape}，应为 {tau.shape}")
    return values


def estimate_line_tail(tau: np.ndarray, samples: np.ndarray, halfheight: float) -> float:
    """用 |τ| ∈ [0.9T, T] 的样本拟合 log|F| = log C - κ|τ|，估计 |τ| > T 部分（含 1/2π）"""
    tail = 0.0
    for side in (1.0, -1.0):
        mask = side * tau >= (1.0 - _TAIL_FRACTION) * halfheight
        heights = np.abs(tau[mask])
        magnitudes = np.abs(samples[mask])
        keep = magnitudes > 0.0
        if not np.any(keep):
            continue
        if np.count_nonzero(keep) < 2:
            # 只剩一个非零样本，按最后一段宽度粗略估计
            tail += float(magnitudes[keep].max()) * _TAIL_FRACTION * halfheight
            continue
        slope, intercept = np.polyfit(heights[keep], np.log(magnitudes[keep]), 1)
        kappa = -float(slope)
        if kappa <= 0.0:
            return math.inf
        exponent = float(intercept) - kappa * halfheight
        tail += math.exp(min(exponent, 700.0)) / kappa
    return tail / (2.0 * math.pi)


def integrate_vertical_line(F: Integrand, a: float,
                            spec: Optional[QuadratureSpec] = None) -> QuadratureResult:
    """计算 (1/2πi)∫_{(a)} F(s) ds = (1/2π)∫_{-T}^{T} F(a+iτ) dτ。

    F 接收复数组 s = a + iτ。梯形公式逐层加密；收敛后用最后一段样本
    拟合尾部并计入误差估计，尾部超过容差时状态为 tail_dominated。
    """
    spec = spec or QuadratureSpec()
    halfheight = float(spec.line_halfheight)
    panels = _LINE_INITIAL_PANELS
    h = 2.0 * halfheight / panels

    tau = -halfheight + h * np.arange(panels + 1, dtype=float)
    samples = _line_samples(F, a, tau)
    evaluations = tau.size
    if not np.all(np.isfinite(samples)):
        return QuadratureResult(value=complex("nan"), error_estimate=math.inf,
                                evaluations=evaluations, status=STATUS_NONFINITE, levels=1)

    total = samples.sum() - 0.5 * (samples[0] + samples[-1])
    abs_total = float(np.abs(samples).sum())
    value = h * total / (2.0 * math.pi)
    all_tau, all_samples = [tau], [samples]
    error = math.inf

    for level in range(1, spec.max_levels):
        h *= 0.5
        panels *= 2
        tau_new = -halfheight + h * (2 * np.arange(panels // 2, dtype=float) + 1)
        samples = _line_samples(F, a, tau_new)
        evaluations += tau_new.size
        if not np.all(np.isfinite(samples)):
            return QuadratureResult(value=complex(value), error_estimate=math.inf,
                                    evaluations=evaluations, status=STATUS_NONFINITE,
                                    levels=level + 1)

        all_tau.append(tau_new)
        all_samples.append(samples)
        total = total + samples.sum()
        abs_total += float(np.abs(samples).sum())
        previous, value = value, h * total / (2.0 * math.pi)

        roundoff = _ROUNDOFF * h * abs_total / (2.0 * math.pi)
        error = max(abs(value - previous), roundoff)
        if level + 1 < MIN_LEVELS or error > spec.tolerance(abs(value)):
            continue

        tail = estimate_line_tail(np.concatenate(all_tau), np.concatenate(all_samples), halfheight)
        status = STATUS_CONVERGED
        if tail > spec.tolerance(abs(value)):
            status = STATUS_TAIL_DOMINATED
        return QuadratureResult(value=complex(value), error_estimate=error + tail,
                                evaluations=evaluations, status=status,
                                levels=level + 1, tail_estimate=tail)

    return QuadratureResult(value=complex(value), error_estimate=error,
                            evaluations=evaluations, status=STATUS_NOT_CONVERGED,
                            levels=spec.max_levels)
