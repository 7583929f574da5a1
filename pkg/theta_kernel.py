"""
theta_kernel.py - 自倒数核 H̄(t) 与 Mellin 变换

功能：
- H̄(t) = 2t²·Σ_{n≥1}(2π²n⁴t² - 3πn²)·e^{-πn²t²} 的截断求和，带严格尾项上界
- t < 1 时通过 H̄(t) = t^{-1}·H̄(1/t) 在 1/t > 1 处求和
- 自倒数残差：两侧都直接求和，不走反射
- 任意核的数值 Mellin 变换，H̄ 的 Mellin 变换应等于 ξ(s)
"""

import math
from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np

from config import DEFAULT_SERIES_ABS_TOL, DEFAULT_SERIES_N_MAX
from errors import ParameterError, TruncationError
from quadrature import QuadratureResult, QuadratureSpec, integrate_semi_infinite

Kernel = Callable[[np.ndarray], np.ndarray]

# e^{-745} 以下双精度下溢为 0
_EXP_UNDERFLOW = 745.0
_PI2 = math.pi * math.pi
# 直接求和在 t ≈ 1/8 时需要约 35 项
_DIRECT_N_MAX = 400


@dataclass(frozen=True)
class KernelSeriesParams:
    """H̄ 级数截断参数"""
    abs_tol: float = DEFAULT_SERIES_ABS_TOL
    n_max: int = DEFAULT_SERIES_N_MAX

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise ParameterError(f"abs_tol 必须为正: {self.abs_tol}")
        if int(self.n_max) != self.n_max or self.n_max < 1:
            raise ParameterError(f"n_max 至少为 1: {self.n_max}")


def _dominating_term(t: float, n: int) -> float:
    """|term_n(t)| ≤ 2t²(2π²n⁴t² + 3πn²)e^{-πn²t²}"""
    exponent = math.pi * n * n * t * t
    if exponent > _EXP_UNDERFLOW:
        return 0.0
    return 2.0 * t * t * (2.0 * _PI2 * n ** 4 * t * t + 3.0 * math.pi * n * n) * math.exp(-exponent)


def hbar_tail_bound(t: float, n_terms: int) -> float:
    """Σ_{n>N} |term_n(t)| 的上界。

    相邻控制项之比不超过 ((n+1)/n)⁴·e^{-π(2n+1)t²}，且随 n 递减；
    比值小于 1/2 之前的项逐项累加，之后用几何级数收尾。
    """
    if not t > 0:
        raise ParameterError(f"t 必须为正: {t}")
    if n_terms < 1:
        raise ParameterError(f"N 至少为 1: {n_terms}")

    bound = 0.0
    n = int(n_terms) + 1
    while True:
        term = _dominating_term(t, n)
        if term == 0.0:
            return bound
        ratio = ((n + 1) / n) ** 4 * math.exp(-math.pi * (2 * n + 1) * t * t)
        if ratio < 0.5:
            return bound + term / (1.0 - ratio)
        bound += term
        n += 1


def _terms_needed(t: float, target: float, n_max: int) -> int:
    n_terms = 1
    while hbar_tail_bound(t, n_terms) >= target:
        n_terms += 1
        if n_terms > n_max:
            raise TruncationError(
                f"H̄({t}) 在 n_max={n_max} 项内达不到尾项容差 {target:.1e}")
    return n_terms


def hbar_direct(t: float, params: Optional[KernelSeriesParams] = None) -> float:
    """直接对级数求和（不使用反射），按 n 升序，fsum 避免小 t 时的抵消误差"""
    if not t > 0:
        raise ParameterError(f"t 必须为正: {t}")
    params = params or KernelSeriesParams(n_max=_DIRECT_N_MAX)
    t = float(t)
    if math.pi * t * t > _EXP_UNDERFLOW:
        return 0.0

    n_terms = _terms_needed(t, params.abs_tol, params.n_max)
    t2 = t * t
    terms = []
    for n in range(1, n_terms + 1):
        n2 = n * n
        terms.append(2.0 * t2 * (2.0 * _PI2 * n2 * n2 * t2 - 3.0 * math.pi * n2)
                     * math.exp(-math.pi * n2 * t2))
    return math.fsum(terms)


def _hbar_values(t: np.ndarray, params: KernelSeriesParams) -> np.ndarray:
    w = np.where(t < 1.0, 1.0 / t, t)
    scale = np.where(t < 1.0, w, 1.0)
    out = np.zeros(t.shape, dtype=float)

    live = math.pi * w * w <= _EXP_UNDERFLOW
    if not np.any(live):
        return out

    w_live = w[live]
    w_min = float(w_live.min())
    # 反射把误差放大 w 倍；w·tail(w) 在 w ≥ 1 上递减，按最小的 w 取项数即可
    n_terms = _terms_needed(w_min, params.abs_tol / w_min, params.n_max)

    n2 = np.arange(1, n_terms + 1, dtype=float) ** 2
    w2 = (w_live * w_live)[:, None]
    terms = 2.0 * w2 * (2.0 * _PI2 * n2 * n2 * w2 - 3.0 * math.pi * n2) * np.exp(-math.pi * n2 * w2)
    out[live] = scale[live] * terms.sum(axis=1)
    return out


def hbar(t: Union[float, np.ndarray],
         params: Optional[KernelSeriesParams] = None) -> Union[float, np.ndarray]:
    """H̄(t)，t < 1 时在 1/t 处求和再乘以 1/t"""
    params = params or KernelSeriesParams()
    t_arr = np.asarray(t, dtype=float)
    ts = t_arr.ravel()
    if not np.all(ts > 0):
        raise ParameterError("H̄(t) 要求 t > 0")

    values = _hbar_values(ts, params)
    if t_arr.ndim == 0:
        return float(values[0])
    return values.reshape(t_arr.shape)


def selfdual_residual(t: float, params: Optional[KernelSeriesParams] = None) -> float:
    """|H̄(t) - t^{-1}·H̄(1/t)|，两侧都直接求和"""
    if not t > 0:
        raise ParameterError(f"t 必须为正: {t}")
    params = params or KernelSeriesParams(n_max=_DIRECT_N_MAX)
    return abs(hbar_direct(t, params) - hbar_direct(1.0 / t, params) / t)


def mellin_transform(kernel: Kernel, s: Union[complex, np.ndarray],
                     quad: Optional[QuadratureSpec] = None) -> QuadratureResult:
    """∫_0^∞ t^{s-1}·kernel(t) dt，s 可以是标量或数组（数组时一次积分所有分量）"""
    s_arr = np.asarray(s, dtype=complex)
    s_flat = s_arr.ravel()
    scalar = s_arr.ndim == 0

    def integrand(u: np.ndarray) -> np.ndarray:
        weights = np.asarray(kernel(u))
        log_u = np.log(u)
        if scalar:
            powers = np.exp((s_flat[0] - 1.0) * log_u)
            return np.where(weights == 0, 0.0, powers * weights)
        powers = np.exp(np.multiply.outer(log_u, s_flat - 1.0))
        column = weights[:, None]
        return np.where(column == 0, 0.0, powers * column)

    result = integrate_semi_infinite(integrand, quad)
    if not scalar:
        result.value = np.asarray(result.value).reshape(s_arr.shape)
    return result


def mellin_hbar(s: Union[complex, np.ndarray], quad: Optional[QuadratureSpec] = None,
                params: Optional[KernelSeriesParams] = None) -> Union[complex, np.ndarray]:
    """∫_0^∞ t^{s-1}·H̄(t) dt，理论上等于 ξ(s)"""
    result = mellin_transform(lambda u: hbar(u, params), s, quad)
    result.raise_if_failed(f"H̄ 的 Mellin 变换 (s={s})")
    return result.value
