"""
special_functions.py - 复变 Gamma、Riemann ζ、ξ 函数与临界线零点

功能：
- Lanczos (g=7, 9 项) 复 Gamma 及其对数，ℜ(s) < 1/2 时用反射公式
- Euler–Maclaurin 求和计算 ζ(s)，余项不足时自动加倍主和项数
- ξ(s) = (s-1)·π^{-s/2}·Γ(s/2+1)·ζ(s)，按 ξ(s)=ξ(1-s) 只在 ℜ(s) ≥ 1/2 直接求值
- 临界线 Ξ(t) = ξ(1/2+it)（实值，带虚部检查）
- 变号扫描 + 二分法定位非平凡零点，疑似漏掉的相近零点对给出警告

所有函数既接受标量也接受 numpy 数组：标量进标量出，数组进数组出。
"""

import math
from dataclasses import dataclass, field
from typing import List, Tuple, Union

import numpy as np

from config import (
    CRITICAL_LINE_IMAG_RTOL, DEFAULT_SCAN_STEP, MAX_SCAN_HEIGHT,
    ORDINATE_TOLERANCE, SUSPECT_THRESHOLD, XI_MAX_MODULUS,
    XI_SINGULAR_RADIUS, ZERO_TOLERANCE,
)
from errors import ParameterError, PoleError, PrecisionError, RangeOverflowError
from reporting import log_verbose, log_warning

Number = Union[complex, float, np.ndarray]

_LANCZOS_G = 7.0
_LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
_LOG_PI = math.log(math.pi)
_LOG_MAX = math.log(np.finfo(float).max)

# B_2, B_4, ..., B_30
_BERNOULLI_EVEN = (
    1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0,
    -691.0 / 2730.0, 7.0 / 6.0, -3617.0 / 510.0, 43867.0 / 798.0,
    -174611.0 / 330.0, 854513.0 / 138.0, -236364091.0 / 2730.0,
    8553103.0 / 6.0, -23749461029.0 / 870.0, 8615841276005.0 / 14322.0,
)
_EM_COEFFS = tuple(b / math.factorial(2 * k) for k, b in enumerate(_BERNOULLI_EVEN, start=1))
_EM_TERM_RTOL = 1e-17
_EM_REMAINDER_RTOL = 1e-14
_EM_MAX_DOUBLINGS = 4


def _as_complex_array(s: Number) -> Tuple[np.ndarray, Tuple[int, ...], bool]:
    arr = np.asarray(s, dtype=complex)
    return arr.ravel(), arr.shape, arr.ndim == 0


def _restore(values: np.ndarray, shape: Tuple[int, ...], scalar: bool) -> Number:
    if scalar:
        return complex(values[0])
    return values.reshape(shape)


def _require_finite(values: np.ndarray, name: str) -> None:
    if not np.all(np.isfinite(values)):
        raise RangeOverflowError(f"{name} 超出可表示范围")


# ---------------------------------------------------------------------------
# Gamma
# ---------------------------------------------------------------------------

def _nonpositive_integers(z: np.ndarray) -> np.ndarray:
    return (z.imag == 0.0) & (z.real <= 0.0) & (z.real == np.round(z.real))


def _log_gamma_right(z: np.ndarray) -> np.ndarray:
    """ℜ(z) ≥ 1/2 上的 Lanczos 对数 Gamma"""
    z = z - 1.0
    series = np.full(z.shape, _LANCZOS_COEFFS[0], dtype=complex)
    for i, coeff in enumerate(_LANCZOS_COEFFS[1:], start=1):
        series = series + coeff / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * np.log(t) - t + np.log(series)


def _log_gamma_array(z: np.ndarray) -> np.ndarray:
    out = np.empty(z.shape, dtype=complex)
    right = z.real >= 0.5
    out[right] = _log_gamma_right(z[right])
    left = ~right
    if np.any(left):
        zl = z[left]
        out[left] = _LOG_PI - np.log(np.sin(np.pi * zl)) - _log_gamma_right(1.0 - zl)
    return out


def log_gamma(s: Number) -> Number:
    """log Γ(s)，虚部只保证模 2π 正确（用于求幂）"""
    z, shape, scalar = _as_complex_array(s)
    poles = _nonpositive_integers(z)
    if np.any(poles):
        raise PoleError("Gamma", z[poles][0].real)
    return _restore(_log_gamma_array(z), shape, scalar)


def complex_gamma(s: Number) -> Number:
    """复变量 Γ(s)"""
    z, shape, scalar = _as_complex_array(s)
    poles = _nonpositive_integers(z)
    if np.any(poles):
        raise PoleError("Gamma", z[poles][0].real)

    logs = _log_gamma_array(z)
    if np.any(logs.real > _LOG_MAX):
        raise RangeOverflowError(f"|Γ(s)| 溢出: max ℜ log Γ = {float(logs.real.max()):.1f}")
    values = np.exp(logs)
    _require_finite(values, "Γ(s)")
    return _restore(values, shape, scalar)


def _reciprocal_gamma_array(z: np.ndarray) -> np.ndarray:
    out = np.empty(z.shape, dtype=complex)
    right = z.real >= 0.5
    out[right] = np.exp(-_log_gamma_right(z[right]))
    left = ~right
    if np.any(left):
        zl = z[left]
        out[left] = np.sin(np.pi * zl) / np.pi * np.exp(_log_gamma_right(1.0 - zl))
    out[_nonpositive_integers(z)] = 0.0
    return out


def reciprocal_gamma(s: Number) -> Number:
    """整函数 1/Γ(s)，在非正整数处精确为 0"""
    z, shape, scalar = _as_complex_array(s)
    values = _reciprocal_gamma_array(z)
    _require_finite(values, "1/Γ(s)")
    return _restore(values, shape, scalar)


# ---------------------------------------------------------------------------
# Riemann zeta
# ---------------------------------------------------------------------------

def _euler_maclaurin(s: np.ndarray, n_terms: int) -> Tuple[np.ndarray, np.ndarray]:
    """返回 ζ(s) 的近似值和最后一个修正项的模（余项估计）"""
    log_n = np.log(np.arange(1, n_terms, dtype=float))
    total = np.exp(-np.multiply.outer(s, log_n)).sum(axis=1)

    n_pow = np.exp(-s * math.log(n_terms))
    total = total + n_pow * n_terms / (s - 1.0) + 0.5 * n_pow

    rising = s.copy()
    power = n_pow / n_terms
    remainder = np.zeros(s.shape)
    for k, coeff in enumerate(_EM_COEFFS, start=1):
        term = coeff * rising * power
        total = total + term
        remainder = np.abs(term)
        if np.all(remainder <= _EM_TERM_RTOL * np.maximum(np.abs(total), 1.0)):
            break
        rising = rising * (s + 2 * k - 1) * (s + 2 * k)
        power = power / (n_terms * n_terms)
    return total, remainder


def _zeta_array(s: np.ndarray) -> np.ndarray:
    if s.size == 0:
        return s.copy()
    n_terms = max(10, int(math.ceil(float(np.max(np.abs(s.imag)))))) + 5
    for _ in range(_EM_MAX_DOUBLINGS):
        values, remainder = _euler_maclaurin(s, n_terms)
        if np.all(remainder <= _EM_REMAINDER_RTOL * np.maximum(np.abs(values), 1.0)):
            return values
        n_terms *= 2
    log_verbose(f"ζ 的 Euler–Maclaurin 余项未达目标，N={n_terms // 2}")
    return values


def riemann_zeta(s: Number) -> Number:
    """Riemann ζ(s)。ℜ(s) ≥ -1 直接求和，更左侧经 ξ 的对称性换算"""
    z, shape, scalar = _as_complex_array(s)
    if np.any(z == 1.0):
        raise PoleError("zeta", 1.0)

    out = np.empty(z.shape, dtype=complex)
    direct = z.real >= -1.0
    out[direct] = _zeta_array(z[direct])
    left = ~direct
    if np.any(left):
        zl = z[left]
        # ζ(s) = ξ(1-s)·π^{s/2} / ((s-1)·Γ(s/2+1))
        out[left] = (_xi_array(1.0 - zl) * np.exp(0.5 * zl * _LOG_PI)
                     * _reciprocal_gamma_array(0.5 * zl + 1.0) / (zl - 1.0))
    _require_finite(out, "ζ(s)")
    return _restore(out, shape, scalar)


# ---------------------------------------------------------------------------
# Riemann xi
# ---------------------------------------------------------------------------

def _xi_factors(s: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """ξ(s) = 前因子 × ζ(v)，其中 v 取 s 或 1-s 中 ℜ ≥ 1/2 的一个；
    v 落在 1 的小圆盘内时再换回 1-v（靠近 0，ζ 无极点）。"""
    u = np.where(s.real >= 0.5, s, 1.0 - s)
    near_one = np.abs(u - 1.0) < XI_SINGULAR_RADIUS
    v = np.where(near_one, 1.0 - u, u)

    # ½s(s-1)Γ(s/2) 写成 (s-1)Γ(s/2+1)，s=0 处的极点解析抵消
    log_prefactor = np.log(v - 1.0) - 0.5 * v * _LOG_PI + _log_gamma_array(0.5 * v + 1.0)
    if np.any(log_prefactor.real > _LOG_MAX):
        raise RangeOverflowError("ξ(s) 溢出")
    return np.exp(log_prefactor), _zeta_array(v)


def _xi_array(s: np.ndarray) -> np.ndarray:
    if np.any(np.abs(s) > XI_MAX_MODULUS):
        raise RangeOverflowError(f"|s| 超过 ξ 的配置范围 {XI_MAX_MODULUS}")
    prefactor, zeta = _xi_factors(s)
    values = prefactor * zeta
    _require_finite(values, "ξ(s)")
    return values


def xi(s: Number) -> Number:
    """Riemann ξ(s) = ½s(s-1)π^{-s/2}Γ(s/2)ζ(s)，整函数"""
    z, shape, scalar = _as_complex_array(s)
    return _restore(_xi_array(z), shape, scalar)


def _critical_line(t: Number) -> Tuple[np.ndarray, np.ndarray, Tuple[int, ...], bool]:
    t_arr = np.asarray(t, dtype=float)
    ts = t_arr.ravel()
    if not np.all(np.isfinite(ts)):
        raise ParameterError("t 必须是有限实数")
    s = 0.5 + 1j * ts
    if np.any(np.abs(s) > XI_MAX_MODULUS):
        raise RangeOverflowError(f"|s| 超过 ξ 的配置范围 {XI_MAX_MODULUS}")

    prefactor, zeta = _xi_factors(s)
    values = prefactor * zeta
    _require_finite(values, "Ξ(t)")
    scale = np.maximum(np.abs(values), np.abs(prefactor))
    bad = np.abs(values.imag) > CRITICAL_LINE_IMAG_RTOL * scale
    if np.any(bad):
        worst = int(np.argmax(np.abs(values.imag) / np.where(scale > 0, scale, 1.0)))
        raise PrecisionError(f"Ξ(t) 虚部过大: t={ts[worst]}, Im={values.imag[worst]:.3e}")
    return values.real, np.abs(prefactor), t_arr.shape, t_arr.ndim == 0


def xi_critical_line(t: Number) -> Union[float, np.ndarray]:
    """Ξ(t) = ξ(1/2 + it)，实值"""
    values, _, shape, scalar = _critical_line(t)
    return float(values[0]) if scalar else values.reshape(shape)


def normalized_xi(t: Number) -> Union[float, np.ndarray]:
    """Ξ(t) / |前因子|：与 Ξ 同号，绝对值等于 |ζ(1/2+it)|，去掉了 e^{-πt/4} 的衰减"""
    values, scale, shape, scalar = _critical_line(t)
    normalized = values / scale
    return float(normalized[0]) if scalar else normalized.reshape(shape)


# ---------------------------------------------------------------------------
# 零点扫描
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ZetaZero:
    """临界线上的零点 ρ = 1/2 + iγ"""
    gamma: float
    bracket_lo: float
    bracket_hi: float
    xi_residual: float

    def __post_init__(self):
        if not self.gamma > 0:
            raise ParameterError(f"零点纵坐标必须为正: {self.gamma}")
        if not self.bracket_lo < self.gamma < self.bracket_hi:
            raise ParameterError(
                f"零点不在区间内: {self.bracket_lo} < {self.gamma} < {self.bracket_hi}")
        if not self.xi_residual >= 0:
            raise ParameterError(f"残差必须非负: {self.xi_residual}")

    @property
    def rho(self) -> complex:
        return complex(0.5, self.gamma)

    @property
    def ordinate_error(self) -> float:
        return 0.5 * (self.bracket_hi - self.bracket_lo)


@dataclass
class ZeroScan:
    """一次扫描的结果：零点、疑似漏检位置、网格点数"""
    zeros: List[ZetaZero] = field(default_factory=list)
    suspects: List[float] = field(default_factory=list)
    grid_points: int = 0


def _scan_grid(t_lo: float, t_hi: float, step: float) -> np.ndarray:
    count = int(math.floor((t_hi - t_lo) / step + 1e-9))
    grid = t_lo + step * np.arange(count + 1, dtype=float)
    if grid[-1] < t_hi - 1e-12:
        grid = np.append(grid, t_hi)
    return grid


def _bisect_zero(lo: float, hi: float, lo_value: float, ordinate_tol: float) -> Tuple[float, float]:
    lo_positive = lo_value >= 0.0
    while hi - lo > ordinate_tol:
        mid = 0.5 * (lo + hi)
        if (normalized_xi(mid) >= 0.0) == lo_positive:
            lo = mid
        else:
            hi = mid
    return lo, hi


def scan_critical_line(t_lo: float, t_hi: float, step: float = DEFAULT_SCAN_STEP,
                       ordinate_tol: float = ORDINATE_TOLERANCE,
                       zero_tol: float = ZERO_TOLERANCE) -> ZeroScan:
    """在 [t_lo, t_hi] 上按步长扫描 Ξ 的变号并二分细化"""
    if not (0.0 <= t_lo < t_hi):
        raise ParameterError(f"扫描区间无效: [{t_lo}, {t_hi}]")
    if not step > 0:
        raise ParameterError(f"扫描步长必须为正: {step}")
    if t_hi > MAX_SCAN_HEIGHT:
        log_warning(f"⚠️  t_hi={t_hi} 超过 {MAX_SCAN_HEIGHT}，Euler–Maclaurin 求值会变慢且不在支持范围内")

    grid = _scan_grid(t_lo, t_hi, step)
    values = np.asarray(normalized_xi(grid), dtype=float)
    positive = values >= 0.0
    scan = ZeroScan(grid_points=int(grid.size))

    for i in range(grid.size - 1):
        if positive[i] == positive[i + 1]:
            continue
        lo, hi = _bisect_zero(float(grid[i]), float(grid[i + 1]), float(values[i]), ordinate_tol)
        gamma = 0.5 * (lo + hi)
        residual = abs(xi_critical_line(gamma))
        if residual > zero_tol:
            raise PrecisionError(f"零点 γ≈{gamma:.10f} 处 |Ξ|={residual:.3e} 超过容差 {zero_tol:.1e}")
        scan.zeros.append(ZetaZero(gamma=gamma, bracket_lo=lo, bracket_hi=hi, xi_residual=residual))
        log_verbose(f"🎯 零点 γ = {gamma:.10f}，区间 [{lo:.12f}, {hi:.12f}]")

    magnitudes = np.abs(values)
    for i in range(1, grid.size - 1):
        same_sign = positive[i - 1] == positive[i] == positive[i + 1]
        local_min = magnitudes[i] < magnitudes[i - 1] and magnitudes[i] < magnitudes[i + 1]
        if same_sign and local_min and magnitudes[i] < SUSPECT_THRESHOLD:
            scan.suspects.append(float(grid[i]))
            log_warning(f"⚠️  t≈{grid[i]:.4f} 处 |Ξ| 出现局部极小但未变号，"
                        f"可能漏掉一对相近零点，请减小步长 (当前 {step})")
    return scan


def find_zeta_zeros(t_lo: float, t_hi: float, step: float = DEFAULT_SCAN_STEP) -> List[ZetaZero]:
    """返回 [t_lo, t_hi] 内按纵坐标升序排列的零点"""
    return scan_critical_line(t_lo, t_hi, step).zeros
