"""
feq_solver.py - 函数方程 f(z,y+x) + z·f(z,y) = z·g(y) 的 Mellin 解与各项验证

功能：
- 实轴表示 f = ∫_0^∞ K(u^x)·u^{-y}·H(u) du，K(w) = zw/(1+zw)（u = t^{1/x} 代换后的形式）
- 未代换的 t 形式，用于核对变量替换
- 围道表示 f = (1/2πi)∫_{(a)} g(y+xs)·(-π/sin πs)·z^{-s} ds，-1 < a < 0
- 函数方程残差、留数（移线）检查、零点处的 RH 判据残差及非零点对照
- ξ 在圆周 |s| = R 上的增长包络拟合（诊断用）
- 合成自倒数核 H₀(t) = t^{-1/2}e^{-(t+1/t)} 的端到端验证
- 全部验收检查的汇总
"""

import math
from dataclasses import dataclass, field, replace
from functools import partial
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from config import (
    DEFAULT_ABSCISSA, EQUIVALENCE_TOLERANCE, FEQ_TOLERANCE, KERNEL_PAIR_TOLERANCE,
    MELLIN_TOLERANCE, OFF_ZERO_FLOOR, RESIDUE_TOLERANCE, RH_TOLERANCE,
    SELFDUAL_TOLERANCE, SUPPORTED_X_MAX, SYNTHETIC_TOLERANCE, TOLERANCE_SAFETY_FACTOR,
)
from errors import ParameterError
from quadrature import (
    QuadratureResult, QuadratureSpec, integrate_semi_infinite, integrate_vertical_line,
)
from reporting import log_step, log_verbose, log_warning
from special_functions import ZetaZero, find_zeta_zeros, xi
from theta_kernel import hbar, mellin_transform, selfdual_residual

Kernel = Callable[[np.ndarray], np.ndarray]
MellinFunction = Callable[[np.ndarray], np.ndarray]
Stage = Callable[[], List["ResidualReport"]]

_TINY = np.finfo(float).tiny
# RH 残差灵敏度的差分步长（沿临界线方向）
_SENSITIVITY_STEP = 1e-3
_MIN_CIRCLE_SAMPLES = 8
_DELTA_FLOOR = 1e-12

# 验收网格
ACCEPTANCE_Z = (0.5 + 0j, 1 + 0j, 2 + 0j, 1 + 1j)
ACCEPTANCE_Y = (0.3 + 0j, 2 + 0j, 0.5 + 3j)
ACCEPTANCE_X = (0.25, 0.5, 1.0)
RESIDUE_INVARIANCE_Z = (1 + 0j, 3 + 0j)
RH_Z = (1 + 0j, 2 + 1j)
RH_X = (0.25, 0.5)
RH_ZERO_COUNT = 5
RH_SCAN_RANGE = (0.0, 35.0)
FIRST_ZERO = 14.134725141734693
FIRST_ZERO_TOLERANCE = 1e-5
OFF_ZERO_Y = 0.5 + 15j
KERNEL_PAIR_POINTS = (-0.5 + 0j, -0.5 + 1j)
SELFDUAL_POINTS = (0.125, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0)
MELLIN_POINTS = (0j, 1 + 0j, 2 + 0j, 0.5 + 0j, 0.5 + 3j, -1 + 0j, 0.5 + 14.134725j)
GROWTH_RADII = (5.0, 10.0, 15.0)
GROWTH_CHECK_RADII = (30.0,)
GROWTH_SAMPLES = 64


@dataclass(frozen=True)
class SolverParams:
    """求解参数：z 不在负实轴 (-∞, 0] 上，x > 0，-1 < a < 0"""
    z: complex
    y: complex
    x: float
    a: float = DEFAULT_ABSCISSA

    def __post_init__(self):
        object.__setattr__(self, "z", complex(self.z))
        object.__setattr__(self, "y", complex(self.y))
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "a", float(self.a))

        if not self.x > 0:
            raise ParameterError(f"步长 x 必须为正: {self.x}")
        if not -1.0 < self.a < 0.0:
            raise ParameterError(f"围道横坐标 a 必须在 (-1, 0) 内: {self.a}")
        if self.z.imag == 0.0 and self.z.real <= 0.0:
            raise ParameterError(f"z 不能落在割线 (-∞, 0] 上: {self.z}")
        if not (math.isfinite(abs(self.z)) and math.isfinite(abs(self.y))):
            raise ParameterError("z、y 必须是有限复数")
        if self.x > SUPPORTED_X_MAX:
            log_warning(f"⚠️  x={self.x} 超出支持范围 (0, {SUPPORTED_X_MAX}]，只靠积分误差估计保证收敛")

    @property
    def log_z(self) -> complex:
        """主支 Log z"""
        return complex(np.log(self.z))

    def with_y(self, y: complex) -> "SolverParams":
        return replace(self, y=y)


@dataclass
class GrowthEnvelope:
    """log max_{|s|=R} |ξ(s)| ≈ log A + r·R 的拟合结果，δ 使包络覆盖所有拟合半径"""
    A: float
    r: float
    delta: float
    radii_sampled: List[float]
    max_violation_radius: Optional[float] = None
    log_maxima: List[float] = field(default_factory=list)
    argmax_angles: List[float] = field(default_factory=list)
    fit_rms: float = 0.0
    check_radii: List[float] = field(default_factory=list)

    def __post_init__(self):
        for name in ("A", "r", "delta"):
            value = getattr(self, name)
            if not value > 0:
                raise ParameterError(f"增长包络参数 {name} 必须为正: {value}")

    def log_bound(self, radius: float) -> float:
        """log(A·e^{(r+δ)R})"""
        return math.log(self.A) + (self.r + self.delta) * radius


@dataclass
class ResidualReport:
    """一项恒等式检查的结果"""
    identity_name: str
    params: Optional[SolverParams]
    residual: float
    tolerance: float
    evaluations: int = 0
    representation: str = ""
    value: Optional[complex] = None
    error_estimate: float = 0.0
    s: Optional[complex] = None
    t: Optional[float] = None
    # 被检验量的量级，例如零点处的 |z·f̄(z,ρ)|
    scale: Optional[float] = None
    passed: bool = field(init=False)

    def __post_init__(self):
        # NaN 残差视为未通过
        self.passed = bool(self.residual <= self.tolerance)


def _composed_tolerance(floor: float, *errors: float) -> float:
    return max(floor, TOLERANCE_SAFETY_FACTOR * sum(errors))


# ---------------------------------------------------------------------------
# 两种表示
# ---------------------------------------------------------------------------

def _kernel_factor(log_w: np.ndarray, log_z: complex) -> np.ndarray:
    """K(w) = zw/(1+zw)，按 |zw| 与 1 的大小选择不溢出的写法"""
    exponent = log_z + log_w
    small = exponent.real < 0.0
    ratio = np.exp(np.where(small, exponent, -exponent))
    return np.where(small, ratio / (1.0 + ratio), 1.0 / (1.0 + ratio))


def _real_rep_result(p: SolverParams, quad: Optional[QuadratureSpec],
                     kernel: Optional[Kernel] = None) -> QuadratureResult:
    kernel = kernel or hbar
    log_z = p.log_z

    def integrand(u: np.ndarray) -> np.ndarray:
        weights = np.asarray(kernel(u))
        log_u = np.log(u)
        values = _kernel_factor(p.x * log_u, log_z) * np.exp(-p.y * log_u) * weights
        return np.where(weights == 0, 0.0, values)

    result = integrate_semi_infinite(integrand, quad)
    result.raise_if_failed(f"实轴表示 f(z={p.z}, y={p.y}, x={p.x})")
    return result


def f_real_rep(p: SolverParams, quad: Optional[QuadratureSpec] = None,
               kernel: Optional[Kernel] = None) -> complex:
    """f(z,y) = ∫_0^∞ (z·u^x/(1+z·u^x))·u^{-y}·H(u) du，H 默认 H̄"""
    return _real_rep_result(p, quad, kernel).value


def f_real_rep_raw(p: SolverParams, quad: Optional[QuadratureSpec] = None,
                   kernel: Optional[Kernel] = None) -> complex:
    """未代换形式 (1/x)∫_0^∞ (zt/(zt+1))·t^{-y/x+1/x-1}·H(t^{1/x}) dt"""
    kernel = kernel or hbar
    log_z = p.log_z
    power = (1.0 - p.y) / p.x - 1.0

    def integrand(t: np.ndarray) -> np.ndarray:
        log_t = np.log(t)
        # x 较小时 t^{1/x} 可能下溢到 0，H 在该处本已为 0
        weights = np.asarray(kernel(np.maximum(np.exp(log_t / p.x), _TINY)))
        values = _kernel_factor(log_t, log_z) * np.exp(power * log_t) * weights / p.x
        return np.where(weights == 0, 0.0, values)

    result = integrate_semi_infinite(integrand, quad)
    result.raise_if_failed(f"t 形式实轴表示 f(z={p.z}, y={p.y}, x={p.x})")
    return result.value


def _contour_integrand(p: SolverParams, g: MellinFunction, sign: float) -> Callable:
    log_z = p.log_z

    def integrand(s: np.ndarray) -> np.ndarray:
        return sign * np.asarray(g(p.y + p.x * s)) * (np.pi / np.sin(np.pi * s)) * np.exp(-s * log_z)

    return integrand


def _contour_rep_result(p: SolverParams, quad: Optional[QuadratureSpec],
                        g: Optional[MellinFunction] = None) -> QuadratureResult:
    result = integrate_vertical_line(_contour_integrand(p, g or xi, -1.0), p.a, quad)
    result.raise_if_failed(f"围道表示 f(z={p.z}, y={p.y}, x={p.x}, a={p.a})")
    return result


def f_contour_rep(p: SolverParams, quad: Optional[QuadratureSpec] = None,
                  g: Optional[MellinFunction] = None) -> complex:
    """f(z,y) = -(1/2πi)∫_{(a)} g(y+xs)·(π/sin πs)·z^{-s} ds，z^{-s} 取主支，g 默认 ξ"""
    return _contour_rep_result(p, quad, g).value


# ---------------------------------------------------------------------------
# 恒等式检查
# ---------------------------------------------------------------------------

def _combination(p: SolverParams, quad: Optional[QuadratureSpec],
                 kernel: Optional[Kernel] = None):
    """f(z,y+x) + z·f(z,y)，返回 (值, 误差估计, 求值次数, |z·f(z,y)|)"""
    shifted = _real_rep_result(p.with_y(p.y + p.x), quad, kernel)
    base = _real_rep_result(p, quad, kernel)
    value = shifted.value + p.z * base.value
    error = shifted.error_estimate + abs(p.z) * base.error_estimate
    return value, error, shifted.evaluations + base.evaluations, abs(p.z * base.value)


def feq_residual(p: SolverParams, quad: Optional[QuadratureSpec] = None,
                 kernel: Optional[Kernel] = None, g: Optional[MellinFunction] = None,
                 floor: float = FEQ_TOLERANCE) -> ResidualReport:
    """|f(z,y+x) + z·f(z,y) - z·g(y)|，两次都用实轴表示"""
    value, error, evaluations, _ = _combination(p, quad, kernel)
    target = p.z * complex(np.asarray((g or xi)(p.y)))
    residual = abs(value - target)
    log_verbose(f"函数方程 z={p.z}, y={p.y}, x={p.x}: 残差 {residual:.3e}")
    return ResidualReport(
        identity_name="functional_equation", params=p, residual=residual,
        tolerance=_composed_tolerance(floor, error), evaluations=evaluations,
        representation="real", value=value, error_estimate=error,
    )


def representation_equivalence(p: SolverParams, quad: Optional[QuadratureSpec] = None,
                               kernel: Optional[Kernel] = None,
                               g: Optional[MellinFunction] = None,
                               floor: float = EQUIVALENCE_TOLERANCE) -> ResidualReport:
    """|f_real - f_contour|，容差相对 1 + |f_real|"""
    real = _real_rep_result(p, quad, kernel)
    contour = _contour_rep_result(p, quad, g)
    residual = abs(real.value - contour.value)
    error = real.error_estimate + contour.error_estimate
    return ResidualReport(
        identity_name="representation_equivalence", params=p, residual=residual,
        tolerance=_composed_tolerance(floor * (1.0 + abs(real.value)), error),
        evaluations=real.evaluations + contour.evaluations,
        representation="real+contour", value=real.value, error_estimate=error,
    )


def contour_shift_residue_check(p: SolverParams, quad: Optional[QuadratureSpec] = None,
                                g: Optional[MellinFunction] = None) -> ResidualReport:
    """(1/2πi)(I_{a+1} - I_a) 应等于 s = 0 处的留数 g(y)，其中
    I_c = ∫_{(c)} g(y+xs)·(π/sin πs)·z^{-s} ds；结果与 z 无关"""
    g = g or xi
    integrand = _contour_integrand(p, g, 1.0)
    right = integrate_vertical_line(integrand, p.a + 1.0, quad)
    right.raise_if_failed(f"右侧竖线 ℜs={p.a + 1.0}")
    left = integrate_vertical_line(integrand, p.a, quad)
    left.raise_if_failed(f"左侧竖线 ℜs={p.a}")

    value = right.value - left.value
    residual = abs(value - complex(np.asarray(g(p.y))))
    error = right.error_estimate + left.error_estimate
    return ResidualReport(
        identity_name="contour_shift_residue", params=p, residual=residual,
        tolerance=_composed_tolerance(RESIDUE_TOLERANCE, error),
        evaluations=right.evaluations + left.evaluations,
        representation="contour", value=value, error_estimate=error,
    )


def rh_residual(z: complex, zero: ZetaZero, x: float,
                quad: Optional[QuadratureSpec] = None) -> ResidualReport:
    """|f̄(z,ρ+x) + z·f̄(z,ρ)|，ρ = 1/2 + iγ。

    γ 只定位到区间半宽以内，容差加上 |∂/∂y| × 区间半宽（沿临界线的中心差分）。
    """
    p = SolverParams(z=z, y=zero.rho, x=x)
    value, error, evaluations, scale = _combination(p, quad)

    step = 1j * _SENSITIVITY_STEP
    upper, _, upper_evals, _ = _combination(p.with_y(p.y + step), quad)
    lower, _, lower_evals, _ = _combination(p.with_y(p.y - step), quad)
    slope = abs(upper - lower) / (2.0 * _SENSITIVITY_STEP)
    evaluations += upper_evals + lower_evals

    residual = abs(value)
    tolerance = max(RH_TOLERANCE, TOLERANCE_SAFETY_FACTOR * error + slope * zero.ordinate_error)
    log_verbose(f"RH 判据 γ={zero.gamma:.10f}, z={z}, x={x}: |组合|={residual:.3e}, "
                f"|z·f̄|={scale:.3e}, 灵敏度 {slope:.3e}")
    return ResidualReport(
        identity_name="rh_criterion", params=p, residual=residual, tolerance=tolerance,
        evaluations=evaluations, representation="real", value=value, error_estimate=error,
        scale=scale,
    )


def off_zero_control(z: complex, y: complex, x: float,
                     quad: Optional[QuadratureSpec] = None) -> ResidualReport:
    """非零点对照：|f(z,y+x) + z·f(z,y)| 必须大于下限，否则判据没有区分力。
    residual = max(0, 下限 - |组合|)，容差 0。"""
    p = SolverParams(z=z, y=y, x=x)
    value, error, evaluations, scale = _combination(p, quad)
    residual = max(0.0, OFF_ZERO_FLOOR - abs(value))
    return ResidualReport(
        identity_name="off_zero_control", params=p, residual=residual, tolerance=0.0,
        evaluations=evaluations, representation="real", value=value, error_estimate=error,
        scale=scale,
    )


def kernel_mellin_check(s: complex, quad: Optional[QuadratureSpec] = None) -> ResidualReport:
    """∫_0^∞ t^{s-1}·t/(1+t) dt = -π/sin(πs)，-1 < ℜs < 0"""
    s = complex(s)
    if not -1.0 < s.real < 0.0:
        raise ParameterError(f"Mellin 对只在 -1 < ℜs < 0 成立: s={s}")

    result = mellin_transform(lambda u: u / (1.0 + u), s, quad)
    result.raise_if_failed(f"t/(1+t) 的 Mellin 变换 (s={s})")
    target = -math.pi / complex(np.sin(np.pi * s))
    return ResidualReport(
        identity_name="kernel_mellin_pair", params=None,
        residual=abs(result.value - target),
        tolerance=_composed_tolerance(KERNEL_PAIR_TOLERANCE, result.error_estimate),
        evaluations=result.evaluations, representation="mellin",
        value=result.value, error_estimate=result.error_estimate, s=s,
    )


# ---------------------------------------------------------------------------
# 增长包络
# ---------------------------------------------------------------------------

def _circle_maximum(radius: float, samples: int):
    angles = 2.0 * np.pi * np.arange(samples) / samples
    magnitudes = np.abs(xi(radius * np.exp(1j * angles)))
    k = int(np.argmax(magnitudes))
    return math.log(float(magnitudes[k])), float(angles[k])


def fit_growth_envelope(radii: Sequence[float], samples_per_circle: int,
                        check_radii: Sequence[float] = ()) -> GrowthEnvelope:
    """最小二乘拟合 log max_{|s|=R}|ξ(s)| = log A + r·R。

    δ 取 max(残差/R)，使 A·e^{(r+δ)R} 覆盖全部拟合半径；拟合后再采样
    check_radii，最小的被超出的半径记为 max_violation_radius。
    """
    radii = [float(r) for r in radii]
    check_radii = sorted(float(r) for r in check_radii)
    if len(radii) < 2:
        raise ParameterError(f"至少需要 2 个半径才能拟合: {radii}")
    if any(r <= 0 for r in radii + check_radii):
        raise ParameterError("半径必须为正")
    if any(later <= earlier for earlier, later in zip(radii, radii[1:])):
        raise ParameterError(f"半径必须严格递增: {radii}")
    if samples_per_circle < _MIN_CIRCLE_SAMPLES:
        raise ParameterError(f"每个圆周至少 {_MIN_CIRCLE_SAMPLES} 个采样点: {samples_per_circle}")

    maxima = [_circle_maximum(r, samples_per_circle) for r in radii]
    log_maxima = np.array([m[0] for m in maxima])
    radii_arr = np.array(radii)

    slope, intercept = np.polyfit(radii_arr, log_maxima, 1)
    if not slope > 0:
        raise ParameterError(f"拟合斜率 r={slope:.3e} 非正，半径范围过小")
    residuals = log_maxima - (intercept + slope * radii_arr)
    delta = max(float(np.max(residuals / radii_arr)), _DELTA_FLOOR)

    envelope = GrowthEnvelope(
        A=math.exp(float(intercept)), r=float(slope), delta=delta,
        radii_sampled=list(radii),
        log_maxima=[float(v) for v in log_maxima],
        argmax_angles=[m[1] for m in maxima],
        fit_rms=float(np.sqrt(np.mean(residuals ** 2))),
        check_radii=list(check_radii),
    )

    for radius in check_radii:
        log_max, angle = _circle_maximum(radius, samples_per_circle)
        envelope.radii_sampled.append(radius)
        envelope.log_maxima.append(log_max)
        envelope.argmax_angles.append(angle)
        excess = log_max - envelope.log_bound(radius)
        if excess > 0 and envelope.max_violation_radius is None:
            envelope.max_violation_radius = radius
            log_warning(f"⚠️  R={radius} 处 max|ξ| 超出拟合包络 e^{excess:.2f} 倍（超指数增长）")
    return envelope


# ---------------------------------------------------------------------------
# 合成核
# ---------------------------------------------------------------------------

def synthetic_kernel(t):
    """H₀(t) = t^{-1/2}·e^{-(t+1/t)}，满足 H₀(t) = t^{-1}·H₀(1/t)"""
    t_arr = np.asarray(t, dtype=float)
    if not np.all(t_arr > 0):
        raise ParameterError("H₀(t) 要求 t > 0")
    with np.errstate(over="ignore"):
        values = np.exp(-0.5 * np.log(t_arr) - (t_arr + 1.0 / t_arr))
    return float(values) if t_arr.ndim == 0 else values


def synthetic_mellin(s, quad: Optional[QuadratureSpec] = None):
    """g₀(s) = ∫_0^∞ t^{s-1}·H₀(t) dt（数值积分，闭式为 2K_{s-1/2}(2)）"""
    result = mellin_transform(synthetic_kernel, s, quad)
    result.raise_if_failed("H₀ 的 Mellin 变换")
    return result.value


def synthetic_kernel_suite(quad: Optional[QuadratureSpec] = None) -> List[ResidualReport]:
    """只依赖一般自倒数核的检查，与 ξ 的数值实现无关"""
    reports = []

    points = np.array(SELFDUAL_POINTS)
    selfdual = np.abs(synthetic_kernel(points) - synthetic_kernel(1.0 / points) / points)
    reports.append(ResidualReport(
        identity_name="synthetic_selfdual", params=None, residual=float(selfdual.max()),
        tolerance=SELFDUAL_TOLERANCE, representation="kernel",
    ))

    pair = mellin_transform(synthetic_kernel, np.array([2.0 + 0j, -1.0 + 0j]), quad)
    pair.raise_if_failed("H₀ 的 Mellin 对称性")
    reports.append(ResidualReport(
        identity_name="synthetic_mellin_symmetry", params=None,
        residual=float(abs(pair.value[0] - pair.value[1])),
        tolerance=_composed_tolerance(1e-10, 2.0 * pair.error_estimate),
        evaluations=pair.evaluations, representation="mellin",
        value=complex(pair.value[0]), error_estimate=pair.error_estimate, s=2 + 0j,
    ))

    g0 = lambda s: synthetic_mellin(s, quad)  # noqa: E731
    p = SolverParams(z=1.0, y=1.0, x=0.5)
    feq = feq_residual(p, quad, kernel=synthetic_kernel, g=g0, floor=SYNTHETIC_TOLERANCE)
    feq.identity_name = "synthetic_functional_equation"
    reports.append(feq)

    equivalence = representation_equivalence(p, quad, kernel=synthetic_kernel, g=g0,
                                             floor=SYNTHETIC_TOLERANCE)
    equivalence.identity_name = "synthetic_representation_equivalence"
    reports.append(equivalence)
    return reports


# ---------------------------------------------------------------------------
# 验收汇总
# ---------------------------------------------------------------------------

def acceptance_grid(a: float = DEFAULT_ABSCISSA) -> List[SolverParams]:
    """z × y × x 验收网格，按 z、y、x 的顺序展开"""
    return [SolverParams(z=z, y=y, x=x, a=a)
            for z in ACCEPTANCE_Z for y in ACCEPTANCE_Y for x in ACCEPTANCE_X]


def kernel_suite(quad: Optional[QuadratureSpec] = None) -> List[ResidualReport]:
    """Mellin 对、H̄ 自倒数性、H̄ 的 Mellin 变换等于 ξ"""
    reports = [kernel_mellin_check(s, quad) for s in KERNEL_PAIR_POINTS]

    for t in SELFDUAL_POINTS:
        residual = selfdual_residual(t)
        reports.append(ResidualReport(
            identity_name="hbar_selfdual", params=None, residual=residual,
            tolerance=SELFDUAL_TOLERANCE * (1.0 + abs(hbar(t))),
            representation="kernel", value=hbar(t), t=t,
        ))

    points = np.array(MELLIN_POINTS)
    result = mellin_transform(hbar, points, quad)
    result.raise_if_failed("H̄ 的 Mellin 变换")
    targets = xi(points)
    for s, value, target in zip(MELLIN_POINTS, result.value, targets):
        reports.append(ResidualReport(
            identity_name="mellin_hbar_xi", params=None, residual=float(abs(value - target)),
            tolerance=_composed_tolerance(MELLIN_TOLERANCE, result.error_estimate),
            evaluations=result.evaluations, representation="mellin",
            value=complex(value), error_estimate=result.error_estimate, s=s,
        ))
    return reports


def residue_invariance(y: complex, x: float, quad: Optional[QuadratureSpec] = None) -> ResidualReport:
    """z = 1 与 z = 3 两次留数检查得到的留数之差"""
    first, second = (contour_shift_residue_check(SolverParams(z=z, y=y, x=x), quad)
                     for z in RESIDUE_INVARIANCE_Z)
    error = first.error_estimate + second.error_estimate
    return ResidualReport(
        identity_name="residue_z_invariance", params=first.params,
        residual=abs(first.value - second.value),
        tolerance=_composed_tolerance(RESIDUE_TOLERANCE, error),
        evaluations=first.evaluations + second.evaluations, representation="contour",
        value=second.value, error_estimate=error,
    )


def rh_suite(quad: Optional[QuadratureSpec] = None) -> List[ResidualReport]:
    """(0, 35) 内的前 5 个零点上的 RH 判据，加上零点计数与非零点对照"""
    zeros = find_zeta_zeros(*RH_SCAN_RANGE)
    reports = [ResidualReport(
        identity_name="zero_count", params=None,
        residual=float(abs(len(zeros) - RH_ZERO_COUNT)), tolerance=0.0,
        representation="scan", value=complex(len(zeros)),
    )]
    if zeros:
        reports.append(ResidualReport(
            identity_name="first_zero", params=None,
            residual=abs(zeros[0].gamma - FIRST_ZERO), tolerance=FIRST_ZERO_TOLERANCE,
            representation="scan", value=complex(zeros[0].gamma),
            error_estimate=zeros[0].ordinate_error, t=zeros[0].gamma,
        ))

    for zero in zeros[:RH_ZERO_COUNT]:
        for z in RH_Z:
            for x in RH_X:
                reports.append(rh_residual(z, zero, x, quad))
    for z in RH_Z:
        for x in RH_X:
            reports.append(off_zero_control(z, OFF_ZERO_Y, x, quad))
    return reports


def growth_report(envelope: GrowthEnvelope) -> ResidualReport:
    """包络在检查半径处被超出即为通过：记录的是假设 |ξ| ≤ A·e^{(r+δ)|s|} 的失效"""
    detected = envelope.max_violation_radius is not None
    return ResidualReport(
        identity_name="growth_violation_detected", params=None,
        residual=0.0 if detected else 1.0, tolerance=0.0, representation="envelope",
        value=complex(envelope.max_violation_radius) if detected else None,
        error_estimate=envelope.fit_rms,
    )


def _single(check: Callable[..., ResidualReport], *args) -> List[ResidualReport]:
    return [check(*args)]


def acceptance_stages(quad: Optional[QuadratureSpec] = None) -> List[Tuple[str, Stage]]:
    """验收检查拆成互不依赖的阶段（名称, 无参函数），便于逐项捕获失败或并行执行"""
    grid = acceptance_grid()
    stages: List[Tuple[str, Stage]] = [("kernel", partial(kernel_suite, quad))]
    stages += [("representation_equivalence", partial(_single, representation_equivalence, p, quad))
               for p in grid]
    stages += [("functional_equation", partial(_single, feq_residual, p, quad)) for p in grid]
    stages += [("contour_shift_residue", partial(_single, contour_shift_residue_check, p, quad))
               for p in grid]
    stages += [("residue_z_invariance", partial(_single, residue_invariance, y, x, quad))
               for y in ACCEPTANCE_Y for x in ACCEPTANCE_X]
    stages.append(("rh_criterion", partial(rh_suite, quad)))
    stages.append(("synthetic_kernel", partial(synthetic_kernel_suite, quad)))
    stages.append(("growth_envelope", lambda: [growth_report(
        fit_growth_envelope(GROWTH_RADII, GROWTH_SAMPLES, GROWTH_CHECK_RADII))]))
    return stages


def acceptance_suite(quad: Optional[QuadratureSpec] = None) -> List[ResidualReport]:
    """按固定顺序运行全部验收检查"""
    reports: List[ResidualReport] = []
    current = None
    for name, stage in acceptance_stages(quad):
        if name != current:
            log_step(f"验收: {name}")
            current = name
        reports.extend(stage())
    return reports
