#!/usr/bin/env python3
"""
cli.py - 命令行入口

功能：
- eval-xi / eval-kernel：计算 ξ(s) 与 H̄(t)
- verify-kernel / verify-equivalence / verify-feq / verify-residue / verify-rh：各项恒等式检查
- find-zeros：定位临界线零点
- fit-growth：ξ 的增长包络诊断
- suite：完整验收
每次求值输出一条记录（CSV 或 JSON-lines），状态信息输出到 stderr。
退出码：0 全部通过，1 数值失败或检查未通过，2 用法错误。
"""

import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

import click
import numpy as np

from config import (
    DEFAULT_ABSCISSA, DEFAULT_SCAN_STEP, MAX_SCAN_HEIGHT, SELFDUAL_TOLERANCE,
    ZERO_TOLERANCE, load_config, save_config,
)
from errors import FeqError, ParameterError, TruncationError
from feq_solver import (
    GROWTH_CHECK_RADII, GROWTH_RADII, GROWTH_SAMPLES, RH_SCAN_RANGE,
    ResidualReport, SolverParams, acceptance_stages, contour_shift_residue_check,
    feq_residual, fit_growth_envelope, growth_report, kernel_suite,
    representation_equivalence, rh_residual,
)
from quadrature import QuadratureSpec
from reporting import (
    OUTPUT_FORMATS, log_error, log_info, log_step, log_success, log_warning,
    make_record, set_verbose, write_records,
)
from special_functions import ZetaZero, scan_critical_line, xi
from theta_kernel import hbar, selfdual_residual

COMMANDS = (
    "eval-xi", "eval-kernel", "verify-kernel", "verify-equivalence", "verify-feq",
    "verify-residue", "verify-rh", "find-zeros", "fit-growth", "suite",
)

# 零点扫描默认区间；verify-rh 零点不够时按此宽度继续向上扫描
FIND_ZEROS_RANGE = (0.0, 50.0)
_RH_SCAN_CHUNK = 25.0


def parse_complex(text) -> complex:
    """解析 "re+imi" 形式的复数，也接受数值"""
    if isinstance(text, (int, float, complex)) and not isinstance(text, bool):
        return complex(text)
    cleaned = str(text).strip().replace(" ", "").replace("i", "j")
    try:
        return complex(cleaned)
    except ValueError:
        raise ParameterError(f"无法解析复数: {text!r}")


def format_complex(value: complex) -> str:
    """parse_complex 的逆过程，17 位有效数字"""
    value = complex(value)
    return f"{value.real:.17g}{value.imag:+.17g}i"


def _split(value) -> list:
    if isinstance(value, str):
        return [item for item in value.split(",") if item.strip()]
    if isinstance(value, (list, tuple)):
        return list(value)
    return [value]


def parse_complex_list(value) -> List[complex]:
    return [parse_complex(item) for item in _split(value)]


def parse_float_list(value) -> List[float]:
    try:
        return [float(item) for item in _split(value)]
    except (TypeError, ValueError):
        raise ParameterError(f"无法解析实数列表: {value!r}")


def parse_range(value) -> Tuple[float, float]:
    """解析 "LO:HI"，也接受二元列表"""
    parts = value.split(":") if isinstance(value, str) else list(value)
    try:
        lo, hi = (float(part) for part in parts)
    except (TypeError, ValueError):
        raise ParameterError(f"区间格式应为 LO:HI: {value!r}")
    if not lo < hi:
        raise ParameterError(f"区间下限必须小于上限: {value!r}")
    return lo, hi


@dataclass
class RunConfig:
    """一次命令行运行的完整配置"""
    command: str
    z: List[complex] = field(default_factory=lambda: [1 + 0j])
    y: List[complex] = field(default_factory=lambda: [2 + 0j])
    x: List[float] = field(default_factory=lambda: [0.5])
    a: float = DEFAULT_ABSCISSA
    quad: QuadratureSpec = field(default_factory=QuadratureSpec)
    output_format: str = "csv"
    output_path: Optional[str] = None
    s: List[complex] = field(default_factory=lambda: [0j])
    t: List[float] = field(default_factory=lambda: [1.0])
    zeros: int = 5
    t_range: Optional[Tuple[float, float]] = None
    step: float = DEFAULT_SCAN_STEP
    radii: List[float] = field(default_factory=lambda: list(GROWTH_RADII))
    check_radii: List[float] = field(default_factory=lambda: list(GROWTH_CHECK_RADII))
    samples: int = GROWTH_SAMPLES
    jobs: int = 1

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ParameterError(f"未知命令: {self.command}")
        for name in ("z", "y", "x", "s", "t", "radii"):
            if not getattr(self, name):
                raise ParameterError(f"参数网格 {name} 不能为空")
        if self.output_format not in OUTPUT_FORMATS:
            raise ParameterError(f"不支持的输出格式: {self.output_format}")
        if self.zeros < 1:
            raise ParameterError(f"--zeros 至少为 1: {self.zeros}")
        if self.jobs < 1:
            raise ParameterError(f"--jobs 至少为 1: {self.jobs}")
        if not self.step > 0:
            raise ParameterError(f"扫描步长必须为正: {self.step}")

    def to_dict(self) -> Dict:
        return {
            "command": self.command,
            "z": [format_complex(v) for v in self.z],
            "y": [format_complex(v) for v in self.y],
            "x": list(self.x),
            "a": self.a,
            "quad": self.quad.to_dict(),
            "output_format": self.output_format,
            "output_path": self.output_path,
            "s": [format_complex(v) for v in self.s],
            "t": list(self.t),
            "zeros": self.zeros,
            "t_range": list(self.t_range) if self.t_range else None,
            "step": self.step,
            "radii": list(self.radii),
            "check_radii": list(self.check_radii),
            "samples": self.samples,
            "jobs": self.jobs,
        }

    @classmethod
    def from_dict(cls, data: Dict) -> "RunConfig":
        kwargs = {"command": data["command"]}
        parsers = {
            "z": parse_complex_list, "y": parse_complex_list, "s": parse_complex_list,
            "x": parse_float_list, "t": parse_float_list,
            "radii": parse_float_list, "check_radii": parse_float_list,
            "a": float, "step": float, "zeros": int, "samples": int, "jobs": int,
            "output_format": str,
        }
        for key, parse in parsers.items():
            if data.get(key) is not None:
                kwargs[key] = parse(data[key])
        if data.get("t_range") is not None:
            kwargs["t_range"] = parse_range(data["t_range"])
        if data.get("output_path"):
            kwargs["output_path"] = data["output_path"]
        if data.get("quad") is not None:
            kwargs["quad"] = QuadratureSpec.from_dict(data["quad"])
        return cls(**kwargs)


# ---------------------------------------------------------------------------
# 记录
# ---------------------------------------------------------------------------

def _complex_fields(prefix: str, value) -> Dict:
    if value is None:
        return {}
    value = complex(value)
    return {f"{prefix}_re": value.real, f"{prefix}_im": value.imag}


def _param_fields(p: Optional[SolverParams]) -> Dict:
    if p is None:
        return {}
    fields = {"x": p.x, "a": p.a}
    fields.update(_complex_fields("z", p.z))
    fields.update(_complex_fields("y", p.y))
    return fields


def report_record(command: str, report: ResidualReport) -> Dict:
    """ResidualReport → 输出记录"""
    fields = _param_fields(report.params)
    fields.update(_complex_fields("s", report.s))
    fields.update(_complex_fields("value", report.value))
    return make_record(
        command, identity=report.identity_name, t=report.t,
        residual=report.residual, tolerance=report.tolerance, scale=report.scale,
        error_estimate=report.error_estimate, evaluations=report.evaluations,
        passed=report.passed, **fields,
    )


@dataclass
class Cell:
    """网格中的一个求值单元；失败时用 inputs 生成带错误信息的记录"""
    identity: str
    compute: Callable[[], List[Dict]]
    inputs: Dict = field(default_factory=dict)


def _execute(command: str, cell: Cell) -> List[Dict]:
    start = time.perf_counter()
    try:
        records = cell.compute()
    except FeqError as e:
        log_error(f"❌ {cell.identity} 失败: {e}")
        records = [make_record(command, identity=cell.identity, passed=False,
                               error=f"{type(e).__name__}: {e}", **cell.inputs)]
    elapsed = time.perf_counter() - start
    for record in records:
        record["wall_time"] = elapsed
    return records


def execute_cells(command: str, cells: List[Cell], jobs: int = 1) -> List[Dict]:
    """执行所有单元，记录按网格顺序返回（并行时同样如此）"""
    if jobs > 1 and len(cells) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as executor:
            batches = list(executor.map(lambda cell: _execute(command, cell), cells))
    else:
        batches = [_execute(command, cell) for cell in cells]
    return [record for batch in batches for record in batch]


# ---------------------------------------------------------------------------
# 各命令的求值单元
# ---------------------------------------------------------------------------

def _grid_inputs(z: complex, y: complex, x: float, a: float) -> Dict:
    fields = {"x": x, "a": a}
    fields.update(_complex_fields("z", z))
    fields.update(_complex_fields("y", y))
    return fields


def _grid_cells(config: RunConfig, identity: str,
                check: Callable[[SolverParams, QuadratureSpec], ResidualReport]) -> List[Cell]:
    cells = []
    for z in config.z:
        for y in config.y:
            for x in config.x:
                def compute(z=z, y=y, x=x):
                    p = SolverParams(z=z, y=y, x=x, a=config.a)
                    return [report_record(config.command, check(p, config.quad))]
                cells.append(Cell(identity, compute, _grid_inputs(z, y, x, config.a)))
    return cells


def _xi_cells(config: RunConfig) -> List[Cell]:
    def cell(s: complex) -> Cell:
        def compute():
            value = xi(s)
            return [make_record(config.command, identity="xi", passed=True,
                                **_complex_fields("s", s), **_complex_fields("value", value))]
        return Cell("xi", compute, _complex_fields("s", s))
    return [cell(s) for s in config.s]


def _kernel_value_cells(config: RunConfig) -> List[Cell]:
    def cell(t: float) -> Cell:
        def compute():
            value = hbar(t)
            tolerance = SELFDUAL_TOLERANCE * (1.0 + abs(value))
            try:
                residual = selfdual_residual(t)
            except TruncationError as e:
                # 直接求和项数不够时只缺自倒数残差，H̄(t) 本身仍然有效
                log_warning(f"⚠️  t={t}: 无法计算自倒数残差: {e}")
                return [make_record(config.command, identity="hbar", t=t, value_re=value,
                                    value_im=0.0, tolerance=tolerance,
                                    error=f"{type(e).__name__}: {e}")]
            return [make_record(config.command, identity="hbar", t=t, value_re=value, value_im=0.0,
                                residual=residual, tolerance=tolerance,
                                passed=residual <= tolerance)]
        return Cell("hbar", compute, {"t": t})
    return [cell(t) for t in config.t]


def _locate_zeros(count: int, t_range: Optional[Tuple[float, float]],
                  step: float) -> List[ZetaZero]:
    """在 t_range 内取前 count 个零点；未给定区间时从 (0, 35) 开始逐段向上扫描"""
    if t_range is not None:
        return scan_critical_line(t_range[0], t_range[1], step).zeros[:count]

    zeros: List[ZetaZero] = []
    lo, hi = RH_SCAN_RANGE
    while True:
        zeros.extend(scan_critical_line(lo, hi, step).zeros)
        if len(zeros) >= count or hi >= MAX_SCAN_HEIGHT:
            return zeros[:count]
        lo, hi = hi, min(hi + _RH_SCAN_CHUNK, MAX_SCAN_HEIGHT)


def _rh_cells(config: RunConfig) -> List[Cell]:
    zeros = _locate_zeros(config.zeros, config.t_range, config.step)
    log_info(f"🎯 定位到 {len(zeros)} 个零点")
    cells = []
    if len(zeros) < config.zeros:
        message = f"只找到 {len(zeros)} 个零点，要求 {config.zeros} 个"

        def missing():
            raise ParameterError(message)
        cells.append(Cell("zero_count", missing))

    for zero in zeros:
        for z in config.z:
            for x in config.x:
                def compute(zero=zero, z=z, x=x):
                    return [report_record(config.command, rh_residual(z, zero, x, config.quad))]
                inputs = _grid_inputs(z, zero.rho, x, DEFAULT_ABSCISSA)
                cells.append(Cell("rh_criterion", compute, inputs))
    return cells


def _find_zero_cells(config: RunConfig) -> List[Cell]:
    lo, hi = config.t_range or FIND_ZEROS_RANGE

    def compute():
        scan = scan_critical_line(lo, hi, config.step)
        log_info(f"🎯 [{lo}, {hi}] 内找到 {len(scan.zeros)} 个零点，网格 {scan.grid_points} 点")
        return [make_record(config.command, identity="zeta_zero", t=zero.gamma,
                            s_re=0.5, s_im=zero.gamma,
                            residual=zero.xi_residual, tolerance=ZERO_TOLERANCE,
                            error_estimate=zero.ordinate_error,
                            passed=zero.xi_residual <= ZERO_TOLERANCE)
                for zero in scan.zeros]
    return [Cell("zeta_zero", compute)]


def _growth_cells(config: RunConfig) -> List[Cell]:
    def compute():
        envelope = fit_growth_envelope(config.radii, config.samples, config.check_radii)
        log_info(f"📈 拟合: A={envelope.A:.6g}, r={envelope.r:.6g}, δ={envelope.delta:.3g}, "
                 f"rms={envelope.fit_rms:.3g}")
        records = []
        for radius, log_max, angle in zip(envelope.radii_sampled, envelope.log_maxima,
                                          envelope.argmax_angles):
            point = radius * np.exp(1j * angle)
            records.append(make_record(
                config.command, identity="circle_maximum", t=radius,
                residual=max(0.0, log_max - envelope.log_bound(radius)),
                value_re=log_max, value_im=0.0, passed=True,
                **_complex_fields("s", point),
            ))
        if envelope.check_radii:
            records.append(report_record(config.command, growth_report(envelope)))
        return records
    return [Cell("growth_envelope", compute)]


def _stage_cells(config: RunConfig, stages) -> List[Cell]:
    def cell(name, stage) -> Cell:
        return Cell(name, lambda: [report_record(config.command, r) for r in stage()])
    return [cell(name, stage) for name, stage in stages]


def build_cells(config: RunConfig) -> List[Cell]:
    """按命令生成求值单元"""
    command = config.command
    if command == "eval-xi":
        return _xi_cells(config)
    if command == "eval-kernel":
        return _kernel_value_cells(config)
    if command == "verify-kernel":
        return _stage_cells(config, [("kernel", lambda: kernel_suite(config.quad))])
    if command == "verify-equivalence":
        return _grid_cells(config, "representation_equivalence", representation_equivalence)
    if command == "verify-feq":
        return _grid_cells(config, "functional_equation", feq_residual)
    if command == "verify-residue":
        return _grid_cells(config, "contour_shift_residue", contour_shift_residue_check)
    if command == "verify-rh":
        return _rh_cells(config)
    if command == "find-zeros":
        return _find_zero_cells(config)
    if command == "fit-growth":
        return _growth_cells(config)
    return _stage_cells(config, acceptance_stages(config.quad))


def collect_records(config: RunConfig) -> List[Dict]:
    """执行配置对应的全部求值，返回按网格顺序排列的记录"""
    try:
        cells = build_cells(config)
    except FeqError as e:
        log_error(f"❌ 无法生成求值网格: {e}")
        return [make_record(config.command, identity=config.command, passed=False,
                            error=f"{type(e).__name__}: {e}")]
    return execute_cells(config.command, cells, config.jobs)


def run(config: RunConfig) -> int:
    """执行命令并输出记录，返回退出码"""
    log_step(f"▶️  {config.command}")
    start = time.perf_counter()
    records = collect_records(config)
    write_records(records, config.output_format, config.output_path)

    failed = [r for r in records if r["passed"] is False]
    elapsed = time.perf_counter() - start
    if failed:
        log_error(f"❌ {len(failed)}/{len(records)} 项未通过 ({elapsed:.1f}s)")
        return 1
    log_success(f"✅ 全部 {len(records)} 项通过 ({elapsed:.1f}s)")
    return 0


# ---------------------------------------------------------------------------
# click 命令
# ---------------------------------------------------------------------------

class _ParsedType(click.ParamType):
    def __init__(self, name: str, parser: Callable):
        self.name = name
        self.parser = parser

    def convert(self, value, param, ctx):
        if not isinstance(value, str):
            return value
        try:
            return self.parser(value)
        except ParameterError as e:
            self.fail(str(e), param, ctx)


COMPLEX_LIST = _ParsedType("complex-list", parse_complex_list)
FLOAT_LIST = _ParsedType("float-list", parse_float_list)
RANGE = _ParsedType("range", parse_range)


def _common_options(func):
    options = [
        click.option("--abs-tol", type=float, default=None, help="积分绝对容差 (默认 1e-10)"),
        click.option("--rel-tol", type=float, default=None, help="积分相对容差 (默认 1e-10)"),
        click.option("--T", "line_halfheight", type=float, default=None, help="竖直线截断高度 (默认 40)"),
        click.option("--max-levels", type=int, default=None, help="最大加密层数 (默认 12)"),
        click.option("--format", "output_format", type=click.Choice(OUTPUT_FORMATS), default=None,
                     help="输出格式 (默认 csv)"),
        click.option("--out", "output_path", type=click.Path(dir_okay=False), default=None,
                     help="输出文件 (默认标准输出)"),
        click.option("--jobs", type=click.IntRange(min=1), default=None, help="并行线程数"),
        click.option("--config", "config_path", type=click.Path(dir_okay=False), default=None,
                     help="从 JSON 文件读取默认参数"),
        click.option("--save-config", "save_path", type=click.Path(dir_okay=False), default=None,
                     help="把最终配置写入 JSON 文件"),
        click.option("-v", "--verbose", is_flag=True, help="显示详细输出"),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _grid_options(func):
    options = [
        click.option("--z", type=COMPLEX_LIST, default=None, help="z 列表，如 1,2+i（z^{-s} 取主支）"),
        click.option("--y", type=COMPLEX_LIST, default=None, help="y 列表，如 0.3,0.5+3i"),
        click.option("--x", type=FLOAT_LIST, default=None, help="x 列表，如 0.25,0.5"),
        click.option("--a", type=float, default=None, help="围道横坐标，-1 < a < 0 (默认 -0.5)"),
    ]
    for option in reversed(options):
        func = option(func)
    return func


_QUAD_FLAGS = ("abs_tol", "rel_tol", "line_halfheight", "max_levels")
_RUN_KEYS = (
    "z", "y", "x", "a", "s", "t", "zeros", "t_range", "step", "radii", "check_radii",
    "samples", "output_format", "output_path", "jobs",
)


def resolve_config(command: str, options: Dict) -> RunConfig:
    """合并配置文件与命令行参数（命令行优先）"""
    data: Dict = {}
    config_path = options.get("config_path")
    if config_path:
        try:
            data = dict(load_config(config_path))
        except (OSError, ValueError) as e:
            raise click.UsageError(f"无法读取配置文件: {e}")
    data["command"] = command

    quad = dict(data.get("quad") or {})
    for key in _QUAD_FLAGS:
        if options.get(key) is not None:
            quad[key] = options[key]
    data["quad"] = quad

    for key in _RUN_KEYS:
        if options.get(key) is not None:
            data[key] = options[key]

    try:
        return RunConfig.from_dict(data)
    except (ParameterError, KeyError, TypeError, ValueError) as e:
        raise click.UsageError(str(e))


def _invoke(ctx: click.Context, command: str, options: Dict) -> None:
    set_verbose(options.get("verbose", False))
    config = resolve_config(command, options)
    if options.get("save_path"):
        save_config(config.to_dict(), options["save_path"])
        log_info(f"📝 配置已保存: {options['save_path']}")

    try:
        code = run(config)
    except Exception as e:
        log_error(f"❌ 错误: {e}")
        code = 1
    ctx.exit(code)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def cli():
    """函数方程 f(z,y+x) + z·f(z,y) = z·ξ(y) 的数值求解与验证工具"""


@cli.command("eval-xi")
@click.option("--s", type=COMPLEX_LIST, default=None, help="s 列表，如 0,0.5+14.134725i")
@_common_options
@click.pass_context
def eval_xi(ctx, **options):
    """计算 ξ(s)"""
    _invoke(ctx, "eval-xi", options)


@cli.command("eval-kernel")
@click.option("--t", type=FLOAT_LIST, default=None, help="t 列表 (t > 0)")
@_common_options
@click.pass_context
def eval_kernel(ctx, **options):
    """计算 H̄(t) 及其自倒数残差"""
    _invoke(ctx, "eval-kernel", options)


@cli.command("verify-kernel")
@_common_options
@click.pass_context
def verify_kernel(ctx, **options):
    """t/(1+t) 的 Mellin 对、H̄ 自倒数性、H̄ 的 Mellin 变换等于 ξ"""
    _invoke(ctx, "verify-kernel", options)


@cli.command("verify-equivalence")
@_grid_options
@_common_options
@click.pass_context
def verify_equivalence(ctx, **options):
    """实轴表示与围道表示的一致性"""
    _invoke(ctx, "verify-equivalence", options)


@cli.command("verify-feq")
@_grid_options
@_common_options
@click.pass_context
def verify_feq(ctx, **options):
    """函数方程残差 |f(z,y+x) + z·f(z,y) - z·ξ(y)|"""
    _invoke(ctx, "verify-feq", options)


@cli.command("verify-residue")
@_grid_options
@_common_options
@click.pass_context
def verify_residue(ctx, **options):
    """两条竖线积分之差等于 s=0 处的留数 ξ(y)"""
    _invoke(ctx, "verify-residue", options)


@cli.command("verify-rh")
@click.option("--zeros", type=click.IntRange(min=1), default=None, help="使用前 N 个零点 (默认 5)")
@click.option("--t-range", type=RANGE, default=None, help="零点扫描区间 LO:HI")
@click.option("--step", type=float, default=None, help="扫描步长 (默认 0.05)")
@_grid_options
@_common_options
@click.pass_context
def verify_rh(ctx, **options):
    """零点 ρ 处 |f(z,ρ+x) + z·f(z,ρ)| 应为 0"""
    _invoke(ctx, "verify-rh", options)


@cli.command("find-zeros")
@click.option("--t-range", type=RANGE, default=None, help="扫描区间 LO:HI (默认 0:50)")
@click.option("--step", type=float, default=None, help="扫描步长 (默认 0.05)")
@_common_options
@click.pass_context
def find_zeros(ctx, **options):
    """在临界线上定位 ζ 的零点"""
    _invoke(ctx, "find-zeros", options)


@cli.command("fit-growth")
@click.option("--radii", type=FLOAT_LIST, default=None, help="拟合半径 (默认 5,10,15)")
@click.option("--check-radii", type=FLOAT_LIST, default=None, help="拟合后检查的半径 (默认 30)")
@click.option("--samples", type=click.IntRange(min=8), default=None, help="每个圆周的采样点数 (默认 64)")
@_common_options
@click.pass_context
def fit_growth(ctx, **options):
    """拟合 log max_{|s|=R}|ξ(s)| = log A + r·R 并检查外推"""
    _invoke(ctx, "fit-growth", options)


@cli.command("suite")
@_common_options
@click.pass_context
def suite(ctx, **options):
    """运行完整验收"""
    _invoke(ctx, "suite", options)


def main():
    """主函数"""
    try:
        return cli.main(standalone_mode=False) or 0
    except click.exceptions.Exit as e:
        return e.exit_code
    except click.ClickException as e:
        e.show()
        return e.exit_code
    except click.Abort:
        log_warning("⚠️  已中断")
        return 1


if __name__ == "__main__":
    sys.exit(main())
