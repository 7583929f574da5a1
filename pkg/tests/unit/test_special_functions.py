"""
单元测试 - special_functions.py
"""

import math
import os
import sys
import unittest
from unittest.mock import patch

import mpmath
import numpy as np

# 添加项目根目录到路径
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))

import special_functions
from errors import ParameterError, PoleError, PrecisionError, RangeOverflowError
from special_functions import (
    ZeroScan, ZetaZero, complex_gamma, find_zeta_zeros, log_gamma, normalized_xi,
    reciprocal_gamma, riemann_zeta, scan_critical_line, xi, xi_critical_line,
)

FIRST_ZEROS = (
    14.134725141734693, 21.022039638771555, 25.010857580145688,
    30.424876125859513, 32.935061587739189, 37.586178158825671,
    40.918719012147495, 43.327073280914999, 48.005150881167159,
    49.773832477672302,
)


def mp_xi(s):
    """高精度 ξ(s)，s 不取 0、1"""
    s = mpmath.mpc(s)
    return 0.5 * s * (s - 1) * mpmath.pi ** (-s / 2) * mpmath.gamma(s / 2) * mpmath.zeta(s)


def relative_error(value, expected):
    expected = complex(expected)
    return abs(complex(value) - expected) / max(abs(expected), 1e-300)


class TestGamma(unittest.TestCase):
    """测试复 Gamma"""

    def setUp(self):
        """测试前准备"""
        mpmath.mp.dps = 30

    def test_integer_and_half_integer(self):
        """测试 Γ(5) = 24，Γ(1/2) = √π"""
        self.assertLess(relative_error(complex_gamma(5.0), 24.0), 1e-13)
        self.assertLess(relative_error(complex_gamma(0.5), math.sqrt(math.pi)), 1e-13)

    def test_against_mpmath(self):
        """测试与 mpmath 一致，包括反射区域"""
        for s in (0.3 + 2j, -2.5 + 1j, 3 + 20j, -0.5, 7.25 - 4j, 0.1 - 30j):
            self.assertLess(relative_error(complex_gamma(s), mpmath.gamma(s)), 1e-11, msg=f"s={s}")

    def test_stirling_decay(self):
        """测试 |Γ(σ+it)| 与 t^{σ-1/2}e^{-πt/2} 同阶"""
        for sigma in (1.0, 2.0, 3.0):
            for t in (10.0, 20.0, 40.0):
                ratio = abs(complex_gamma(complex(sigma, t))) / (t ** (sigma - 0.5) * math.exp(-math.pi * t / 2))
                self.assertGreaterEqual(ratio, 0.1, msg=f"σ={sigma}, t={t}")
                self.assertLessEqual(ratio, 10.0, msg=f"σ={sigma}, t={t}")

    def test_log_gamma(self):
        """测试 log Γ(10) = log 9!"""
        self.assertAlmostEqual(log_gamma(10.0).real, math.log(362880.0), delta=1e-12)

    def test_poles(self):
        """测试非正整数处的极点"""
        for s in (0.0, -1.0, -3.0):
            with self.assertRaises(PoleError):
                complex_gamma(s)
        with self.assertRaises(ParameterError):
            log_gamma(np.array([1.0, -2.0]))
        self.assertTrue(issubclass(PoleError, ValueError))

    def test_overflow(self):
        """测试 Γ(200) 溢出"""
        with self.assertRaises(RangeOverflowError):
            complex_gamma(200.0)

    def test_reciprocal(self):
        """测试 1/Γ 在非正整数处精确为 0"""
        self.assertEqual(reciprocal_gamma(-2.0), 0)
        self.assertEqual(reciprocal_gamma(0.0), 0)
        self.assertLess(relative_error(reciprocal_gamma(4.0), 1.0 / 6.0), 1e-13)
        self.assertLess(relative_error(reciprocal_gamma(-1.5 + 2j), 1 / mpmath.gamma(-1.5 + 2j)), 1e-11)

    def test_array_shape(self):
        """测试数组进数组出"""
        values = complex_gamma(np.array([[1.0, 2.0], [3.0, 4.0]]))
        self.assertEqual(values.shape, (2, 2))
        np.testing.assert_allclose(values.real, [[1, 1], [2, 6]], rtol=1e-13)


class TestZeta(unittest.TestCase):
    """测试 Riemann ζ"""

    def setUp(self):
        """测试前准备"""
        mpmath.mp.dps = 30

    def test_known_values(self):
        """测试 ζ(2)、ζ(0)、ζ(-1)、ζ(-3)"""
        self.assertLess(relative_error(riemann_zeta(2.0), math.pi ** 2 / 6), 1e-13)
        self.assertAlmostEqual(riemann_zeta(0.0).real, -0.5, delta=1e-13)
        self.assertAlmostEqual(riemann_zeta(-1.0).real, -1.0 / 12.0, delta=1e-10)
        self.assertAlmostEqual(riemann_zeta(-3.0).real, 1.0 / 120.0, delta=1e-12)

    def test_trivial_zero(self):
        """测试平凡零点精确为 0"""
        self.assertEqual(riemann_zeta(-2.0), 0)
        self.assertEqual(riemann_zeta(-4.0), 0)

    def test_first_nontrivial_zero(self):
        """测试第一个非平凡零点"""
        self.assertLess(abs(riemann_zeta(0.5 + 14.134725141734693j)), 1e-9)

    def test_against_mpmath(self):
        """测试与 mpmath 一致"""
        for s in (0.5 + 30j, 3 + 1j, -5.5 + 2j, 0.2 - 10j, 1.0 + 1e-3j, 40 + 0j):
            self.assertLess(relative_error(riemann_zeta(s), mpmath.zeta(s)), 1e-10, msg=f"s={s}")

    def test_pole(self):
        """测试 s = 1 处的极点"""
        with self.assertRaises(PoleError):
            riemann_zeta(1.0)


class TestXi(unittest.TestCase):
    """测试 ξ 与 Ξ"""

    def setUp(self):
        """测试前准备"""
        mpmath.mp.dps = 30

    def test_known_values(self):
        """测试 ξ(2) = π/6，ξ(0) = ξ(1) = 1/2"""
        self.assertAlmostEqual(abs(xi(2.0) - math.pi / 6), 0.0, delta=1e-14)
        self.assertAlmostEqual(abs(xi(0.0) - 0.5), 0.0, delta=1e-14)
        self.assertAlmostEqual(abs(xi(1.0) - 0.5), 0.0, delta=1e-14)

    def test_symmetry(self):
        """测试左半平面的值与高精度 ξ 一致，且 ξ(s) = ξ(1-s)"""
        self.assertAlmostEqual(abs(xi(-1.0) - math.pi / 6), 0.0, delta=1e-14)
        for s in (-3 + 2j, -10 + 5j, -0.5 - 12j, 0.2 + 5j, -4 + 10j):
            self.assertLess(relative_error(xi(s), mp_xi(s)), 1e-11, msg=f"s={s}")
            self.assertLess(relative_error(xi(1 - s), mp_xi(s)), 1e-11, msg=f"s={s}")

    def test_symmetries_on_random_grid(self):
        """测试 |s| ≤ 20 的随机点上 ξ(s) = ξ(1-s) 且 ξ(s̄) = conj ξ(s)"""
        rng = np.random.default_rng(0)
        radius = 20.0 * np.sqrt(rng.uniform(0.0, 1.0, 50))
        angle = rng.uniform(0.0, 2 * math.pi, 50)
        for s in radius * np.exp(1j * angle):
            s = complex(s)
            value = xi(s)
            scale = max(1.0, abs(value))
            self.assertLess(abs(xi(1 - s) - value), 1e-12 * scale, msg=f"s={s}")
            self.assertLess(abs(xi(s.conjugate()) - value.conjugate()), 1e-12 * scale, msg=f"s={s}")

    def test_conjugate(self):
        """测试 ξ(s̄) = conj ξ(s)"""
        s = 0.7 + 8j
        self.assertLess(relative_error(xi(s.conjugate()), xi(s).conjugate()), 1e-13)

    def test_against_mpmath(self):
        """测试与 mpmath 一致，包括 s = 1 附近"""
        for s in (0.3 + 2j, 2.5, 5 + 25j, 1 + 1e-4, 1e-4j, -8 + 3j):
            self.assertLess(relative_error(xi(s), mp_xi(s)), 1e-11, msg=f"s={s}")

    def test_range_limit(self):
        """测试超出 |s| 范围"""
        with self.assertRaises(RangeOverflowError):
            xi(250.0)

    def test_critical_line(self):
        """测试 Ξ(0) = ξ(1/2)，Ξ 为实数"""
        self.assertAlmostEqual(xi_critical_line(0.0), float(mp_xi(0.5).real), delta=1e-14)
        values = xi_critical_line(np.array([5.0, 10.0, 20.0]))
        self.assertEqual(values.shape, (3,))
        for t, value in zip((5.0, 10.0, 20.0), values):
            self.assertLess(relative_error(value, mp_xi(0.5 + 1j * t).real), 1e-10)

    def test_normalized(self):
        """测试归一化 Ξ 与 Ξ 同号、绝对值为 |ζ(1/2+it)|"""
        for t in (3.0, 10.0, 18.0, 27.0):
            self.assertEqual(np.sign(normalized_xi(t)), np.sign(xi_critical_line(t)))
            self.assertLess(relative_error(abs(normalized_xi(t)), abs(mpmath.zeta(0.5 + 1j * t))), 1e-10)

    def test_critical_line_rejects_nan(self):
        """测试非有限 t"""
        with self.assertRaises(ParameterError):
            xi_critical_line(float("nan"))


class TestZeroScan(unittest.TestCase):
    """测试零点扫描"""

    def test_first_ten_zeros(self):
        """测试 (0, 50) 内的 10 个零点"""
        zeros = find_zeta_zeros(0.0, 50.0)
        self.assertEqual(len(zeros), 10)
        for zero, expected in zip(zeros, FIRST_ZEROS):
            self.assertAlmostEqual(zero.gamma, expected, delta=1e-9)
            self.assertLessEqual(zero.ordinate_error, 1e-10)
            self.assertLessEqual(zero.xi_residual, 1e-9)
            self.assertEqual(zero.rho, complex(0.5, zero.gamma))

    def test_first_five(self):
        """测试 (0, 35) 内恰有 5 个零点，升序"""
        zeros = find_zeta_zeros(0.0, 35.0)
        self.assertEqual(len(zeros), 5)
        gammas = [zero.gamma for zero in zeros]
        self.assertEqual(gammas, sorted(gammas))
        self.assertAlmostEqual(gammas[0], 14.134725141734693, delta=1e-5)

    def test_single_zero_window(self):
        """测试 [14, 15] 内恰有一个零点，[2, 10] 内没有零点"""
        zeros = find_zeta_zeros(14.0, 15.0, 0.1)
        self.assertEqual(len(zeros), 1)
        self.assertAlmostEqual(zeros[0].gamma, FIRST_ZEROS[0], delta=1e-9)
        self.assertEqual(find_zeta_zeros(2.0, 10.0, 0.1), [])

    def test_scan_result(self):
        """测试扫描结果"""
        scan = scan_critical_line(10.0, 22.0, step=0.1)
        self.assertIsInstance(scan, ZeroScan)
        self.assertEqual(len(scan.zeros), 2)
        self.assertEqual(scan.suspects, [])
        self.assertEqual(scan.grid_points, 121)

    def test_invalid_range(self):
        """测试非法区间"""
        with self.assertRaises(ParameterError):
            find_zeta_zeros(20.0, 10.0)
        with self.assertRaises(ParameterError):
            find_zeta_zeros(-1.0, 10.0)
        with self.assertRaises(ParameterError):
            scan_critical_line(0.0, 10.0, step=0.0)

    @patch('special_functions.log_warning')
    def test_suspected_close_pair(self, mock_warning):
        """测试未变号的局部极小被报告"""
        with patch.object(special_functions, 'normalized_xi', side_effect=lambda t: (np.asarray(t) - 5.0) ** 2 + 0.01):
            scan = scan_critical_line(0.0, 10.0, step=1.0)
        self.assertEqual(scan.zeros, [])
        self.assertEqual(scan.suspects, [5.0])
        mock_warning.assert_called_once()

    def test_residual_check(self):
        """测试定位点处 |Ξ| 过大时报错"""
        with patch.object(special_functions, 'normalized_xi', side_effect=lambda t: np.asarray(t) - 2.5):
            with self.assertRaises(PrecisionError):
                scan_critical_line(0.0, 5.0, step=1.0)

    @patch('special_functions.log_warning')
    def test_high_scan_warning(self, mock_warning):
        """测试超过支持高度时给出警告"""
        scan_critical_line(100.0, 101.0, step=0.5)
        self.assertTrue(mock_warning.called)

    def test_zero_validation(self):
        """测试零点对象的校验"""
        zero = ZetaZero(gamma=14.0, bracket_lo=13.9, bracket_hi=14.1, xi_residual=0.0)
        self.assertAlmostEqual(zero.ordinate_error, 0.1, delta=1e-12)
        with self.assertRaises(ParameterError):
            ZetaZero(gamma=-1.0, bracket_lo=-2.0, bracket_hi=0.0, xi_residual=0.0)
        with self.assertRaises(ParameterError):
            ZetaZero(gamma=14.0, bracket_lo=14.5, bracket_hi=15.0, xi_residual=0.0)


if __name__ == '__main__':
    unittest.main(verbosity=2)
