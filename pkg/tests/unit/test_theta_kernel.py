"""
单元测试 - theta_kernel.py
"""

import math
import os
import sys
import unittest

import mpmath
import numpy as np

# 添加项目根目录到路径
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))

from errors import ParameterError, TruncationError
from special_functions import xi
from theta_kernel import (
    KernelSeriesParams, hbar, hbar_direct, hbar_tail_bound, mellin_hbar,
    mellin_transform, selfdual_residual,
)


def mp_term(t, n):
    """高精度的第 n 项"""
    t = mpmath.mpf(t)
    return 2 * t ** 2 * (2 * mpmath.pi ** 2 * n ** 4 * t ** 2 - 3 * mpmath.pi * n ** 2) \
        * mpmath.exp(-mpmath.pi * n ** 2 * t ** 2)


def mp_hbar(t, terms=200):
    return mpmath.fsum(mp_term(t, n) for n in range(1, terms + 1))


class TestHbar(unittest.TestCase):
    """测试 H̄(t) 的求值"""

    def setUp(self):
        """测试前准备"""
        mpmath.mp.dps = 40

    def test_against_high_precision(self):
        """测试与高精度级数一致"""
        for t in (0.1, 0.125, 0.3, 0.5, 0.8, 1.0, 1.5, 2.0, 3.0):
            expected = float(mp_hbar(t))
            self.assertAlmostEqual(hbar(t), expected, delta=1e-14 * max(1.0, abs(expected)),
                                   msg=f"t={t}")

    def test_value_at_one(self):
        """测试 H̄(1) ≈ 0.8933"""
        self.assertAlmostEqual(hbar(1.0), 0.8933, delta=1e-4)

    def test_decay(self):
        """测试 t ≥ 3 时已经很小"""
        self.assertLess(hbar(3.0), 1e-6)
        self.assertAlmostEqual(hbar(3.0) / float(mp_hbar(3.0)), 1.0, delta=1e-10)
        self.assertEqual(hbar(20.0), 0.0)
        self.assertEqual(hbar(0.05), 0.0)

    def test_reflection(self):
        """测试 H̄(1/2) = 2·H̄(2)"""
        self.assertAlmostEqual(hbar(0.5), 2.0 * hbar(2.0), delta=1e-16)
        self.assertAlmostEqual(hbar(0.5), 3.88e-3, delta=1e-5)

    def test_array_input(self):
        """测试数组输入保持形状"""
        t = np.array([[0.5, 1.0], [2.0, 4.0]])
        values = hbar(t)
        self.assertEqual(values.shape, (2, 2))
        for index in np.ndindex(t.shape):
            self.assertAlmostEqual(values[index], hbar(float(t[index])), delta=1e-16)

    def test_nonpositive_argument(self):
        """测试 t ≤ 0"""
        with self.assertRaises(ParameterError):
            hbar(0.0)
        with self.assertRaises(ParameterError):
            hbar(np.array([1.0, -1.0]))

    def test_direct_matches_reflected(self):
        """测试直接求和与反射求和一致"""
        for t in (0.25, 0.5, 1.0, 4.0):
            self.assertAlmostEqual(hbar_direct(t), hbar(t), delta=1e-14)

    def test_truncation_error(self):
        """测试项数上限不足"""
        with self.assertRaises(TruncationError):
            hbar_direct(0.01, KernelSeriesParams(n_max=5))

    def test_positive(self):
        """测试 H̄ 在 [0.4, 3] 上为正"""
        values = hbar(np.linspace(0.4, 3.0, 27))
        self.assertTrue(np.all(values > 0), msg=f"min={values.min()}")

    def test_tighter_truncation_agrees(self):
        """测试收紧尾项容差后数值变化不超过原容差"""
        for t in (0.125, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0):
            loose = hbar(t, KernelSeriesParams(abs_tol=1e-10))
            tight = hbar(t, KernelSeriesParams(abs_tol=1e-20))
            self.assertLess(abs(loose - tight), 1e-10, msg=f"t={t}")


class TestTailBound(unittest.TestCase):
    """测试尾项上界"""

    def setUp(self):
        """测试前准备"""
        mpmath.mp.dps = 40

    def test_bound_dominates_tail(self):
        """测试上界不小于真实尾项"""
        for t in (0.2, 0.5, 1.0, 2.0):
            for n_terms in (1, 2, 4, 8):
                actual = abs(mpmath.fsum(mp_term(t, n) for n in range(n_terms + 1, 400)))
                self.assertGreaterEqual(hbar_tail_bound(t, n_terms), float(actual),
                                        msg=f"t={t}, N={n_terms}")

    def test_bound_decreases(self):
        """测试上界随 N 递减"""
        bounds = [hbar_tail_bound(0.5, n) for n in range(1, 10)]
        self.assertTrue(all(later <= earlier for earlier, later in zip(bounds, bounds[1:])))

    def test_invalid_arguments(self):
        """测试非法参数"""
        with self.assertRaises(ParameterError):
            hbar_tail_bound(0.0, 3)
        with self.assertRaises(ParameterError):
            hbar_tail_bound(1.0, 0)

    def test_series_params_validation(self):
        """测试级数参数校验"""
        with self.assertRaises(ParameterError):
            KernelSeriesParams(abs_tol=0.0)
        with self.assertRaises(ParameterError):
            KernelSeriesParams(n_max=0)


class TestSelfDual(unittest.TestCase):
    """测试自倒数性 H̄(t) = t^{-1}·H̄(1/t)"""

    def test_grid(self):
        """测试验收网格"""
        for t in (0.125, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0):
            self.assertLess(selfdual_residual(t), 1e-12 * (1.0 + abs(hbar(t))), msg=f"t={t}")

    def test_invalid(self):
        """测试 t ≤ 0"""
        with self.assertRaises(ParameterError):
            selfdual_residual(-2.0)


class TestMellin(unittest.TestCase):
    """测试 Mellin 变换"""

    def test_exponential_kernel(self):
        """测试 ∫t^{s-1}e^{-t} dt = Γ(s)"""
        result = mellin_transform(lambda u: np.exp(-u), 3.0)
        self.assertTrue(result.converged)
        self.assertAlmostEqual(result.value.real, 2.0, delta=1e-10)

    def test_vector_s(self):
        """测试一次积分多个 s"""
        s = np.array([1.0, 2.0, 3.0 + 0j])
        result = mellin_transform(lambda u: np.exp(-u), s)
        self.assertEqual(result.value.shape, (3,))
        np.testing.assert_allclose(result.value, [1.0, 1.0, 2.0], atol=1e-10)

    def test_mellin_of_hbar_is_xi(self):
        """测试 H̄ 的 Mellin 变换等于 ξ(s)"""
        for s in (0j, 1 + 0j, 2 + 0j, 0.5 + 0j, 0.5 + 3j, -1 + 0j, 0.5 + 14.134725j):
            self.assertLess(abs(mellin_hbar(s) - xi(s)), 1e-8, msg=f"s={s}")

    def test_known_values(self):
        """测试 s=0、1、2 处的取值"""
        self.assertAlmostEqual(mellin_hbar(0j).real, 0.5, delta=1e-8)
        self.assertAlmostEqual(mellin_hbar(1 + 0j).real, 0.5, delta=1e-8)
        self.assertAlmostEqual(mellin_hbar(2 + 0j).real, math.pi / 6, delta=1e-8)

    def test_vector_matches_scalar(self):
        """测试向量形式与逐点计算一致"""
        s = np.array([0.5 + 3j, 2.0 + 1j])
        values = mellin_hbar(s)
        for k in range(2):
            self.assertAlmostEqual(abs(values[k] - mellin_hbar(complex(s[k]))), 0.0, delta=1e-9)

    def test_reflection_symmetry(self):
        """测试 H̄ 的 Mellin 变换满足 s ↔ 1-s 对称"""
        for sigma in (0.2, 0.5, 1.5):
            for t in (0.0, 2.0, 5.0):
                s = complex(sigma, t)
                value = mellin_hbar(s)
                reflected = mellin_hbar(1 - s)
                self.assertLess(abs(value - reflected), 1e-8 * max(1.0, abs(value)), msg=f"s={s}")


if __name__ == '__main__':
    unittest.main(verbosity=2)
