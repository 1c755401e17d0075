#
#   unramified - exact unramified local factors for quadratic space pairs
#   Copyright (C) 2024 unramified contributors
#
#   This program is free software: you can redistribute it and/or modify
#   it under the terms of the GNU Lesser General Public License as published by
#   the Free Software Foundation, either version 3 of the License, or
#   (at your option) any later version.
#
#   This program is distributed in the hope that it will be useful,
#   but WITHOUT ANY WARRANTY; without even the implied warranty of
#   MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
#   GNU Lesser General Public License for more details.
#
#   You should have received a copy of the GNU Lesser General Public License
#   along with this program.  If not, see <http://www.gnu.org/licenses/>.

import cmath
import unittest
from fractions import Fraction

import numpy as np
from numpy import testing as nptest

from unramified.groups import (RingMatrix, torus_H, exp_nilpotent, psi0,
                               special_elements, v_matrix)
from unramified.padic import padic, PrecisionError
from unramified.ring import rf_var, BackendError
from unramified.whittaker import *


def _pm(rows, p=3):
    return RingMatrix([[padic(x, p) for x in r] for r in rows])


X1, X2, Z_S, SQRT_Q = (rf_var(v) for v in ("X1", "X2", "Z_S", "SQRT_Q"))


class SatakeCase(unittest.TestCase):
    def test_formal(self):
        params = SatakeParams.formal(2)
        self.assertEqual(params.n, 2)
        self.assertTrue(params.is_formal)
        self.assertEqual(params.chi_s[0], X1*Z_S*SQRT_Q)
        self.assertEqual(params.chi_prime, 1)
        self.assertEqual(SatakeParams.formal(2, "formal").chi_prime,
                         rf_var("CHI_P"))

    def test_numeric(self):
        params = SatakeParams.numeric([1, -1], .5, 5)
        nptest.assert_allclose(params.chi_s, [1, -1])
        self.assertFalse(params.is_formal)
        with self.assertRaises(ValueError):
            SatakeParams.numeric([2], 0, 3, unitary=True)


class CasselmanShalikaCase(unittest.TestCase):
    def test_formal(self):
        params = SatakeParams.formal(2)
        self.assertEqual(cs_whittaker_gln(params, (0, 0)), 1)
        self.assertEqual(cs_whittaker_gln(params, (1, 0)),
                         (X1 + X2)/SQRT_Q)
        self.assertEqual(cs_whittaker_gln(params, (0, 1)), 0)
        with self.assertRaises(ValueError):
            cs_whittaker_gln(params, (0,))

    def test_numeric(self):
        params = SatakeParams.numeric([2, 3], 0, 3)
        nptest.assert_allclose(cs_whittaker_gln(params, (1, 0)),
                               5/np.sqrt(3))

    def test_w_tau(self):
        params = SatakeParams.formal(2)
        self.assertEqual(w_tau(params, RingMatrix.identity(2, padic(1, 3))),
                         1)
        z = _pm([[1, Fraction(1, 3)], [0, 1]])
        with self.assertRaises(BackendError):
            w_tau(params, z)
        nptest.assert_allclose(
            w_tau(SatakeParams.numeric([1, 1], 0, 3), z),
            np.exp(2j*np.pi/3))

    def test_eval_w_rho(self):
        params = SatakeParams.formal(2)
        self.assertEqual(eval_W_rho(params, RingMatrix.identity(
            5, padic(1, 3))), 1)
        h = torus_H((1, 0), padic(3, 3))
        self.assertEqual(eval_W_rho(params, h),
                         Z_S*(X1 + X2)/SQRT_Q**2)
        with self.assertRaises(ValueError):
            eval_W_rho(params, RingMatrix.identity(3, padic(1, 3)))


class FloorBracketCase(unittest.TestCase):
    def test_values(self):
        self.assertEqual(floor_bracket(padic(Fraction(1, 3), 3)), 3)
        self.assertEqual(floor_bracket(padic(9, 3)), 9)
        with self.assertRaises(TypeError):
            floor_bracket(3)
        with self.assertRaises(ValueError):
            floor_bracket(padic(0, 3))

    def test_cancelled(self):
        a = padic(Fraction(2, 3), 3)
        with self.assertRaises(PrecisionError):
            floor_bracket(a - a)


def _root(i, j, f, p=3):
    """exp(f (E_ij - E_j'i')) in SO(5)."""
    x = [[0]*5 for _ in range(5)]
    x[i][j] = Fraction(f)
    x[4 - j][4 - i] = -Fraction(f)
    return exp_nilpotent(RingMatrix(x)).map(lambda e: padic(e, p))


class InvarianceCase(unittest.TestCase):
    def setUp(self):
        chi = [cmath.exp(.4j), cmath.exp(2.1j)]
        self.params = SatakeParams.numeric(chi, .3, 3)
        u = _root(0, 1, Fraction(1, 3)) @ _root(1, 2, Fraction(2, 9))
        self.points = [u @ torus_H(delta, padic(3, 3))
                       for delta in ((1, 0), (2, 1), (1, 1))]

    def test_right_k(self):
        rng = np.random.RandomState(3)
        w0t = special_elements(2)["w0_tilde"].map(lambda e: padic(e, 3))
        roots = [(0, 1), (0, 2), (0, 3), (1, 2)]
        for h in self.points:
            base = eval_W_rho(self.params, h)
            self.assertGreater(abs(base), 1e-9)
            for _ in range(3):
                k = w0t
                for i, j in roots + [(j, i) for i, j in roots]:
                    k = k @ _root(i, j, int(rng.randint(-3, 4)))
                nptest.assert_allclose(eval_W_rho(self.params, h @ k), base)

    def test_left_character(self):
        z = _pm([[1, Fraction(1, 3)], [0, 1]])
        psi = psi0(z)
        self.assertGreater(abs(psi - 1), .5)
        for h in self.points:
            nptest.assert_allclose(eval_W_rho(self.params, v_matrix(z) @ h),
                                   psi*eval_W_rho(self.params, h))
            # the unipotent radical of Q_n acts trivially
            nptest.assert_allclose(
                eval_W_rho(self.params, _root(0, 2, Fraction(5, 9)) @ h),
                eval_W_rho(self.params, h))
