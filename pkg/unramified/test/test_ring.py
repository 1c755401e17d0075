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

import unittest
from fractions import Fraction

from numpy import testing as nptest

from unramified.ring import *
from unramified.ring import INDEX, NVARS


X1, X2 = rf_var("X1"), rf_var("X2")
Z = rf_var("Z_S2")


class RationalFunctionCase(unittest.TestCase):
    def test_field(self):
        f = X1/(X1 + 1) + 1/(X1 + 1)
        self.assertEqual(f, 1)
        self.assertTrue(f.is_laurent)

    def test_cancel(self):
        f = (X1*X1 - 1)/(X1 - 1)
        self.assertTrue(f.is_laurent)
        self.assertEqual(f, X1 + 1)

    def test_zero_division(self):
        with self.assertRaises(ZeroDivisionError):
            X1/(X1 - X1)

    def test_laurent_degrees(self):
        f = (X1 + 1/X1)**2
        self.assertEqual(f.degree("X1"), 2)
        self.assertEqual(f.low_degree("X1"), -2)
        self.assertEqual(f.variables(), ["X1"])

    def test_evaluate(self):
        f = X1 + 1/X1
        self.assertEqual(f.evaluate({"X1": Fraction(2)}), Fraction(5, 2))
        g = (X1 + X2).evaluate({"X1": 1}, partial=True)
        self.assertEqual(g, X2 + 1)
        nptest.assert_allclose(complex(f(X1=2j)), 2j + 1/2j)
        with self.assertRaises(ValueError):
            f.evaluate({})

    def test_subs_monomial(self):
        e = [0]*NVARS
        e[INDEX["X2"]] = 1
        f = (X1 + 1)/(X1 - 1)
        self.assertEqual(f.subs_monomial({"X1": (2, e)}),
                         (2*X2 + 1)/(2*X2 - 1))

    def test_to_data(self):
        d = (X1/2).to_data()
        self.assertIn("X1", d["variables"])
        self.assertEqual(d["den"], [])


class ExtractCase(unittest.TestCase):
    def test_geometric_zero(self):
        f = 1/(1 - Z)
        for k in range(4):
            self.assertEqual(coeff_extract(f, "Z_S2", k), 1)
        self.assertEqual(coeff_extract(f, "Z_S2", -1), 0)

    def test_geometric_infinity(self):
        f = 1/(1 - Z)
        self.assertEqual(coeff_extract(f, "Z_S2", -2, "infinity"), -1)
        self.assertEqual(coeff_extract(f, "Z_S2", 0, "infinity"), 0)

    def test_coefficients_in_other_variables(self):
        f = 1/(1 - X1*Z)**2
        self.assertEqual(coeff_extract(f, "Z_S2", 2), 3*X1**2)

    def test_laurent_shift(self):
        f = (Z**-2 + 1)/(1 - Z)
        self.assertEqual(coeff_extract(f, "Z_S2", -2), 1)
        self.assertEqual(coeff_extract(f, "Z_S2", 1), 2)

    def test_direction(self):
        with self.assertRaises(ValueError):
            coeff_extract(Z, "Z_S2", 0, "left")


class SchurCase(unittest.TestCase):
    def test_small(self):
        self.assertEqual(schur_poly((0, 0)), 1)
        self.assertEqual(schur_poly((1, 0)), X1 + X2)
        self.assertEqual(schur_poly((2, 0)), X1**2 + X1*X2 + X2**2)
        self.assertEqual(schur_poly((1, 1)), X1*X2)

    def test_pieri(self):
        s1 = schur_poly((1, 0, 0))
        self.assertEqual(s1*s1, schur_poly((2, 0, 0)) +
                         schur_poly((1, 1, 0)))

    def test_negative(self):
        self.assertEqual(schur_poly((0, -1)), 1/X1 + 1/X2)

    def test_not_partition(self):
        with self.assertRaises(ValueError):
            schur_poly((0, 1))

    def test_det(self):
        self.assertEqual(leibniz_det([[X1, 1], [1, X2]]), X1*X2 - 1)
        self.assertEqual(leibniz_det([[1, 2], [3, 4]]), -2)


class BackendCase(unittest.TestCase):
    def test_registry(self):
        self.assertEqual(Backend.names(), ["numeric", "symbolic"])
        b = Backend.make({"type": "numeric", "q": 3})
        self.assertEqual(b.q, 3.)

    def test_symbolic(self):
        b = Symbolic()
        self.assertEqual(b.q, b.sqrt_q**2)
        self.assertEqual(b.q_power(Fraction(1, 2)), b.sqrt_q)
        self.assertEqual(b.character(-1), -1)
        with self.assertRaises(ValueError):
            b.q_power(Fraction(1, 3))
        with self.assertRaises(BackendError):
            b.character(1j)

    def test_numeric(self):
        b = Numeric(3, {"Z_S2": .5})
        self.assertEqual(b.q_power(2), 9.)
        nptest.assert_allclose(b.value(1/(1 - Z)), 2.)
        with self.assertRaises(BackendError):
            b.var("Z_S1")

    def test_zeta(self):
        b = Symbolic()
        self.assertEqual(zeta_v(b, s2=-1), 1/(1 - Z))
        self.assertEqual(zeta_v(b, s2=-1, const=1), 1/(1 - Z/b.q))
        n = Numeric(5, {"Z_S": .2})
        nptest.assert_allclose(zeta_v(n, s=1), 1/(1 - .2))
