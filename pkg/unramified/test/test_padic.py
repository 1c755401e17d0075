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

from unramified.padic import *


class ScalarCase(unittest.TestCase):
    def test_from_rational(self):
        x = padic(18, 3)
        self.assertEqual(x.val, 2)
        self.assertEqual(x.norm(), Fraction(1, 9))
        self.assertEqual(str(x), "18")
        self.assertEqual(str(padic(-5, 3)), "-5")
        self.assertEqual(padic(Fraction(2, 9), 3).val, -2)

    def test_bad_prime(self):
        for p in 2, 4, 1, 9, 15, 21:
            with self.assertRaises(ValueError):
                PAdicScalar(p, 0, 1)

    def test_cancel(self):
        a = padic(Fraction(5, 7), 3)
        self.assertTrue((a - a).is_zero)
        self.assertEqual(a - a, 0)
        self.assertTrue((padic(1, 3) + padic(-1, 3)).is_zero)

    def test_cancel_bound(self):
        a = padic(Fraction(5, 7), 3, prec=6)
        z = a - a
        self.assertFalse(z.is_exact_zero)
        self.assertEqual(z.absprec, 6)
        self.assertTrue(PAdicScalar.zero(3).is_exact_zero)
        self.assertTrue((a - padic(Fraction(5, 7), 3)).is_zero)
        self.assertEqual(repr(z), "PAdicScalar(3, O(3^6))")
        # the bound survives scaling and limits later sums
        w = z*padic(Fraction(1, 3**8), 3)
        self.assertEqual(w.absprec, -2)
        with self.assertRaises(PrecisionError):
            w.fractional_part()
        x = z + padic(Fraction(1, 3), 3)
        self.assertEqual((x.val, x.prec), (-1, 7))
        self.assertTrue((z + padic(3**7, 3)).is_zero)
        self.assertFalse((z + padic(3**7, 3)).is_exact_zero)
        self.assertTrue((z*0).is_exact_zero)

    def test_precision_loss(self):
        x = padic(1, 3) + padic(3**5 - 1, 3)
        self.assertEqual(x.val, 5)
        self.assertEqual(x.prec, 15)

    def test_field(self):
        a = padic(Fraction(4, 5), 5)
        self.assertEqual(a*a.inverse(), 1)
        self.assertEqual(a**-2*a**2, 1)
        self.assertEqual(1/a, Fraction(5, 4))
        with self.assertRaises(PrecisionError):
            PAdicScalar.zero(5).inverse()

    def test_mixed_primes(self):
        with self.assertRaises(ValueError):
            padic(1, 3) + padic(1, 5)

    def test_fractional_part(self):
        self.assertEqual(padic(Fraction(4, 3), 3).fractional_part(),
                         Fraction(1, 3))
        self.assertEqual(padic(7, 3).fractional_part(), 0)
        self.assertEqual(padic(Fraction(-1, 9), 3).fractional_part(),
                         Fraction(8, 9))
        with self.assertRaises(PrecisionError):
            PAdicScalar(3, -5, 1, prec=2).fractional_part()

    def test_character(self):
        self.assertEqual(additive_character(padic(12, 3)), 1 + 0j)
        nptest.assert_allclose(
            additive_character(padic(Fraction(1, 3), 3)),
            complex(-.5, 3**.5/2))


class IntegrationCase(unittest.TestCase):
    def test_volume(self):
        d = LatticeDomain(3, [(1, 1)])
        self.assertEqual(d.count, 9)
        r = integrate_locally_constant(lambda x: 1, d)
        nptest.assert_allclose(r.value, 3.)
        self.assertEqual(r.count, 9)

    def test_units(self):
        d = LatticeDomain(5, [(0, 1)])
        r = integrate_locally_constant(lambda x: 1, d, "multiplicative")
        nptest.assert_allclose(r.value, 1.)
        self.assertEqual(r.count, 4)

    def test_character_sum(self):
        d = LatticeDomain(3, [(0, 2)])
        r = integrate_locally_constant(
            lambda x: additive_character(x/9), d)
        nptest.assert_allclose(r.value, 0., atol=1e-12)
        r = integrate_locally_constant(
            lambda x: additive_character(x), d, threads=2)
        nptest.assert_allclose(r.value, 1.)

    def test_product(self):
        d = LatticeDomain(3, [(0, 1), (1, 0)])
        self.assertEqual(d.dim, 2)
        r = integrate_locally_constant(lambda x, y: 1, d)
        nptest.assert_allclose(r.value, 3.)
        self.assertEqual(r.dict()["window"], [[0, 1], [1, 0]])

    def test_constancy(self):
        d = LatticeDomain(3, [(0, 2)])
        integrate_locally_constant(lambda x: additive_character(x/9), d,
                                   check_constancy=True)
        with self.assertRaises(NonConstancyError):
            integrate_locally_constant(
                lambda x: additive_character(x/27), d,
                check_constancy=True)

    def test_empty_window(self):
        with self.assertRaises(ValueError):
            LatticeDomain(3, [(2, -3)])
