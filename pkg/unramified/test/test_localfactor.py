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

import json
import unittest
from fractions import Fraction

from numpy import testing as nptest

from unramified.bessel import BesselDatum, bessel_value
from unramified.localfactor import *
from unramified.ring import rf_var
from unramified.weil import QuadraticSpacePair, PointY, hyperbolic_point
from unramified.whittaker import SatakeParams


X1, Z_S, SQRT_Q = (rf_var(v) for v in ("X1", "Z_S", "SQRT_Q"))
Z1, Z2 = rf_var("Z_S1"), rf_var("Z_S2")


def _request(v2=0, **kw):
    pair = QuadraticSpacePair.hyperbolic(3, 2, 4)
    return LocalFactorRequest(hyperbolic_point(pair, 0, v2), 1, **kw)


class GammaCase(unittest.TestCase):
    def test_gl1(self):
        params = SatakeParams.formal(1)
        z = rf_var("Z_S")
        self.assertEqual(gamma_gl1_gln(params, 1, z),
                         (1 - X1*z)/(1 - 1/(X1*SQRT_Q**2*z)))

    def test_product(self):
        params = SatakeParams.formal(2)
        g = gamma_gl1_gln(params, 1, Z_S)
        self.assertEqual(g.variables(), ["SQRT_Q", "X1", "X2", "Z_S"])


class RegionCase(unittest.TestCase):
    def test_inside(self):
        ok, violations = region_lemma65(1, 2, 4, 10, 6, -5)
        self.assertTrue(ok)
        self.assertEqual(violations, [])

    def test_band(self):
        ok, violations = region_lemma65(1, 2, 4, 13, 6, -5)
        self.assertFalse(ok)
        self.assertEqual(len(violations), 1)
        self.assertTrue(violations[0].startswith("Re(s) <="))
        ok, violations = region_lemma65(1, 2, 4, 7, 6, -5)
        self.assertTrue(violations[0].startswith("Re(s1) - Re(s2)"))
        self.assertTrue(region_lemma65(1, 2, 4, 8, 6, -5)[0])
        self.assertTrue(region_lemma65(1, 2, 4, 12, 6, -5)[0])

    def test_constants(self):
        ok, violations = region_lemma65(1, 2, 4, 10, 5, -5)
        self.assertIn("C1 = 5", violations[-1])
        ok, violations = region_lemma65(1, 2, 4, 10, 6, -4)
        self.assertIn("C2 = 4", " ".join(violations))
        self.assertTrue(region_lemma65(1, 2, 4, 10, 5, -5, c1=4)[0])

    def test_contours(self):
        s1, s2 = default_contours(1, 2, 4, 10)
        self.assertEqual((s1, s2), (6., -5.))
        self.assertTrue(region_lemma65(1, 2, 4, 10, s1, s2)[0])
        for n in 1, 2, 3:
            s1, s2 = default_contours(n, 2, 6, 20)
            self.assertTrue(region_lemma65(n, 2, 6, 20, s1, s2)[0], n)


class RequestCase(unittest.TestCase):
    def test_dimensions(self):
        pair = QuadraticSpacePair.hyperbolic(3, 4, 2)
        with self.assertRaisesRegex(ValueError, "d2 > d1"):
            LocalFactorRequest(hyperbolic_point(pair), 1)

    def test_integral(self):
        pair = QuadraticSpacePair.hyperbolic(3, 2, 4)
        y = PointY(pair, [Fraction(1, 3), Fraction(2, 3)],
                   [Fraction(1, 3), Fraction(1, 3), 0, 0])
        with self.assertRaises(ValueError):
            LocalFactorRequest(y, 1)

    def test_modes(self):
        with self.assertRaises(ValueError):
            _request(chi=[1])
        with self.assertRaises(ValueError):
            _request(chi=[1, 1], s=2)
        with self.assertRaises(ValueError):
            _request(coefficient_sign="other")
        r = _request(chi=[1], s=10)
        self.assertTrue(r.numeric)
        self.assertFalse(_request().numeric)
        json.dumps(r.dict())


class CoefficientCase(unittest.TestCase):
    def test_below_support(self):
        r = _request(v2=1)
        self.assertEqual(r.v4, 2)
        self.assertEqual(c_ks(r, 1), 0)

    def test_exact(self):
        r = _request()
        c = c_ks(r, 0)
        self.assertTrue(set(c.variables()) <= {"SQRT_Q", "X1", "Z_S"})
        self.assertIs(c_ks(r, 0), c)

    def test_sign_readings_agree_at_zero(self):
        a = c_ks(_request(), 0)
        b = c_ks(_request(coefficient_sign="integrand"), 0)
        self.assertEqual(a, b)

    def test_iprime_term(self):
        r = _request(chi=[.7], s=10)
        params = r.numeric_params()
        u, w = .5 + .2j, .3 - .1j
        bk = params.backend.with_values(Z_S1=u, Z_S2=w)
        local = SatakeParams(params.chi, params.zs, params.mu, bk,
                             params.chi_prime)
        for k in range(3):
            b = bessel_value(BesselDatum.from_params(local, mu=u), (k,))
            # q**((n - 2 + d2/2) k) = 3**k
            expect = u**-k*w**k*3.**k*b
            nptest.assert_allclose(iprime_term(r, k, local), expect)
            formal = iprime_term(r, k).evaluate(dict(bk.values))
            nptest.assert_allclose(complex(formal), expect)

    def test_iprime_support(self):
        r = _request(v2=1)
        self.assertEqual(r.v4, 2)
        for k in range(2):
            self.assertFalse(iprime_term(r, k))
        self.assertTrue(iprime_term(r, 2))

    def test_unit_scaling(self):
        pair = QuadraticSpacePair.hyperbolic(3, 2, 4)
        y = PointY(pair, [1, 8], [2, 2, 0, 0])
        a = theorem2_value(LocalFactorRequest(y, 1, kmax=0))
        b = theorem2_value(LocalFactorRequest(hyperbolic_point(pair), 1,
                                              kmax=0))
        self.assertEqual(a.terms[0][1], b.terms[0][1])


class SeriesCase(unittest.TestCase):
    def test_numeric(self):
        r = _request(chi=[1], s=10, kmax=1)
        res = theorem2_value(r)
        self.assertTrue(res.region_ok)
        self.assertEqual([k for k, t in res.terms], [0, 1])
        self.assertIsNotNone(res.tail)
        nptest.assert_allclose(res.value, res.terms[0][1] + res.terms[1][1])
        json.dumps(res.dict())

    def test_specialization(self):
        numeric = _request(chi=[1], s=10, kmax=1)
        symbolic = theorem2_value(_request(kmax=1))
        values = numeric.values()
        expect = [complex(t.evaluate(values)) for k, t in symbolic.terms]
        got = [t for k, t in theorem2_value(numeric).terms]
        nptest.assert_allclose(got, expect, rtol=1e-9)

    def test_region_error(self):
        with self.assertRaises(RegionError) as cm:
            theorem2_value(_request(chi=[1], s=.5, kmax=0))
        self.assertTrue(cm.exception.violations)
        res = theorem2_value(_request(chi=[1], s=.5, kmax=0,
                                      check_region=False))
        self.assertFalse(res.region_ok)
        self.assertTrue(res.violations)
        self.assertIsNone(res.tail)

    def test_symbolic_dict(self):
        res = theorem2_value(_request(kmax=0))
        d = res.dict()
        self.assertIsInstance(d["terms"][0][1], str)
        self.assertIsNone(d["tail"])
