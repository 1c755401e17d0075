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
import json
import os
import unittest

from numpy import testing as nptest

from unramified.bessel import BesselDatum, bessel_value
from unramified.formats import RunConfig
from unramified.localfactor import LocalFactorRequest
from unramified.oracle import *
from unramified.oracle import (BESSEL_MUS, contour_grid, contour_radii,
                               semistandard_tableaux, torus_grid)
from unramified.weil import QuadraticSpacePair, hyperbolic_point
from unramified.whittaker import SatakeParams


class ReportCase(unittest.TestCase):
    def test_numeric(self):
        r = OracleReport("x", 2., 2. + 1e-12, tolerance=1e-9)
        self.assertTrue(r.passed)
        r = OracleReport("x", 2., 3., tolerance=1e-9)
        self.assertFalse(r.passed)
        nptest.assert_allclose(r.rel_err, .5)

    def test_missing(self):
        r = OracleReport("x", 1., None)
        self.assertFalse(r.passed)
        json.dumps(r.dict(), allow_nan=True)


class TableauxCase(unittest.TestCase):
    def test_counts(self):
        self.assertEqual(len(list(semistandard_tableaux((1,), 3))), 3)
        self.assertEqual(len(list(semistandard_tableaux((2, 1), 3))), 8)
        self.assertEqual(len(list(semistandard_tableaux((1, 1, 1, 1), 3))),
                         0)

    def test_schur(self):
        for n in 1, 2, 3:
            r = oracle_schur(n)
            self.assertTrue(r.passed, r.detail)
        with self.assertRaises(ValueError):
            oracle_schur(5)


class GammaCase(unittest.TestCase):
    def test_trivial(self):
        for chi, s in (1, .5), (-1, .7), (cmath.exp(.4j), .3):
            self.assertTrue(oracle_gamma_tate(3, chi, s).passed, (chi, s))
        self.assertTrue(oracle_gamma_tate(5, 1, .6).passed)

    def test_pole(self):
        with self.assertRaises(PoleError):
            oracle_gamma_tate(3, 1, 1)
        with self.assertRaises(PoleError):
            oracle_gamma_tate(3, 1, 2)


class WeilCase(unittest.TestCase):
    def setUp(self):
        self.pair = QuadraticSpacePair.hyperbolic(3, 2, 4)

    def test_grid(self):
        self.assertEqual(len(list(torus_grid(3, 1))), 27)

    def test_torus_identity(self):
        reports = oracle_lemma41(self.pair, hyperbolic_point(self.pair))
        self.assertEqual(len(reports), 27)
        for r in reports:
            self.assertTrue(r.passed, r.name)

    def test_torus_identity_p5(self):
        pair = QuadraticSpacePair.hyperbolic(5, 2, 6)
        for r in oracle_lemma41(pair, hyperbolic_point(pair, 1, 1)):
            self.assertTrue(r.passed, r.name)

    @unittest.skipUnless(os.environ.get("UNRAMIFIED_SLOW"), "slow grid")
    def test_torus_identity_grid(self):
        for p in 3, 5:
            for d1, d2 in (2, 4), (2, 6), (4, 6):
                pair = QuadraticSpacePair.hyperbolic(p, d1, d2)
                for v1, v2 in (0, 0), (0, 1), (1, 1), (0, 2):
                    y = hyperbolic_point(pair, v1, v2)
                    for r in oracle_lemma41(pair, y):
                        self.assertTrue(r.passed, (p, d1, d2, v1, v2,
                                                   r.name))

    def test_mellin(self):
        for d2 in 4, 8:
            pair = QuadraticSpacePair.hyperbolic(3, 2, d2)
            for v in range(3):
                reports = oracle_mellin(pair, hyperbolic_point(pair, 0, v))
                self.assertEqual(len(reports), 4)
                for r in reports:
                    self.assertEqual(r.passed, r.gated, (d2, v, r.name))

    def test_mellin_displayed(self):
        r, = oracle_mellin(self.pair, hyperbolic_point(self.pair),
                           "displayed")
        self.assertFalse(r.passed)
        self.assertFalse(r.gated)


class GroupCase(unittest.TestCase):
    def test_embeddings(self):
        for r in oracle_embeddings(samples=10):
            self.assertTrue(r.passed, r.name)

    def test_weyl(self):
        for n in 1, 2, 3:
            for r in oracle_weyl(n):
                self.assertTrue(r.passed, r.name)


class ContourCase(unittest.TestCase):
    def setUp(self):
        self.pair = QuadraticSpacePair.hyperbolic(3, 2, 4)

    def test_coefficients(self):
        request = LocalFactorRequest(hyperbolic_point(self.pair), 1,
                                     chi=[1], s=.3)
        for k in 0, 1:
            grid = contour_grid(request, k)
            r = oracle_contour(request, k, grid=grid)
            self.assertTrue(r.passed, (k, r.closed, r.brute))
            r = oracle_cauchy(request, k, grid=grid)
            self.assertTrue(r.passed, r.detail)

    def test_rank_two(self):
        chi = [cmath.exp(.4j), cmath.exp(2.1j)]
        request = LocalFactorRequest(hyperbolic_point(self.pair), 2,
                                     chi=chi, s=.3)
        rho1, rho2 = contour_radii(request)
        self.assertGreater(rho1, 4*3**-.3)
        self.assertLess(rho2, .5 + 1e-12)
        grid = contour_grid(request, 0)
        r = oracle_contour(request, 0, grid=grid)
        self.assertTrue(r.passed, (r.closed, r.brute))
        self.assertTrue(oracle_cauchy(request, 0, grid=grid).passed)

    def test_cauchy_ratio(self):
        # C_k grows at most like (rho1/rho2)^k
        request = LocalFactorRequest(hyperbolic_point(self.pair), 1,
                                     chi=[cmath.exp(.4j)], s=.3)
        for k in 0, 1, 2:
            r = oracle_cauchy(request, k, points=32)
            self.assertTrue(r.passed, (k, r.detail))
            self.assertGreater(r.detail["bound"], 0)

    def test_rank(self):
        request = LocalFactorRequest(hyperbolic_point(self.pair), 3,
                                     chi=[1, 1j, -1j], s=.3)
        with self.assertRaises(ValueError):
            oracle_contour(request, 0)


class Theorem2Case(unittest.TestCase):
    def test_reports(self):
        pair = QuadraticSpacePair.hyperbolic(3, 2, 4)
        request = LocalFactorRequest(hyperbolic_point(pair, 0, 1), 1,
                                     chi=[cmath.exp(.4j)], s=10, kmax=3)
        reports = oracle_theorem2(request)
        self.assertEqual(reports[0].name, "theorem2 n=1 support")
        self.assertEqual(len(reports), 4)
        for r in reports:
            self.assertTrue(r.passed, r.name)


class SuiteCase(unittest.TestCase):
    def test_registry(self):
        self.assertEqual(Suite.names(), ["bessel", "contour", "embeddings",
                                         "gamma", "lemma41", "mellin",
                                         "schur", "theorem2", "weyl"])
        self.assertEqual(default_suites(), Suite.names())
        with self.assertRaises(KeyError):
            Suite.make("nonexistent")

    def test_samples(self):
        config = RunConfig(samples=3)
        reports = Suite.make("embeddings").run(config)
        self.assertEqual(reports[0].closed, 3)


class BesselCase(unittest.TestCase):
    def setUp(self):
        chi = [cmath.exp(.4j), cmath.exp(2.1j)]
        self.params = SatakeParams.numeric(chi, .3, 3, unitary=True)

    def test_rank(self):
        with self.assertRaises(ValueError):
            oracle_bessel(SatakeParams.numeric([1], .3, 3), 1, (0,))

    def test_readings_differ(self):
        # a lattice sum can agree with at most one of these readings
        for mu in BESSEL_MUS:
            a = bessel_value(BesselDatum.from_params(self.params, mu),
                             (1, 0))
            b = bessel_value(BesselDatum.from_params(self.params, mu,
                                                     d_limit="n-1"), (1, 0))
            self.assertGreater(abs(a - b), .02*max(1, abs(a)), mu)

    def test_small_window(self):
        reports = oracle_bessel(self.params, [1, .8], (0, 0), window=(0, 0))
        self.assertEqual([r.window for r in reports], [(0, 0)]*2)
        for r in reports:
            self.assertTrue(r.gated)
            self.assertIsNotNone(r.brute)

    @unittest.skipUnless(os.environ.get("UNRAMIFIED_SLOW"),
                         "slow lattice sum")
    def test_agreement(self):
        for delta in (0, 0), (1, 0), (2, 0):
            for r in oracle_bessel(self.params, BESSEL_MUS, delta):
                self.assertTrue(r.passed, (r.name, r.closed, r.brute))
            for r in oracle_bessel(self.params, BESSEL_MUS, delta,
                                   d_limit="n-1"):
                self.assertFalse(r.passed, r.name)
