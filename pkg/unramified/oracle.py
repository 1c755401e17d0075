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

"""Brute-force cross-checks of the closed formulas: lattice sums of the
p-adic integrals, tableau enumeration, contour quadrature and exact
group identities. Each check returns OracleReport objects."""

import cmath
import logging
import math
import warnings
from fractions import Fraction
from itertools import product

import numpy as np
from scipy.integrate import trapezoid
from sympy.utilities.iterables import partitions

from .bessel import (BesselDatum, bessel_value, s_sum, weyl_enumerate,
                     MAX_RANK)
from .groups import (DomainError, GPair, RingMatrix, G1, iota, iota1, is_so,
                     preserves_form, special_elements, displayed_images,
                     torus_H, embed_so5_in_H)
from .localfactor import (LocalFactorRequest, gamma_gl1_gln, laurent_integrand,
                          c_ks, theorem2_value)
from .name_mixin import NameMixin
from .padic import (LatticeDomain, NonConstancyError,
                    PrecisionError, additive_character, padic,
                    integrate_locally_constant)
from .ring import RationalFunction, Symbolic, coeff_extract, schur_poly
from .utils import public
from .weil import (QuadraticSpacePair, hyperbolic_point, lemma41_lhs_rhs,
                   mellin_H, mellin_closed_form, mellin_profile_closed_form,
                   h_two, shell_torus)
from .whittaker import SatakeParams, eval_W_rho


logger = logging.getLogger(__name__)


@public
class PoleError(ValueError):
    pass


def _encode(x):
    if isinstance(x, (RationalFunction, RingMatrix)):
        return str(x)
    if x is None or isinstance(x, bool):
        return x
    x = complex(x)
    return [x.real, x.imag]


@public
class OracleReport:
    """A closed value against its brute-force counterpart.

    Exact reports compare RationalFunction or Fraction values with ==,
    numeric ones against `tolerance` relative to max(1, |closed|).
    """
    def __init__(self, name, closed, brute, window=None, tolerance=0,
                 exact=False, gated=True, inconclusive=False, detail=None):
        self.name = name
        self.closed = closed
        self.brute = brute
        self.window = window
        self.tolerance = tolerance
        self.exact = exact
        self.gated = gated
        self.inconclusive = inconclusive
        self.detail = detail
        if brute is None:
            self.abs_err = self.rel_err = math.inf
            self.passed = False
        elif exact:
            equal = closed == brute
            self.abs_err = self.rel_err = 0. if equal else math.inf
            self.passed = bool(equal)
        else:
            self.abs_err = abs(complex(closed) - complex(brute))
            self.rel_err = self.abs_err/max(1., abs(complex(closed)))
            self.passed = self.rel_err <= tolerance
        logger.info("%s: %s (rel err %g, window %s)", name,
                    "pass" if self.passed else "FAIL", self.rel_err, window)

    def dict(self):
        return {"name": self.name, "closed": _encode(self.closed),
                "brute": _encode(self.brute),
                "window": None if self.window is None else list(self.window),
                "abs_err": self.abs_err, "rel_err": self.rel_err,
                "passed": self.passed, "gated": self.gated,
                "inconclusive": self.inconclusive, "detail": self.detail}

    def __repr__(self):
        return "OracleReport({!r}, passed={})".format(self.name, self.passed)


def torus_grid(p, radius=1):
    """Torus elements (diag(a1, d/a1), diag(a2, 1/(d a2))) of G with
    valuations of a1, a2, d in [-radius, radius]."""
    p = Fraction(p)
    for i, j, e in product(range(-radius, radius + 1), repeat=3):
        a1, a2, d = p**i, p**j, p**e
        yield (i, j, e), GPair(RingMatrix.diag([a1, d/a1]),
                               RingMatrix.diag([a2, 1/(d*a2)]))


@public
def oracle_lemma41(pair, y, grid=None, radius=1, threads=1,
                   check_constancy=True):
    """Weil action rho(t) f(y, 1) against the U2-integral of Phi_y."""
    grid = torus_grid(pair.p, radius) if grid is None else grid
    reports = []
    for key, t in grid:
        name = "lemma41 t={}".format(key)
        try:
            lhs, rhs, windows = lemma41_lhs_rhs(
                y, t, threads=threads, check_constancy=check_constancy,
                return_windows=True)
        except NonConstancyError as e:
            reports.append(OracleReport(name, None, None, detail=str(e)))
            continue
        reports.append(OracleReport(name, lhs, rhs, windows, tolerance=1e-9))
    return reports


@public
def oracle_mellin(pair, y, reading="profile", cutoff=None, extra=4):
    """Valuation sum of H_{2,y} with exact tails, in symbolic q.

    The profile reading is checked coefficient by coefficient against
    h_two past the cutoff, for independence of the cutoff and against the
    summed profile series. The comparison with c(q^{s2}, y2) zeta(-s2)^2
    is reported ungated, as is the displayed reading.
    """
    bk = Symbolic()
    v = y.val2
    k = v + 4 if cutoff is None else cutoff
    window = (-v, k)
    tag = "mellin val(y2)={} {}".format(v, reading)
    brute = mellin_H(pair, y, reading=reading, cutoff=cutoff, backend=bk)
    if reading != "profile":
        return [OracleReport(tag + " profile sum",
                             mellin_profile_closed_form(pair, y, bk), brute,
                             window, exact=True, gated=False)]
    reports = []
    bad = [i for i in range(-v, k + extra + 1)
           if coeff_extract(brute, "Z_S2", i, "zero") !=
           h_two(y, shell_torus(pair, i), bk.q)]
    reports.append(OracleReport(tag + " coefficients", True, not bad,
                                (-v, k + extra), exact=True,
                                detail={"mismatch": bad} if bad else None))
    other = mellin_H(pair, y, cutoff=k + extra, backend=bk)
    reports.append(OracleReport(tag + " cutoff", other, brute, window,
                                exact=True))
    reports.append(OracleReport(tag + " profile sum",
                                mellin_profile_closed_form(pair, y, bk),
                                brute, window, exact=True))
    reports.append(OracleReport(tag + " stated", mellin_closed_form(v, bk),
                                brute, window, exact=True, gated=False))
    return reports


def semistandard_tableaux(shape, n):
    """Row-major backtracking over fillings with entries 1..n, rows weakly
    increasing and columns strictly increasing."""
    shape = [r for r in shape if r]
    cells = [(i, j) for i, r in enumerate(shape) for j in range(r)]
    tab = [[0]*r for r in shape]

    def fill(pos):
        if pos == len(cells):
            yield [row[:] for row in tab]
            return
        i, j = cells[pos]
        lo = 1
        if j > 0:
            lo = max(lo, tab[i][j - 1])
        if i > 0:
            lo = max(lo, tab[i - 1][j] + 1)
        for v in range(lo, n + 1):
            tab[i][j] = v
            yield from fill(pos + 1)
        tab[i][j] = 0

    yield from fill(0)


def tableau_sum(shape, n):
    """Generating function sum_T x^T over semistandard tableaux."""
    total = RationalFunction.zero()
    for t in semistandard_tableaux(shape, n):
        exps = [0]*n
        for row in t:
            for v in row:
                exps[v - 1] += 1
        mono = RationalFunction.one()
        for i, e in enumerate(exps):
            if e:
                mono = mono*RationalFunction.var("X{}".format(i + 1), e)
        total = total + mono
    return total


@public
def oracle_schur(n, max_size=6):
    """Bialternant against the tableau expansion for every partition of
    size at most max_size with at most n parts."""
    if not 1 <= n <= 4:
        raise ValueError("oracle_schur covers 1 <= n <= 4")
    checked, failures = 0, []
    for size in range(max_size + 1):
        for part in partitions(size, m=n):
            lam = sorted((k for k, m in part.items() for _ in range(m)),
                         reverse=True) if size else []
            lam = tuple(lam) + (0,)*(n - len(lam))
            checked += 1
            if schur_poly(lam) != tableau_sum(lam, n):
                failures.append(list(lam))
    return OracleReport("schur n={}".format(n), Fraction(checked),
                        Fraction(checked - len(failures)),
                        (n, max_size), exact=True,
                        detail={"failures": failures} if failures else None)


def _fourier_one_o(x, p):
    """Fourier transform of 1_O at x as a character sum over O/p^m O."""
    m = max(0, -x.val)
    domain = LatticeDomain(p, [(0, m)])
    return integrate_locally_constant(
        lambda t: additive_character(x*t), domain).value


def _shell_integral(f, p, m):
    unit = padic(Fraction(p)**m, p)
    domain = LatticeDomain(p, [(0, 1)])
    return integrate_locally_constant(lambda u: f(unit*u), domain,
                                      measure="multiplicative").value


@public
def oracle_gamma_tate(p, chi, s, shells=6, tolerance=1e-6):
    """Local functional equation at n = 1: Z(1-s, f^, chi^-1)/Z(s, f, chi)
    for f = 1_O, each Tate integral summed over valuation shells with an
    exact geometric tail."""
    chi = complex(chi)
    a = chi*complex(p)**(-complex(s))
    b = complex(p)**(-(1 - complex(s)))/chi
    if abs(1 - a) < 1e-9 or abs(1 - b) < 1e-9:
        raise PoleError("L-factor pole at s = {}".format(s))
    if abs(a) >= 1 or abs(b) >= 1:
        raise PoleError("s = {} is outside the strip where both Tate "
                        "integrals converge".format(s))

    def one_o(x):
        return 1 if x.is_zero or x.val >= 0 else 0

    def fhat(x):
        return _fourier_one_o(x, p)

    z = sum(a**m*_shell_integral(one_o, p, m) for m in range(shells + 1))
    z += a**(shells + 1)/(1 - a)
    zhat = sum(b**m*_shell_integral(fhat, p, m)
               for m in range(-shells, shells + 1))
    zhat += b**(shells + 1)/(1 - b)
    params = SatakeParams.numeric([chi], s, p)
    closed = gamma_gl1_gln(params, params.chi_prime, params.zs)
    return OracleReport("gamma p={} chi={} s={}".format(p, chi, s),
                        closed, zhat/z, (-shells, shells),
                        tolerance=tolerance)


def _s0_roots(request, params):
    """Roots in mu of S(0), a Laurent polynomial of degree n_d in mu,
    from its values at 2 n_d + 1 roots of unity."""
    n_d = request.bessel_datum(params, 1).n_d
    if not n_d:
        return np.zeros(0)
    m = 2*n_d + 1
    nodes = np.exp(2j*math.pi*np.arange(m)/m)
    zero = (0,)*request.n
    g = np.array([complex(s_sum(request.bessel_datum(params, mu), zero)) *
                  mu**n_d for mu in nodes])
    coeffs = np.fft.fft(g)/m
    coeffs[np.abs(coeffs) < 1e-12*np.abs(coeffs).max()] = 0
    return np.roots(coeffs[::-1])


def contour_radii(request):
    """Radii (rho1, rho2) of the tori realizing the expansions in q^{s1}
    about infinity and in q^{s2} about zero."""
    params = request.numeric_params()
    zs = abs(params.zs)
    cs = [abs(c)*zs for c in params.chi]
    poles = [max(c, 1/c) for c in cs]
    poles.extend(abs(r) for r in _s0_roots(request, params))
    rho1 = 4*max(poles)
    d1 = request.pair.d1
    q = float(request.pair.p)
    rho2 = 0.5*min([1., q**(2 - d1/2)] +
                   [abs(params.chi_prime)*c*rho1 for c in cs])
    return rho1, rho2


def _exponents(request, k):
    if request.coefficient_sign == "stated":
        return k, -k
    return -k, k


def contour_grid(request, k, points=64):
    """Samples of the Laurent product times the extraction monomial on the
    torus |q^{s1}| = rho1, |q^{s2}| = rho2."""
    if request.n > 2:
        raise ValueError("the contour quadrature runs at n <= 2")
    params = request.numeric_params()
    rho1, rho2 = contour_radii(request)
    theta = np.linspace(0, 2*math.pi, points + 1)
    z1 = rho1*np.exp(1j*theta)
    z2 = rho2*np.exp(1j*theta)
    e1, e2 = _exponents(request, k)
    values = np.empty((points + 1, points + 1), dtype=complex)
    peak = 0.
    for i, u in enumerate(z1):
        for j, v in enumerate(z2):
            bk = params.backend.with_values(Z_S1=u, Z_S2=v)
            local = SatakeParams(params.chi, params.zs, params.mu, bk,
                                 params.chi_prime)
            f = complex(laurent_integrand(request, k, local))
            peak = max(peak, abs(f))
            values[i, j] = f*u**e1*v**e2
    return theta, values, peak, (rho1, rho2)


@public
def oracle_contour(request, k, points=64, tolerance=1e-6, grid=None):
    """C_{k,s} from coefficient extraction against a trapezoid rule for the
    double contour integral of the Laurent product."""
    grid = grid or contour_grid(request, k, points)
    theta, values, peak, (rho1, rho2) = grid
    inner = trapezoid(values, theta, axis=1)/(2*math.pi)
    brute = trapezoid(inner, theta)/(2*math.pi)
    closed = c_ks(request, k)
    return OracleReport("contour n={} k={}".format(request.n, k), closed,
                        brute, (points, rho1, rho2), tolerance=tolerance,
                        detail={"peak": peak})


@public
def oracle_cauchy(request, k, points=64, grid=None):
    """|C_{k,s}| against the Cauchy estimate max|f| rho1^e1 rho2^e2 on
    the extraction torus."""
    grid = grid or contour_grid(request, k, points)
    _, _, peak, (rho1, rho2) = grid
    e1, e2 = _exponents(request, k)
    bound = peak*rho1**e1*rho2**e2
    value = abs(c_ks(request, k))
    return OracleReport("cauchy n={} k={}".format(request.n, k), True,
                        value <= bound*(1 + 1e-9), (points, rho1, rho2),
                        exact=True, detail={"value": value, "bound": bound})


def _random_sl2(rng, size=3):
    """Product of two elementary matrices with small integer entries."""
    a, b = (int(x) for x in rng.randint(-size, size + 1, 2))
    u = RingMatrix([[1, a], [0, 1]])
    low = RingMatrix([[1, 0], [b, 1]])
    return u @ low


def _random_pair(rng):
    g1 = _random_sl2(rng) @ RingMatrix.diag(
        [Fraction(2), Fraction(1, 2)])
    return GPair(g1, _random_sl2(rng))


EXPECTED_CORRECTIONS = {
    "M1": [], "N1": [],
    "G1": [(1, 3), (2, 1)],
    "N2": [(0, 1), (0, 3), (0, 4), (1, 4), (3, 4)],
}


@public
def oracle_embeddings(samples=1000, seed=0, ns=(2, 3)):
    """Homomorphism and form checks of iota1, iota2, the printed subgroup
    images and the special Weyl elements."""
    rng = np.random.RandomState(seed)
    hom1 = hom = so4 = so5 = 0
    for _ in range(samples):
        g, h = _random_pair(rng), _random_pair(rng)
        m, mh, mgh = iota1(g), iota1(h), iota1(g @ h)
        hom1 += mgh == m @ mh
        so4 += is_so(m)
        big = iota(g)
        hom += iota(g @ h) == big @ iota(h)
        so5 += is_so(big)
    reports = [OracleReport("iota1 homomorphism", samples, hom1, exact=True),
               OracleReport("iota1 in SO4", samples, so4, exact=True),
               OracleReport("iota homomorphism", samples, hom, exact=True),
               OracleReport("iota in SO5", samples, so5, exact=True)]
    minus = GPair(RingMatrix.diag([-1, -1]), RingMatrix.diag([-1, -1]))
    reports.append(OracleReport("iota kernel", RingMatrix.identity(5),
                                iota(minus), exact=True))
    for name, (image, printed, cells) in sorted(displayed_images().items()):
        ok = is_so(image)
        if name in EXPECTED_CORRECTIONS:
            ok = ok and cells == EXPECTED_CORRECTIONS[name]
        else:
            ok = ok and all(0 < i < 4 and 0 < j < 4 for i, j in cells)
        reports.append(OracleReport(name + "' image", True, ok, exact=True,
                                    detail={"corrected": cells}))
    for n in ns:
        elems = special_elements(n)
        for key in ("w", "w0", "w0_tilde"):
            reports.append(OracleReport("{} n={}".format(key, n), True,
                                        is_so(elems[key]), exact=True))
        wp = elems["w_prime"]
        reports.append(OracleReport("w_prime n={}".format(n), True,
                                    preserves_form(wp), exact=True))
        pad = embed_so5_in_H(iota(_random_pair(rng)), n)
        reports.append(OracleReport("embedding n={}".format(n), True,
                                    is_so(pad), exact=True))
    return reports


@public
def oracle_weyl(n, delta=None):
    """Exact invariance of S under the type B Weyl group and exact
    division by the Weyl denominator, in the formal parameters."""
    if not 1 <= n <= MAX_RANK:
        raise ValueError("rank out of range")
    delta = (1,) + (0,)*(n - 1) if delta is None else tuple(delta)
    params = SatakeParams.formal(n)
    datum = BesselDatum.from_params(params)
    base = s_sum(datum, delta)
    group = weyl_enumerate(n)
    reports = [OracleReport("weyl order n={}".format(n),
                            2**n*math.factorial(n), len(group), exact=True),
               OracleReport("S divisible n={}".format(n), True,
                            base.is_laurent, exact=True)]
    # simple reflections generate the group
    gens = [w for w in group if sum(s == -1 for s in w.signs) == 1 and
            w.signs[-1] == -1 and w.perm == tuple(range(n))]
    for i in range(n - 1):
        perm = list(range(n))
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
        gens.append([w for w in group if w.perm == tuple(perm) and
                     all(s == 1 for s in w.signs)][0])
    invariant = all(s_sum(datum.with_chi(w.act(datum.chi_s)), delta) == base
                    for w in gens)
    reports.append(OracleReport("S invariant n={}".format(n), True,
                                invariant, exact=True))
    return reports


def _bessel_v(y2, y3):
    """Unipotent element of V for n = 2."""
    h = Fraction(1, 2)
    one = y2**0
    rows = [[one if i == j else 0 for j in range(5)] for i in range(5)]
    rows[0][2], rows[2][4] = y2, -y2
    rows[0][3], rows[1][4] = y3, -y3
    rows[0][4] = -(y2*y2)*h
    return RingMatrix(rows)


@public
def bessel_lattice_sums(params, mus, delta, window=(1, 2), threads=1):
    """Lattice sums of the Bessel integral at n = 2, one per value of mu,
    with the V coordinates additive and the SO2 coordinate
    multiplicative. W_rho is evaluated once per coset."""
    if params.n != 2:
        raise ValueError("the Bessel lattice sum runs at n = 2")
    p = int(params.q)
    elems = special_elements(2)
    wt = elems["w_prime"] @ elems["w0_tilde"]
    wt_inv = wt.inverse()
    w0t = elems["w0_tilde"]
    w0t_inv = w0t.inverse()
    h = torus_H(delta, padic(p, p))
    m, mp = window
    domain = LatticeDomain(p, [(m, mp)]*3)
    cache = {}

    def base(y2, y3, b):
        key = (y2.to_rational(), y3.to_rational(), b.to_rational())
        try:
            return cache[key]
        except KeyError:
            pass
        v = w0t_inv @ _bessel_v(y2, y3) @ w0t
        x = wt_inv @ iota(G1(b)) @ wt
        arg = v[0, 1] + v[3, 0]*Fraction(1, 2)
        w = eval_W_rho(params, v @ x @ h)
        value = cache[key] = complex(w)*additive_character(arg)
        return value

    out = []
    for mu in mus:
        mu = complex(mu)
        res = integrate_locally_constant(
            lambda y2, y3, b, mu=mu: base(y2, y3, b)*mu**b.val, domain,
            ("additive", "additive", "multiplicative"), threads=threads)
        out.append(res.value)
    logger.info("Bessel lattice sums at delta %s: %d cosets evaluated",
                tuple(delta), len(cache))
    return out


@public
def oracle_bessel(params, mus, delta, window=(1, 2), tolerance=1e-2,
                  threads=1, **readings):
    """Lattice sums of the Bessel integral at n = 2 against the closed
    formula under `readings` (d_limit, normalization, sym2_reading,
    bf0_reading), one report per mu."""
    if params.n != 2:
        raise ValueError("the Bessel oracle runs at n = 2")
    if not isinstance(mus, (list, tuple)):
        mus = [mus]
    names = ["bessel delta={} mu={:.3g}".format(tuple(delta), complex(mu))
             for mu in mus]
    closed = [bessel_value(BesselDatum.from_params(params, mu, **readings),
                           delta) for mu in mus]
    try:
        brute = bessel_lattice_sums(params, mus, delta, window, threads)
    except (PrecisionError, DomainError) as e:
        return [OracleReport(name, c, None, window, tolerance,
                             inconclusive=True, detail=str(e))
                for name, c in zip(names, closed)]
    reports = [OracleReport(name, c, b, window, tolerance,
                            detail=dict(readings) or None)
               for name, c, b in zip(names, closed, brute)]
    for r in reports:
        if not r.passed:
            warnings.warn("{}: rel err {:g} at window {}".format(
                r.name, r.rel_err, window))
    return reports


@public
class Suite(NameMixin):
    """A named group of oracle checks run by `verify`."""
    _types = {}
    _default_type = "embeddings"
    default = True

    def run(self, config):
        raise NotImplementedError


@Suite.register
class EmbeddingsSuite(Suite):
    _type = "embeddings"

    def run(self, config):
        return oracle_embeddings(samples=config.samples, seed=config.seed)


@Suite.register
class Lemma41Suite(Suite):
    _type = "lemma41"

    def run(self, config):
        return oracle_lemma41(config.pair(), config.point(),
                              threads=config.threads)


@Suite.register
class MellinSuite(Suite):
    _type = "mellin"

    def run(self, config):
        pair = QuadraticSpacePair.hyperbolic(config.p, config.d1, config.d2)
        return [r for v in range(4)
                for r in oracle_mellin(pair, hyperbolic_point(pair, 0, v))]


@Suite.register
class SchurSuite(Suite):
    _type = "schur"

    def run(self, config):
        return [oracle_schur(n) for n in range(1, 5)]


@Suite.register
class GammaSuite(Suite):
    _type = "gamma"

    def run(self, config):
        p = config.p
        samples = [(1, 0.5), (1, 0.3), (-1, 0.7),
                   (cmath.exp(0.4j), 0.7), (cmath.exp(2.1j), 0.25)]
        return [oracle_gamma_tate(p, chi, s) for chi, s in samples]


@Suite.register
class WeylSuite(Suite):
    _type = "weyl"

    def run(self, config):
        return [r for n in (1, 2, 3) for r in oracle_weyl(n)]


BESSEL_MUS = (1, cmath.exp(0.9j), 0.8)


@Suite.register
class BesselSuite(Suite):
    _type = "bessel"

    def run(self, config):
        params = SatakeParams.numeric(config.chi_values(2), config.s_value(),
                                      config.p, unitary=True)
        window = tuple(config.window or (1, 2))
        readings = {"d_limit": config.d_limit,
                    "normalization": config.bessel_normalization,
                    "bf0_reading": config.bf0_reading}
        return [r for delta in ((0, 0), (1, 0), (1, 1), (2, 0))
                for r in oracle_bessel(params, BESSEL_MUS, delta, window,
                                       threads=config.threads, **readings)]


def _numeric_request(config, n, point=None, **kwargs):
    kwargs.setdefault("check_region", False)
    return LocalFactorRequest(
        config.point() if point is None else point, n,
        chi=config.chi_values(n),
        s=config.s_value(), d_limit=config.d_limit,
        normalization=config.bessel_normalization,
        alpha_reading=config.alpha_reading,
        coefficient_sign=config.coefficient_sign, **kwargs)


@Suite.register
class ContourSuite(Suite):
    _type = "contour"

    def run(self, config):
        reports = []
        for n, extra in (1, 3), (2, 2):
            request = _numeric_request(config, n)
            for k in range(request.v4, request.v4 + extra):
                grid = contour_grid(request, k)
                reports.append(oracle_contour(request, k, grid=grid))
                reports.append(oracle_cauchy(request, k, grid=grid))
        return reports


@public
def oracle_theorem2(request, tolerance=1e-9):
    """Support of the k-series, partial sums and agreement of the numeric
    series with the specialization of the symbolic one."""
    name = "theorem2 n={}".format(request.n)
    v4 = request.v4
    formal = LocalFactorRequest(
        request.y, request.n, kmax=request.kmax, d_limit=request.d_limit,
        normalization=request.normalization,
        alpha_reading=request.alpha_reading,
        coefficient_sign=request.coefficient_sign)
    # the Bessel factor vanishes off the dominant cone
    below = [k for k in range(max(0, v4 - 2), v4)
             if laurent_integrand(formal, k)]
    symbolic = theorem2_value(formal)
    reports = [OracleReport(name + " support", True, not below and [
        k for k, t in symbolic.terms][:1] == [v4], (0, v4), exact=True,
        detail={"nonzero": below} if below else None)]
    numeric = theorem2_value(request)
    values = request.values()
    for (k, t), (_, u) in zip(symbolic.terms, numeric.terms):
        reports.append(OracleReport(
            "{} k={}".format(name, k), complex(t.evaluate(values)), u,
            (v4, request.kmax), tolerance=tolerance))
    total = sum((t for k, t in numeric.terms), 0j)
    reports.append(OracleReport(name + " partial sum", total, numeric.value,
                                (v4, request.kmax), tolerance=tolerance))
    return reports


@Suite.register
class Theorem2Suite(Suite):
    _type = "theorem2"

    def run(self, config):
        pair = QuadraticSpacePair.hyperbolic(config.p, config.d1, config.d2)
        reports = []
        for n in 1, 2:
            for v in 0, 1:
                point = hyperbolic_point(pair, 0, v)
                request = _numeric_request(config, n, point,
                                           kmax=point.v4 + 1)
                reports.extend(oracle_theorem2(request))
        return reports


@public
def default_suites():
    return [name for name in Suite.names() if Suite.make(name).default]


@public
def run_suites(names, config):
    reports = []
    for name in names:
        logger.info("running suite %s", name)
        reports.extend(Suite.make(name).run(config))
    return reports
