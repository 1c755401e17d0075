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

"""Assembly of the local integral: the GL1 x GLn gamma factor, the
double Laurent coefficients C_{k,s}, the k-series and its convergence
region."""

import logging
import math
import warnings
from fractions import Fraction

from .bessel import BesselDatum, bessel_value
from .ring import Symbolic, coeff_extract, zeta_v
from .utils import public
from .weil import alpha_factor, c_s2
from .whittaker import SatakeParams


logger = logging.getLogger(__name__)


@public
class RegionError(ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("outside the region of absolute convergence: " +
                         "; ".join(self.violations))


@public
def gamma_gl1_gln(params, chi_prime, zs):
    """gamma(s', chi' x tau) = L(1-s', chi'^-1 x tau^v)/L(s', chi' x tau)
    for q**-s' = zs, unramified so epsilon = 1."""
    bk = params.backend
    q = bk.q
    num = bk.one
    den = bk.one
    for c in params.chi:
        num = num*(1 - chi_prime*c*zs)
        den = den*(1 - 1/(chi_prime*c*q*zs))
    return num/den


@public
def region_lemma65(n, d1, d2, s, s1, s2, c1=None, c2=None):
    """Absolute convergence region of the double contour integral.

    Returns (ok, violations) with one message per violated inequality.
    """
    c1 = n + Fraction(d2, 2) + 2 if c1 is None else c1
    c2 = Fraction(d1, 2) + 3 if c2 is None else c2
    rs, r1, r2 = complex(s).real, complex(s1).real, complex(s2).real
    lo = r1 - r2 - 2 - d1/2
    hi = r1 - r2 + n + 1 - d1/2
    violations = []
    if not lo <= rs:
        violations.append("Re(s1) - Re(s2) - 2 - d1/2 <= Re(s): "
                          "{:g} > {:g}".format(lo, rs))
    if not rs <= hi:
        violations.append("Re(s) <= Re(s1) - Re(s2) + n + 1 - d1/2: "
                          "{:g} > {:g}".format(rs, hi))
    if not r1 > c1:
        violations.append("Re(s1) > C1 = {}: got {:g}".format(c1, r1))
    if not -r2 > c2:
        violations.append("Re(-s2) > C2 = {}: got {:g}".format(c2, -r2))
    return not violations, violations


@public
def default_contours(n, d1, d2, s, c2=None):
    """Contour abscissae (sigma1, sigma2) centered in the band."""
    c2 = Fraction(d1, 2) + 3 if c2 is None else c2
    sigma2 = -(float(c2) + 1)
    sigma1 = complex(s).real + d1/2 + (1 - n)/2 + sigma2
    return sigma1, sigma2


@public
class LocalFactorRequest:
    """Inputs of the local integral I_s(y).

    Without `chi` and `s` the request is symbolic in X_i and Z_S = q**-s
    with q = SQRT_Q**2; with both it is evaluated numerically at q = p.
    """
    def __init__(self, y, n, chi=None, s=None, chi_prime=1, kmax=6,
                 d_limit="n", normalization="spherical",
                 alpha_reading="profile", coefficient_sign="stated",
                 c1=None, c2=None, sigma=None, check_region=True):
        pair = y.pair
        if not pair.d2 > pair.d1:
            raise ValueError("the local integral needs d2 > d1, got d1 = {}, "
                             "d2 = {}".format(pair.d1, pair.d2))
        if not y.integral:
            raise ValueError("the point y must be integral")
        if (chi is None) != (s is None):
            raise ValueError("numeric mode needs both chi and s")
        if chi is not None and len(chi) != n:
            raise ValueError("need {} Satake parameters".format(n))
        if coefficient_sign not in ("stated", "integrand"):
            raise ValueError("unknown coefficient sign reading {!r}".format(
                coefficient_sign))
        self.y = y
        self.pair = pair
        self.n = n
        self.chi = chi
        self.s = s
        self.chi_prime = chi_prime
        self.kmax = kmax
        self.d_limit = d_limit
        self.normalization = normalization
        self.alpha_reading = alpha_reading
        self.coefficient_sign = coefficient_sign
        self.c1, self.c2 = c1, c2
        self.sigma = sigma
        self.check_region = check_region
        symbolic_cp = chi_prime if chi_prime in (1, -1) else "formal"
        self.formal = SatakeParams.formal(n, symbolic_cp)
        self._coefficients = {}

    @property
    def numeric(self):
        return self.chi is not None

    @property
    def v4(self):
        return self.y.v4

    def numeric_params(self):
        return SatakeParams.numeric(self.chi, self.s, self.pair.p,
                                    chi_prime=self.chi_prime)

    def values(self):
        """Numeric values of the formal variables."""
        return dict(self.numeric_params().backend.values)

    def contours(self):
        if self.sigma is not None:
            return tuple(self.sigma)
        return default_contours(self.n, self.pair.d1, self.pair.d2, self.s,
                                self.c2)

    def region(self):
        s1, s2 = self.contours()
        return region_lemma65(self.n, self.pair.d1, self.pair.d2, self.s,
                              s1, s2, self.c1, self.c2)

    def bessel_datum(self, params, mu):
        return BesselDatum.from_params(params, mu=mu, d_limit=self.d_limit,
                                       normalization=self.normalization)

    def dict(self):
        chi = None if self.chi is None else [
            [complex(c).real, complex(c).imag] for c in self.chi]
        s = None if self.s is None else [complex(self.s).real,
                                         complex(self.s).imag]
        return {"n": self.n, "chi": chi, "s": s, "kmax": self.kmax,
                "d_limit": self.d_limit,
                "normalization": self.normalization,
                "alpha_reading": self.alpha_reading,
                "coefficient_sign": self.coefficient_sign,
                "point": self.y.dict(), "pair": self.pair.dict()}


def _bessel_term(request, params, k):
    delta = (k - request.v4,) + (0,)*(request.n - 1)
    return bessel_value(request.bessel_datum(params, params.backend.var(
        "Z_S1")), delta)


@public
def laurent_prefactor(request, params=None):
    """c(q^{s2}, y2) zeta(-s2-d1/2+2)^2 zeta(-s2)^2 / gamma(s-s1+s2), with
    q^{s1} = Z_S1 and q^{s2} = Z_S2."""
    params = request.formal if params is None else params
    bk = params.backend
    z1, z2 = bk.var("Z_S1"), bk.var("Z_S2")
    c = c_s2(bk, request.y.val2)
    zeta_a = zeta_v(bk, s2=-1, const=2 - Fraction(request.pair.d1, 2))
    zeta_b = zeta_v(bk, s2=-1)
    gamma = gamma_gl1_gln(params, params.chi_prime, params.zs*z1/z2)
    return c*zeta_a**2*zeta_b**2/gamma


@public
def laurent_integrand(request, k, params=None):
    """The Laurent product whose coefficients give C_{k,s}; mu_{s1}
    enters the Bessel term as Z_S1."""
    params = request.formal if params is None else params
    b = _bessel_term(request, params, k)
    if not b:
        return params.backend.zero
    return laurent_prefactor(request, params)*b


@public
def iprime_term(request, k, params=None):
    """q^{(-s1+s2+n-2+d2/2)k} B(p_H^{delta_{k - val 4Q'(y2)}}), the k-th
    term of the s1, s2 series before the contour integration."""
    params = request.formal if params is None else params
    bk = params.backend
    z1, z2 = bk.var("Z_S1"), bk.var("Z_S2")
    expo = request.n - 2 + Fraction(request.pair.d2, 2)
    b = _bessel_term(request, params, k)
    if not b:
        return bk.zero
    return z1**(-k)*z2**k*bk.q_power(expo*k)*b


@public
def c_ks(request, k):
    """C_{k,s}(y): the (-k)-th coefficient in q^{s1} and the k-th in
    q^{s2} of the Laurent product, exact in the formal variables.

    Numeric requests specialize the exact coefficient.
    """
    try:
        value = request._coefficients[k]
    except KeyError:
        if k < request.v4:
            value = Symbolic().zero
        else:
            f = laurent_integrand(request, k)
            if request.coefficient_sign == "stated":
                e1, e2 = -k, k
            else:
                e1, e2 = k, -k
            value = coeff_extract(f, "Z_S2", e2, "zero")
            value = coeff_extract(value, "Z_S1", e1, "infinity")
        request._coefficients[k] = value
        logger.debug("C_{%d,s} = %s", k, value)
    if request.numeric:
        return complex(value.evaluate(request.values()))
    return value


@public
class SeriesResult:
    def __init__(self, terms, partials, tail, region_ok, violations):
        self.terms = terms
        self.partials = partials
        self.tail = tail
        self.region_ok = region_ok
        self.violations = violations

    @property
    def value(self):
        return self.partials[-1][1] if self.partials else 0

    def dict(self):
        def enc(x):
            if hasattr(x, "to_data"):
                return str(x)
            x = complex(x)
            return [x.real, x.imag]
        return {"terms": [[k, enc(t)] for k, t in self.terms],
                "partials": [[k, enc(t)] for k, t in self.partials],
                "tail": self.tail, "region_ok": self.region_ok,
                "violations": self.violations}


@public
def theorem2_value(request):
    """I_s(y) = alpha |4Q'(y2)|^(-s+1/2-n/2)
    sum_{k >= val 4Q'(y2)} q^((n-2+d2/2)k) C_{k,s}(y), truncated at kmax.

    The exponent of |4Q'(y2)| is taken analytic in s.
    """
    ok, violations = True, []
    if request.numeric:
        ok, violations = request.region()
        if not ok and request.check_region:
            raise RegionError(violations)
        params = request.numeric_params()
    else:
        params = request.formal
    bk = params.backend
    pair, y, n = request.pair, request.y, request.n
    v4 = request.v4
    alpha = alpha_factor(pair, y, request.alpha_reading, q=bk.q)
    pref = alpha*params.zs**(-v4)*bk.q_power(Fraction(v4*(n - 1), 2))
    expo = n - 2 + Fraction(pair.d2, 2)
    terms, partials = [], []
    total = bk.zero
    for k in range(v4, request.kmax + 1):
        term = pref*bk.q_power(expo*k)*c_ks(request, k)
        total = total + term
        terms.append((k, term))
        partials.append((k, total))
    tail = None
    if request.numeric and len(terms) >= 2:
        a, b = abs(terms[-2][1]), abs(terms[-1][1])
        if a == 0:
            tail = 0. if b == 0 else math.inf
        else:
            ratio = b/a
            if ratio < 1:
                tail = b*ratio/(1 - ratio)
            else:
                tail = math.inf
                warnings.warn("series terms do not decrease at k = {}, no "
                              "tail bound".format(terms[-1][0]))
    return SeriesResult(terms, partials, tail, ok, violations)
