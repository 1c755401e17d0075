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

"""Quadratic space pairs, the points y of Y', the Weil representation on
the Borel subgroup of G and the Whittaker realization Phi_y of the basic
function."""

import logging
import math
from fractions import Fraction

from .groups import GPair, RingMatrix, DomainError
from .padic import (PAdicScalar, PrecisionError, DEFAULT_PRECISION,
                    LatticeDomain, additive_character, padic,
                    integrate_locally_constant)
from .ring import Symbolic
from .utils import public, valuation, q_exponent_power


logger = logging.getLogger(__name__)


@public
class UnsupportedElementError(ValueError):
    pass


def _vec_val(y):
    return min(x.val for x in y)


@public
class QuadraticSpacePair:
    """(V1, Q) and (V2, Q') with Q(y) = y^T G y / 2 for Gram matrices
    invertible over O."""
    def __init__(self, p, gram1, gram2, prec=DEFAULT_PRECISION):
        if p < 3 or p % 2 == 0:
            raise ValueError("p must be an odd prime, got {}".format(p))
        self.p = p
        self.prec = prec
        self.gram1 = self._check_gram(gram1, "gram1")
        self.gram2 = self._check_gram(gram2, "gram2")
        self.d1, self.d2 = len(self.gram1), len(self.gram2)

    def _check_gram(self, gram, name):
        gram = [[Fraction(x) for x in row] for row in gram]
        d = len(gram)
        if d == 0 or d % 2:
            raise ValueError("{}: dimension must be even and positive, "
                             "got {}".format(name, d))
        if any(len(row) != d for row in gram):
            raise ValueError("{} must be square".format(name))
        if any(gram[i][j] != gram[j][i] for i in range(d) for j in range(d)):
            raise ValueError("{} must be symmetric".format(name))
        if any(valuation(x, self.p) < 0 for row in gram for x in row):
            raise ValueError("{} must be invertible over O: non-integral "
                             "entry".format(name))
        det = RingMatrix(gram).det()
        if valuation(det, self.p) != 0:
            raise ValueError("{} must be invertible over O: det {} is not a "
                             "unit".format(name, det))
        return gram

    @classmethod
    def hyperbolic(cls, p, d1=2, d2=2, prec=DEFAULT_PRECISION):
        """Sums of hyperbolic planes, Q(x, y) = x y on each plane."""
        def gram(d):
            return [[1 if i ^ 1 == j else 0 for j in range(d)]
                    for i in range(d)]
        return cls(p, gram(d1), gram(d2), prec)

    @property
    def beta1(self):
        return Fraction(self.d1, 2)

    @property
    def beta2(self):
        return Fraction(self.d2, 2)

    def _form(self, gram, y):
        out = PAdicScalar.zero(self.p)
        for i, row in enumerate(gram):
            for j, g in enumerate(row):
                if g:
                    out = out + y[i]*y[j]*g
        return out*Fraction(1, 2)

    def q1(self, y1):
        return self._form(self.gram1, y1)

    def q2(self, y2):
        return self._form(self.gram2, y2)

    def vector(self, coords):
        return tuple(padic(x, self.p, self.prec) for x in coords)

    def dict(self):
        return {"p": self.p, "precision": self.prec,
                "gram1": [[str(x) for x in r] for r in self.gram1],
                "gram2": [[str(x) for x in r] for r in self.gram2]}


@public
def eval_forms(pair, y):
    return pair.q1(y.y1), pair.q2(y.y2)


@public
def is_in_Yprime(pair, y1, y2):
    y1, y2 = pair.vector(y1), pair.vector(y2)
    if len(y1) != pair.d1 or len(y2) != pair.d2:
        raise ValueError("point dimensions do not match the pair")
    if all(x.is_zero for x in y1) or all(x.is_zero for x in y2):
        return False
    q1, q2 = pair.q1(y1), pair.q2(y2)
    diff = q1 - q2*2
    if diff.is_zero and min(q1.absprec, q2.absprec) <= 0:
        raise PrecisionError("coordinates too coarse to decide "
                             "Q(y1) = 2Q'(y2)")
    return diff.is_zero


@public
class PointY:
    """A point (y1, y2) with Q(y1) = 2 Q'(y2) and y1, y2 nonzero."""
    def __init__(self, pair, y1, y2):
        if not is_in_Yprime(pair, y1, y2):
            raise ValueError("point is not in Y': need y1, y2 nonzero and "
                             "Q(y1) = 2Q'(y2)")
        self.pair = pair
        self.y1, self.y2 = pair.vector(y1), pair.vector(y2)
        self.val1, self.val2 = _vec_val(self.y1), _vec_val(self.y2)
        self.q1, self.q2 = eval_forms(pair, self)
        self.v4 = (self.q2*4).val

    @property
    def integral(self):
        return self.val1 >= 0 and self.val2 >= 0

    def dict(self):
        return {"y1": [str(x) for x in self.y1],
                "y2": [str(x) for x in self.y2]}


@public
def a_y(y, n):
    """diag(-4Q'(y2), I_{n-1})."""
    return RingMatrix.diag([-(y.q2*4)] + [1]*(n - 1))


@public
class BasicFunction:
    """Indicator of V(O) x O^x."""
    def __call__(self, y1, y2, u):
        if not all(x.is_zero or x.val >= 0 for x in tuple(y1) + tuple(y2)):
            return 0
        return 1 if u.val == 0 else 0


def _norm_power(p, val, e):
    """|x|**e for val(x) = val."""
    return q_exponent_power(p, -Fraction(val)*e)


@public
def borel_element(torus, n1=0, n2=0):
    """(u(n1), u(n2)) t for a torus element t (ToricCoord or GPair)."""
    t = torus.to_pair() if hasattr(torus, "to_pair") else torus
    u = GPair([[1, n1], [0, 1]], [[1, n2], [0, 1]], check=False)
    return u @ t


@public
def weil_borel_action(pair, g, f, y1, y2, u=1):
    """(rho(g) f)(y1, y2, u) for g = (u(n1) t1, u(n2) t2) in the Borel of G.

    With t1 = diag(a1, d/a1) and t2 = diag(a2, 1/(d a2)):

        psi(u (n1 Q(y1) + n2 Q'(y2))) |a1|^(d1/2) |a2|^(d2/2)
            |d|^((d2-d1)/4) f(a1 y1, a2 y2, u/d)
    """
    g1, g2 = g.g1, g.g2
    if not (g1.is_upper_triangular() and g2.is_upper_triangular()):
        raise UnsupportedElementError("the Weil action is implemented on "
                                      "the Borel subgroup only")
    p = pair.p
    a1, a2 = padic(g1[0, 0], p), padic(g2[0, 0], p)
    d = a1*padic(g1[1, 1], p)
    n1 = padic(g1[0, 1], p)/padic(g1[1, 1], p)
    n2 = padic(g2[0, 1], p)/padic(g2[1, 1], p)
    y1, y2 = pair.vector(y1), pair.vector(y2)
    u = padic(u, p)
    value = f(tuple(x*a1 for x in y1), tuple(x*a2 for x in y2), u/d)
    if not value:
        return 0j
    scale = (_norm_power(p, a1.val, pair.beta1) *
             _norm_power(p, a2.val, pair.beta2))
    scale = scale*float(q_exponent_power(p, -Fraction(d.val) *
                                         Fraction(pair.d2 - pair.d1, 4)))
    phase = additive_character(u*(n1*pair.q1(y1) + n2*pair.q2(y2)))
    return complex(value)*float(scale)*phase


def _exact(q):
    return Fraction(q) if isinstance(q, int) else q


@public
def bracket_profile(q, beta, t):
    """1 - (q-1) sum_{k=1}^t q**((beta-2)k) for t >= 0, else 0."""
    q = _exact(q)
    if t < 0:
        return 0*q
    e = int(Fraction(beta) - 2)
    total = 1 + 0*q
    for k in range(1, t + 1):
        total = total - (q - 1)*q**(e*k)
    return total


@public
def whittaker_profile(q, beta, v, j):
    """h(j) = q**((2-beta)j) b(j + v), the value of Phi at |a| = q**-j."""
    q = _exact(q)
    if j < -v:
        return 0*q
    e = int(2 - Fraction(beta))
    return q**(e*j)*bracket_profile(q, beta, j + v)


@public
def phi_y(y, g, q=None):
    """Phi_y(g), left invariant under the lower unipotent of G and right
    K_G-invariant, through the lower Iwasawa decomposition of each
    component."""
    pair = y.pair
    q = pair.p if q is None else q
    j1 = min(x.val for x in (g.g1[0, 0], g.g1[0, 1]))
    j2 = min(x.val for x in (g.g2[0, 0], g.g2[0, 1]))
    if g.g1.det().val != 0:
        return 0*q
    return (whittaker_profile(q, pair.beta1, y.val1, j1) *
            whittaker_profile(q, pair.beta2, y.val2, j2))


@public
def h_one(y, t, q=None):
    """H_{1,y}(t) = |a1|^(d1/2-2) |a2|^(d2/2-2)."""
    pair = y.pair
    q = _exact(pair.p if q is None else q)
    j1, j2 = t.g1[0, 0].val, t.g2[0, 0].val
    return (q**int((2 - pair.beta1)*j1))*(q**int((2 - pair.beta2)*j2))


@public
def h_two(y, t, q=None):
    """H_{2,y}(t) = b1(val a1 + val y1) b2(val a2 + val y2)."""
    pair = y.pair
    q = pair.p if q is None else q
    j1, j2 = t.g1[0, 0].val, t.g2[0, 0].val
    return (bracket_profile(q, pair.beta1, j1 + y.val1) *
            bracket_profile(q, pair.beta2, j2 + y.val2))


@public
def h_torus(y, t, q=None):
    if t.g1.det().val != 0:
        return 0
    return h_one(y, t, q)*h_two(y, t, q)


@public
def alpha_factor(pair, y, reading="profile", q=None):
    """The constant alpha(y1, y2).

    "displayed" evaluates the printed product formula, "profile" the
    value H(1) of the Whittaker profile, which the torus identity forces.
    """
    q = pair.p if q is None else q
    q = _exact(q)
    if not y.integral:
        raise ValueError("alpha needs an integral point y")
    out = 1 + 0*q
    for d, v in ((pair.d1, y.val1), (pair.d2, y.val2)):
        beta = Fraction(d, 2)
        if reading == "profile":
            out = out*bracket_profile(q, beta, v)
            continue
        if reading != "displayed":
            raise ValueError("unknown alpha reading {!r}".format(reading))
        e = int(beta - 2)
        inner = 1 - (q - 1)*sum((q**(e*k) for k in range(1, v + 1)), 0*q)
        outer = 2 + sum((q**kk*inner for kk in range(1, v + 1)), 0*q)
        if isinstance(outer, int):
            outer = Fraction(outer)
        out = out/outer
    return out


def _component(pair, y, i, t, threads, check):
    p = pair.p
    g = t.g1 if i == 1 else t.g2
    beta = pair.beta1 if i == 1 else pair.beta2
    v = y.val1 if i == 1 else y.val2
    qy = y.q1 if i == 1 else y.q2
    x, w = padic(g[0, 0], p), padic(g[1, 1], p)
    unit_det = i == 2 or (x*w).val == 0
    e = qy.val
    lo = v + w.val
    hi = max(x.val - w.val, -e if e != math.inf else -lo, -lo)
    domain = LatticeDomain(p, [(lo, hi)], pair.prec)

    def integrand(n):
        if not unit_det:
            return 0
        j = min(x.val, (n*w).val)
        return whittaker_profile(p, beta, v, j)*additive_character(-(n*qy))

    res = integrate_locally_constant(integrand, domain,
                                     check_constancy=check, threads=threads)
    return res


@public
def lemma41_lhs_rhs(y, t, threads=1, check_constancy=True,
                    return_windows=False):
    """Both sides of the Whittaker realization identity at a torus element
    t of G: rho(t) f(y, 1) and the U2-integral of Phi_y(n t) against the
    inverse character psi(-n1 Q(y1) - n2 Q'(y2))."""
    pair = y.pair
    if not (t.g1.is_upper_triangular() and t.g2.is_upper_triangular()):
        raise DomainError("lemma41_lhs_rhs needs a torus element")
    lhs = weil_borel_action(pair, t, BasicFunction(), y.y1, y.y2, 1)
    r1 = _component(pair, y, 1, t, threads, check_constancy)
    r2 = _component(pair, y, 2, t, threads, check_constancy)
    rhs = r1.value*r2.value
    logger.info("torus identity at (%s, %s): lhs %s rhs %s", t.g1[0, 0],
                t.g2[0, 0], lhs, rhs)
    if return_windows:
        return lhs, rhs, r1.windows + r2.windows
    return lhs, rhs


@public
def c_s2(backend, v):
    """c(q^{s2}, y2) = 1 - q^{s2} + (q-1) q^{-val(y2) s2}."""
    z = backend.var("Z_S2")
    return 1 - z + (backend.q - 1)*z**(-v)


def _tail(z, k, v):
    """Exact sums over i > k of z**i and (i+v+1) z**i."""
    geo = z**(k + 1)/(1 - z)
    lin = z**(k + 1)*((k + v + 2) - (k + v + 1)*z)/(1 - z)**2
    return geo, lin


@public
def shell_torus(pair, i):
    """The torus element with a1 = 1 and a2 = p**i."""
    p = pair.p
    one = padic(1, p)
    a = padic(Fraction(p)**i, p)
    return GPair(RingMatrix.diag([one, one]), RingMatrix.diag([a, 1/a]),
                 check=False)


@public
def bracket_tail(backend, beta, k, v):
    """Exact sum over i > k of b(i + v) Z_S2**i, for k + v >= 0.

    With r = q**(beta-2) the profile is b(t) = A + B r**t, B = (q-1)r/(1-r),
    and b(t) = q - (q-1)(t+1) when r = 1.
    """
    q = backend.q
    z = backend.var("Z_S2")
    e = int(Fraction(beta) - 2)
    if e == 0:
        geo, lin = _tail(z, k, v)
        return q*geo - (q - 1)*lin
    r = q**e
    b = (q - 1)*r/(1 - r)
    return ((1 - b)*z**(k + 1)/(1 - z) +
            b*r**v*(r*z)**(k + 1)/(1 - r*z))


@public
def mellin_H(pair, y, reading="profile", cutoff=None, backend=None):
    """Mellin transform sum_i H_{2,y}(a2 = p^i) q^{i s2} as a rational
    function of Z_S2, from a finite valuation sum plus exact tails.

    "profile" sums h_two over the valuation shells i <= cutoff and closes
    the series with bracket_tail; "displayed" is the printed valuation sum.
    """
    backend = backend or Symbolic()
    v = y.val2
    q = backend.q
    z = backend.var("Z_S2")
    k = v + 4 if cutoff is None else cutoff
    if k < max(0, -v):
        raise ValueError("cutoff below the support of the profile")
    total = backend.zero
    if reading == "profile":
        for i in range(-v, k + 1):
            total = total + h_two(y, shell_torus(pair, i), q)*z**i
        b1 = bracket_profile(q, pair.beta1, y.val1)
        total = total + b1*bracket_tail(backend, pair.beta2, k, v)
    elif reading == "displayed":
        geo, lin = _tail(z, k, v)
        for i in range(-v, k + 1):
            total = total + ((q - 1)*(i + v) + 1)*z**i
        total = total + (q - 1)*lin - (q - 2)*geo
    else:
        raise ValueError("unknown Mellin reading {!r}".format(reading))
    return total


@public
def mellin_profile_closed_form(pair, y, backend=None):
    """b1(val y1) Z**-v (1 - q r Z) / ((1 - Z)(1 - r Z)), r = q**(beta2-2),
    the sum of the profile series."""
    backend = backend or Symbolic()
    q = backend.q
    z = backend.var("Z_S2")
    r = q**int(Fraction(pair.beta2) - 2)
    b1 = bracket_profile(q, pair.beta1, y.val1)
    return b1*z**(-y.val2)*(1 - q*r*z)/((1 - z)*(1 - r*z))


@public
def mellin_closed_form(v, backend=None):
    """The stated transform c(q^{s2}, y2) / (1 - q^{s2})**2."""
    backend = backend or Symbolic()
    z = backend.var("Z_S2")
    return c_s2(backend, v)/(1 - z)**2


@public
def hyperbolic_point(pair, v1=0, v2=0):
    """The point y2 = p^v2 (1, 1, 0, ...), y1 = (p^v1, 2 p^(2 v2 - v1), 0,
    ...) of Y', for pairs whose first planes are hyperbolic."""
    for gram in (pair.gram1, pair.gram2):
        if gram[0][0] or gram[1][1] or gram[0][1] != 1:
            raise ValueError("the first plane is not hyperbolic")
    if not 0 <= v1 <= v2:
        raise ValueError("need 0 <= v1 <= v2")
    p = Fraction(pair.p)
    y2 = [p**v2, p**v2] + [0]*(pair.d2 - 2)
    y1 = [p**v1, 2*p**(2*v2 - v1)] + [0]*(pair.d1 - 2)
    return PointY(pair, y1, y2)
