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

"""Truncated p-adic scalars and exact integration of locally constant
functions over finite lattice windows."""

import cmath
import itertools
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import numpy as np
from fastcache import clru_cache
from sympy import isprime

from .utils import public, valuation, fsum_complex


logger = logging.getLogger(__name__)

DEFAULT_PRECISION = 20


@public
class PrecisionError(ArithmeticError):
    pass


@public
class NonConstancyError(ValueError):
    pass


@clru_cache(maxsize=64)
def _odd_prime(p):
    return p >= 3 and bool(isprime(p))


@public
class PAdicScalar:
    """x = p**val * unit, unit known modulo p**prec.

    Zeros have `val = inf`. A zero is exact when `bound = inf`; otherwise
    it only says x = 0 mod p**bound, as left by a cancellation. Results
    carry the relative precision that is justified by the operands.
    """
    __slots__ = ("p", "val", "unit", "prec", "bound")

    def __init__(self, p, val, unit, prec=DEFAULT_PRECISION, bound=math.inf):
        if not _odd_prime(p):
            raise ValueError("p must be an odd prime, got {}".format(p))
        self.p = p
        if val == math.inf or prec <= 0:
            if val != math.inf:
                bound = val + prec
            self.val, self.unit, self.prec = math.inf, 0, math.inf
            self.bound = bound
            return
        unit %= p**prec
        if unit % p == 0:
            raise ValueError("unit part {} is divisible by {}".format(unit, p))
        self.val, self.unit, self.prec = val, unit, prec
        self.bound = math.inf

    @classmethod
    def zero(cls, p, bound=math.inf):
        return cls(p, math.inf, 0, bound=bound)

    @classmethod
    def from_rational(cls, x, p, prec=DEFAULT_PRECISION):
        x = Fraction(x)
        v = valuation(x, p)
        if v == math.inf:
            return cls.zero(p)
        y = x/Fraction(p)**v
        mod = p**prec
        unit = y.numerator*pow(y.denominator, -1, mod) % mod
        return cls(p, v, unit, prec)

    @property
    def is_zero(self):
        return self.val == math.inf

    @property
    def is_exact_zero(self):
        return self.is_zero and self.bound == math.inf

    @property
    def absprec(self):
        if self.is_zero:
            return self.bound
        return self.val + self.prec

    def _coerce(self, other):
        if isinstance(other, PAdicScalar):
            if other.p != self.p:
                raise ValueError("mixing {}-adic and {}-adic".format(
                    self.p, other.p))
            return other
        if isinstance(other, (int, Fraction)):
            prec = DEFAULT_PRECISION if self.is_zero else self.prec
            return self.from_rational(other, self.p, prec)
        return NotImplemented

    def __neg__(self):
        if self.is_zero:
            return self
        return PAdicScalar(self.p, self.val, -self.unit, self.prec)

    def __pos__(self):
        return self

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.p
        if self.is_zero or other.is_zero:
            zero, x = (self, other) if self.is_zero else (other, self)
            if x.is_zero:
                return self.zero(p, min(self.bound, other.bound))
            if zero.bound >= x.absprec:
                return x
            if x.val >= zero.bound:
                return self.zero(p, zero.bound)
            return PAdicScalar(p, x.val, x.unit, zero.bound - x.val)
        v = min(self.val, other.val)
        rel = min(self.absprec, other.absprec) - v
        mod = p**rel
        s = (self.unit*p**(self.val - v) +
             other.unit*p**(other.val - v)) % mod
        if s == 0:
            # only the digits below p**(v + rel) cancelled
            return self.zero(p, v + rel)
        w = 0
        while s % p == 0:
            s //= p
            w += 1
        return PAdicScalar(p, v + w, s, rel - w)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero or other.is_zero:
            a = self.bound if self.is_zero else self.val
            b = other.bound if other.is_zero else other.val
            return self.zero(self.p, a + b)
        prec = min(self.prec, other.prec)
        return PAdicScalar(self.p, self.val + other.val,
                           self.unit*other.unit, prec)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero:
            raise PrecisionError("inverse of p-adic zero")
        mod = self.p**self.prec
        return PAdicScalar(self.p, -self.val, pow(self.unit, -1, mod),
                           self.prec)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self*other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other*self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse()**(-k)
        out = self._coerce(1)
        for _ in range(k):
            out = out*self
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return (self - other).is_zero

    def __ne__(self, other):
        eq = self.__eq__(other)
        if eq is NotImplemented:
            return eq
        return not eq

    __hash__ = None

    def norm(self):
        """|x| = q**-val as an exact fraction."""
        if self.is_zero:
            return Fraction(0)
        return Fraction(self.p)**(-self.val)

    def to_rational(self):
        """Balanced rational lift of the known digits."""
        if self.is_zero:
            return Fraction(0)
        mod = self.p**self.prec
        u = self.unit
        if u > mod//2:
            u -= mod
        return u*Fraction(self.p)**self.val

    def fractional_part(self):
        """Representative of x mod O in [0, 1)."""
        if self.is_zero and self.bound < 0:
            raise PrecisionError("fractional part of {!r} is unknown".format(
                self))
        if self.is_zero or self.val >= 0:
            return Fraction(0)
        k = -self.val
        if self.prec < k:
            raise PrecisionError("fractional part of {} needs {} digits, "
                                 "have {}".format(self, k, self.prec))
        return Fraction(self.unit % self.p**k, self.p**k)

    def __repr__(self):
        if self.is_exact_zero:
            return "PAdicScalar({}, 0)".format(self.p)
        if self.is_zero:
            return "PAdicScalar({}, O({}^{}))".format(self.p, self.p,
                                                      self.bound)
        return "PAdicScalar({}, {}*{}^{} + O({}^{}))".format(
            self.p, self.unit, self.p, self.val, self.p, self.absprec)

    def __str__(self):
        return str(self.to_rational())


@public
def padic(x, p, prec=DEFAULT_PRECISION):
    if isinstance(x, PAdicScalar):
        return x
    return PAdicScalar.from_rational(x, p, prec)


@public
def additive_character(x):
    """Unramified additive character psi(x) = exp(2 pi i {x}_p)."""
    frac = x.fractional_part()
    if frac == 0:
        return 1 + 0j
    return cmath.exp(2j*math.pi*frac)


@public
class LatticeDomain:
    """Product of windows p**-M O / p**M' O, one per coordinate.

    Each window is represented by the cosets a*p**-M for
    a in range(p**(M + M')).
    """
    def __init__(self, p, windows, prec=DEFAULT_PRECISION):
        self.p = p
        self.windows = tuple((int(m), int(mp)) for m, mp in windows)
        for m, mp in self.windows:
            if m + mp < 0:
                raise ValueError("empty window ({}, {})".format(m, mp))
        self.prec = prec

    @property
    def dim(self):
        return len(self.windows)

    @property
    def count(self):
        return math.prod(self.p**(m + mp) for m, mp in self.windows)

    def representatives(self, axis, measure="additive"):
        """(representative, weight) pairs for one coordinate."""
        p = self.p
        m, mp = self.windows[axis]
        base = Fraction(p)**(-m)
        reps = []
        for a in range(p**(m + mp)):
            x = a*base
            if measure == "additive":
                w = Fraction(p)**(-mp)
            elif measure == "multiplicative":
                if a == 0:
                    continue
                # q**-M' * zeta(1) * |x|**-1
                w = Fraction(p)**(-mp)*Fraction(p, p - 1)/padic(
                    x, p).norm()
            else:
                raise ValueError("unknown measure {!r}".format(measure))
            reps.append((PAdicScalar.from_rational(x, p, self.prec), w))
        return reps

    def points(self, measure="additive"):
        if isinstance(measure, str):
            measure = (measure,)*self.dim
        axes = [self.representatives(i, mu) for i, mu in enumerate(measure)]
        for pts in itertools.product(*axes):
            yield (tuple(x for x, w in pts),
                   math.prod((w for x, w in pts), start=Fraction(1)))

    def perturb(self, point, rng):
        out = []
        for x, (m, mp) in zip(point, self.windows):
            off = int(rng.randint(0, self.p**3))
            out.append(x + PAdicScalar.from_rational(
                Fraction(self.p)**mp*off, self.p, self.prec))
        return tuple(out)


@public
class IntegralResult:
    def __init__(self, value, windows, count):
        self.value = value
        self.windows = windows
        self.count = count

    def dict(self):
        v = complex(self.value)
        return {"value": [v.real, v.imag], "window": [list(w) for w in
                                                     self.windows],
                "count": self.count}

    def __repr__(self):
        return "IntegralResult({}, windows={}, count={})".format(
            self.value, self.windows, self.count)


@public
def integrate_locally_constant(f, domain, measure="additive",
                               check_constancy=False, samples=16,
                               tolerance=1e-9, threads=1, seed=0):
    """Integrate `f(*x)` over `domain` as a finite weighted sum.

    `f` must be constant on the cosets of every window; with
    `check_constancy` a seeded sample of representatives is perturbed
    inside its coset and compared.
    """
    points = list(domain.points(measure))
    if check_constancy and points:
        rng = np.random.RandomState(seed)
        for i in rng.choice(len(points), min(samples, len(points)),
                            replace=False):
            x, w = points[i]
            y = domain.perturb(x, rng)
            fx, fy = complex(f(*x)), complex(f(*y))
            if abs(fx - fy) > tolerance*max(1., abs(fx)):
                raise NonConstancyError(
                    "integrand not constant on the coset of {}: "
                    "{} != {}".format([str(xi) for xi in x], fx, fy))

    def term(pt):
        x, w = pt
        return complex(f(*x))*float(w)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            values = list(pool.map(term, points))
    else:
        values = [term(pt) for pt in points]
    value = fsum_complex(values)
    logger.info("integrated over windows %s: %d points, value %s",
                domain.windows, len(points), value)
    return IntegralResult(value, domain.windows, len(points))
