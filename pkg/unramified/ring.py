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

"""Exact Laurent polynomials and rational functions in the formal variables.

A `RationalFunction` is stored as

    num * x**shift / prod(f**e for f, e in den)

where `num` is a polynomial without monomial content, `shift` an integer
exponent vector and every denominator factor `f` a monic polynomial
without monomial content. All polynomials live in one global sparse
ring over QQ, so no denominator factor vanishes when a single variable
is set to zero and every factor can be expanded as a power series in
any one variable.
"""

import logging
import math
from fractions import Fraction
from functools import reduce
from itertools import permutations

from fastcache import clru_cache
from sympy.combinatorics import Permutation
from sympy.polys.domains import QQ
from sympy.polys.orderings import lex
from sympy.polys.rings import ring as poly_ring

from .name_mixin import NameMixin
from .utils import public


logger = logging.getLogger(__name__)

VARIABLES = ("SQRT_Q", "X1", "X2", "X3", "X4", "X5", "X6", "MU",
             "Z_S", "Z_S1", "Z_S2", "CHI_P", "T", "U", "V")
INDEX = {name: i for i, name in enumerate(VARIABLES)}
RING = poly_ring(",".join(VARIABLES), QQ, lex)[0]
NVARS = len(VARIABLES)
_ZERO = (0,)*NVARS

__all__ = ["VARIABLES"]


@public
class ExpansionError(ArithmeticError):
    pass


def _qq(x):
    x = Fraction(x)
    return QQ(x.numerator, x.denominator)


def _fraction(c):
    return Fraction(int(c.numerator), int(c.denominator))


def _add(a, b):
    return tuple(i + j for i, j in zip(a, b))


def _sub(a, b):
    return tuple(i - j for i, j in zip(a, b))


def _laurent(items):
    """Collect (exponents, coefficient) pairs into a content free
    polynomial and the extracted monomial."""
    acc = {}
    for m, c in items:
        acc[m] = acc.get(m, QQ.zero) + c
    acc = {m: c for m, c in acc.items() if c}
    if not acc:
        return RING.zero, _ZERO
    mins = tuple(min(col) for col in zip(*acc))
    if any(mins):
        acc = {_sub(m, mins): c for m, c in acc.items()}
    return RING.from_dict(acc), mins


def _strip(p):
    if not p:
        return RING.zero, _ZERO
    return _laurent(p.items())


def _may_divide(num, f):
    return all(a >= b for a, b in zip(num.degrees(), f.degrees()))


def _factor_key(item):
    return str(item[0])


@public
class RationalFunction:
    __slots__ = ("num", "shift", "den")

    @classmethod
    def _build(cls, num, shift, den, cancel=True):
        self = object.__new__(cls)
        if not num:
            self.num, self.shift, self.den = RING.zero, _ZERO, ()
            return self
        num, mono = _strip(num)
        shift = _add(shift, mono)
        kept = {}
        for f, e in den.items():
            while cancel and e > 0 and _may_divide(num, f):
                quo, rem = divmod(num, f)
                if rem:
                    break
                num, e = quo, e - 1
            if e:
                kept[f] = e
        self.num, self.shift = num, shift
        self.den = tuple(sorted(kept.items(), key=_factor_key))
        return self

    @classmethod
    def const(cls, c):
        return cls._build(RING.ground_new(_qq(c)), _ZERO, {})

    @classmethod
    def monomial(cls, exponents, coeff=1):
        return cls._build(RING.ground_new(_qq(coeff)), tuple(exponents), {})

    @classmethod
    def var(cls, name, power=1):
        e = [0]*NVARS
        e[INDEX[name]] = power
        return cls.monomial(e)

    @classmethod
    def from_poly(cls, p, shift=_ZERO):
        return cls._build(p, shift, {}, cancel=False)

    @classmethod
    def zero(cls):
        return cls._build(RING.zero, _ZERO, {})

    @classmethod
    def one(cls):
        return cls.const(1)

    @property
    def is_zero(self):
        return not self.num

    @property
    def is_laurent(self):
        return not self.den

    def __bool__(self):
        return bool(self.num)

    def variables(self):
        used = set(i for i, e in enumerate(self.shift) if e)
        for p in (self.num,) + tuple(f for f, e in self.den):
            for m in p.keys():
                used.update(i for i, e in enumerate(m) if e)
        return [VARIABLES[i] for i in sorted(used)]

    def _den_poly(self, exps):
        return reduce(lambda a, b: a*b,
                      (f**e for f, e in exps.items() if e), RING.one)

    def __neg__(self):
        return self._build(-self.num, self.shift, dict(self.den),
                           cancel=False)

    def __pos__(self):
        return self

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.num:
            return other
        if not other.num:
            return self
        da, db = dict(self.den), dict(other.den)
        den = {f: max(da.get(f, 0), db.get(f, 0)) for f in set(da) | set(db)}
        shift = tuple(map(min, self.shift, other.shift))
        a = self.num.mul_monom(_sub(self.shift, shift))*self._den_poly(
            {f: e - da.get(f, 0) for f, e in den.items()})
        b = other.num.mul_monom(_sub(other.shift, shift))*self._den_poly(
            {f: e - db.get(f, 0) for f, e in den.items()})
        return self._build(a + b, shift, den)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.num or not other.num:
            return self.zero()
        den = dict(self.den)
        for f, e in other.den:
            den[f] = den.get(f, 0) + e
        cancel = bool(self.den or other.den)
        return self._build(self.num*other.num,
                           _add(self.shift, other.shift), den, cancel)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("division by the zero rational function")
        lc = self.num.LC
        f = self.num.monic()
        num = self._den_poly(dict(self.den)).quo_ground(lc)
        den = {} if f == RING.one else {f: 1}
        return self._build(num, tuple(-e for e in self.shift), den)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self*other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other*self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            k = int(k)
        if k < 0:
            return self.inverse()**(-k)
        if k == 0:
            return self.one()
        return self._build(self.num**k, tuple(k*e for e in self.shift),
                           {f: k*e for f, e in self.den}, cancel=False)

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.shift != other.shift and self.num and other.num:
            return False
        da, db = dict(self.den), dict(other.den)
        fs = set(da) | set(db)
        common = {f: min(da.get(f, 0), db.get(f, 0)) for f in fs}
        a = self.num*self._den_poly(
            {f: db.get(f, 0) - common[f] for f in fs})
        b = other.num*self._den_poly(
            {f: da.get(f, 0) - common[f] for f in fs})
        return a == b

    def __ne__(self, other):
        eq = self.__eq__(other)
        if eq is NotImplemented:
            return eq
        return not eq

    __hash__ = None

    def degree(self, name):
        """Largest exponent of `name` in a Laurent polynomial."""
        if self.den:
            raise ValueError("degree of a non-polynomial rational function")
        i = INDEX[name]
        if not self.num:
            return -math.inf
        return max(m[i] for m in self.num.keys()) + self.shift[i]

    def low_degree(self, name):
        if self.den:
            raise ValueError("degree of a non-polynomial rational function")
        i = INDEX[name]
        if not self.num:
            return math.inf
        return self.shift[i]

    def subs_monomial(self, mapping):
        """Simultaneously substitute `name -> coeff*x**exponents`.

        `mapping` maps variable names to (coeff, exponent vector) pairs.
        """
        mapping = {INDEX[k]: (Fraction(c), tuple(e)) for k, (c, e) in
                   mapping.items()}

        def image(monom, c):
            m = list(monom)
            c = _fraction(c)
            extra = _ZERO
            for i, (ci, ei) in mapping.items():
                k, m[i] = m[i], 0
                if k:
                    c = c*ci**k
                    extra = _add(extra, tuple(k*x for x in ei))
            return _add(tuple(m), extra), _qq(c)

        num, mono = _laurent(image(_add(m, self.shift), c)
                             for m, c in self.num.items())
        shift = mono
        den = {}
        for f, e in self.den:
            g, gm = _laurent(image(m, c) for m, c in f.items())
            if not g:
                raise ZeroDivisionError("substitution annihilates a "
                                        "denominator factor")
            lc = g.LC
            num = num.quo_ground(lc**e)
            shift = _sub(shift, tuple(e*x for x in gm))
            g = g.monic()
            if g != RING.one:
                den[g] = den.get(g, 0) + e
        return self._build(num, shift, den)

    def evaluate(self, values, partial=False):
        """Substitute numbers or rational functions for the variables.

        With `partial`, variables without a value are kept formal.
        """
        cache = {}

        def power(i, e):
            try:
                return cache[(i, e)]
            except KeyError:
                pass
            name = VARIABLES[i]
            if name in values:
                x = values[name]
            elif partial:
                x = RationalFunction.var(name)
            else:
                raise ValueError("no value for variable {}".format(name))
            cache[(i, e)] = x**e
            return cache[(i, e)]

        def ev(monoms):
            total = 0
            for m, c in monoms:
                term = _fraction(c)
                for i, e in enumerate(m):
                    if e:
                        term = term*power(i, e)
                total = total + term
            return total

        value = ev(self.num.terms())
        for i, e in enumerate(self.shift):
            if e:
                value = value*power(i, e)
        for f, e in self.den:
            value = value/ev(f.terms())**e
        return value

    def __call__(self, **values):
        return self.evaluate(values)

    def as_expr(self):
        expr = self.num.as_expr()
        for i, e in enumerate(self.shift):
            if e:
                expr = expr*RING.symbols[i]**e
        for f, e in self.den:
            expr = expr/f.as_expr()**e
        return expr

    def to_data(self):
        """Canonical nested-list form with explicit exponent vectors."""
        def terms(p, shift=_ZERO):
            return [[list(_add(m, shift)), str(_fraction(c))]
                    for m, c in sorted(p.items(), reverse=True)]
        return {"variables": list(VARIABLES),
                "num": terms(self.num, self.shift),
                "den": [[terms(f), e] for f, e in self.den]}

    def __str__(self):
        return str(self.as_expr())

    def __repr__(self):
        return "RationalFunction({})".format(self)


def _coerce(x):
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, (int, Fraction)):
        return RationalFunction.const(x)
    if hasattr(x, "numerator") and hasattr(x, "denominator") and \
            not isinstance(x, float):
        return RationalFunction.const(Fraction(int(x.numerator),
                                               int(x.denominator)))
    return NotImplemented


@public
def rf_var(name, power=1):
    return RationalFunction.var(name, power)


@public
def rf_const(c):
    return RationalFunction.const(c)


def _split(p, i):
    parts = {}
    for m, c in p.items():
        parts.setdefault(m[i], {})[m[:i] + (0,) + m[i + 1:]] = c
    return {t: RationalFunction.from_poly(RING.from_dict(d))
            for t, d in parts.items()}


def _series_mul(a, b, m):
    out = []
    for t in range(m + 1):
        acc = RationalFunction.zero()
        for j in range(t + 1):
            if a[j] and b[t - j]:
                acc = acc + a[j]*b[t - j]
        out.append(acc)
    return out


def _series_inverse(a, m):
    u0 = a[0].inverse()
    u = [u0]
    for t in range(1, m + 1):
        acc = RationalFunction.zero()
        for j in range(1, t + 1):
            if a[j] and u[t - j]:
                acc = acc + a[j]*u[t - j]
        u.append(-(acc*u0))
    return u


@public
def coeff_extract(f, name, k, direction="zero"):
    """Coefficient of name**k in the Laurent expansion of `f` about
    `name = 0` (direction "zero") or `name = oo` (direction "infinity").

    Denominator factors have an invertible constant term in every
    variable, so each is inverted as a power series with coefficients in
    the remaining variables and the product is truncated at the needed
    order.
    """
    f = _coerce(f)
    if direction == "infinity":
        e = [0]*NVARS
        e[INDEX[name]] = -1
        f = f.subs_monomial({name: (1, e)})
        k = -k
    elif direction != "zero":
        raise ValueError("direction must be 'zero' or 'infinity'")
    i = INDEX[name]
    if not f.num:
        return RationalFunction.zero()
    m = k - f.shift[i]
    if m < 0:
        return RationalFunction.zero()
    rest = list(f.shift)
    rest[i] = 0
    parts = _split(f.num, i)
    zero = RationalFunction.zero()
    series = [parts.get(t, zero) for t in range(m + 1)]
    for fac, e in f.den:
        fparts = _split(fac, i)
        a = [fparts.get(t, zero) for t in range(m + 1)]
        if not a[0]:
            raise ExpansionError("factor {} is not invertible at {}=0".format(
                fac.as_expr(), name))
        inv = _series_inverse(a, m)
        for _ in range(e):
            series = _series_mul(series, inv, m)
    logger.debug("extracted %s^%d at %s, order %d, %d factors",
                 name, k, direction, m, len(f.den))
    return series[m]*RationalFunction.monomial(rest)


@public
def leibniz_det(rows):
    """Determinant as a signed sum over permutations, exact in any ring."""
    n = len(rows)
    total = 0
    for perm in permutations(range(n)):
        term = Permutation(list(perm)).signature()
        for i, j in enumerate(perm):
            term = term*rows[i][j]
            if isinstance(term, RationalFunction) and not term:
                break
        total = total + term
    return total


@public
@clru_cache(maxsize=256)
def schur_poly(lam, names=None):
    """Schur polynomial s_lam as a bialternant in the variables `names`
    (default X1..Xn). Negative parts are allowed; the result is then a
    Laurent polynomial."""
    lam = tuple(lam)
    n = len(lam)
    if any(a < b for a, b in zip(lam, lam[1:])):
        raise ValueError("partition must be non-increasing: {}".format(lam))
    if names is None:
        names = tuple("X{}".format(i + 1) for i in range(n))
    shift = min(min(lam), 0)
    mu = tuple(l - shift for l in lam)
    xs = [RationalFunction.var(v) for v in names]
    num = leibniz_det([[x**(mu[j] + n - 1 - j) for j in range(n)]
                       for x in xs])
    vdm = leibniz_det([[x**(n - 1 - j) for j in range(n)] for x in xs])
    s = num/vdm
    if not s.is_laurent:
        raise ExpansionError("bialternant did not divide exactly")
    if shift:
        s = s*reduce(lambda a, b: a*b, xs)**shift
    return s


@public
class Backend(NameMixin):
    """Scalar arithmetic for the formula layer.

    Formulas are written once against a backend and evaluated either
    exactly in the formal variables or numerically.
    """
    _types = {}
    _default_type = "symbolic"
    exact = True

    def q_minus(self, s=0, s1=0, s2=0, const=0):
        """q**-(a*s + b*s1 + c*s2 + const)."""
        out = self.q_power(-Fraction(const))
        for name, coeff in (("Z_S", s), ("Z_S1", -Fraction(s1)),
                            ("Z_S2", -Fraction(s2))):
            coeff = Fraction(coeff)
            if coeff:
                if coeff.denominator != 1:
                    raise ValueError("non-integral coefficient of an "
                                     "s variable: {}".format(coeff))
                out = out*self.var(name)**int(coeff)
        return out


@public
@Backend.register
class Symbolic(Backend):
    _type = "symbolic"
    exact = True

    @property
    def one(self):
        return RationalFunction.one()

    @property
    def zero(self):
        return RationalFunction.zero()

    def var(self, name):
        return RationalFunction.var(name)

    def const(self, x):
        return RationalFunction.const(x)

    @property
    def sqrt_q(self):
        return RationalFunction.var("SQRT_Q")

    @property
    def q(self):
        return RationalFunction.var("SQRT_Q", 2)

    def q_power(self, e):
        e = Fraction(e)*2
        if e.denominator != 1:
            raise ValueError("q power {} is not in SQRT_Q**Z".format(e/2))
        return RationalFunction.var("SQRT_Q", int(e))

    def character(self, value):
        value = complex(value)
        if abs(value - 1) < 1e-12:
            return self.one
        if abs(value + 1) < 1e-12:
            return -self.one
        raise BackendError("character value {} is not representable "
                           "exactly".format(value))

    def value(self, x):
        return x


@public
@Backend.register
class Numeric(Backend):
    _type = "numeric"
    exact = False

    def __init__(self, q, values=None):
        self.q_value = q
        self.values = dict(values or {})
        self.values.setdefault("SQRT_Q", math.sqrt(q))

    def dict(self):
        return {"type": self._type, "q": self.q_value,
                "values": {k: [v.real, v.imag] for k, v in
                           ((k, complex(v)) for k, v in self.values.items())}}

    def with_values(self, **values):
        new = dict(self.values)
        new.update(values)
        return Numeric(self.q_value, new)

    @property
    def one(self):
        return 1 + 0j

    @property
    def zero(self):
        return 0j

    def var(self, name):
        try:
            return complex(self.values[name])
        except KeyError:
            raise BackendError("no numeric value for {}".format(name))

    def const(self, x):
        return complex(x)

    @property
    def sqrt_q(self):
        return math.sqrt(self.q_value)

    @property
    def q(self):
        return float(self.q_value)

    def q_power(self, e):
        return float(self.q_value)**float(Fraction(e))

    def character(self, value):
        return complex(value)

    def value(self, x):
        if isinstance(x, RationalFunction):
            return complex(x.evaluate(self.values))
        return complex(x)


@public
class BackendError(ValueError):
    pass


@public
def zeta_v(backend, s=0, s1=0, s2=0, const=0):
    """Local zeta factor 1/(1 - q**-e) for the linear form
    e = s*s + s1*s1 + s2*s2 + const."""
    return 1/(1 - backend.q_minus(s=s, s1=s1, s2=s2, const=const))
