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

"""Small helpers shared by the arithmetic modules: the `public`
decorator, rational valuations and compensated sums."""

import math
import sys
from fractions import Fraction


def public(f):
    """Use a decorator to avoid retyping function/class names.

    * Based on an idea by Duncan Booth:
    http://groups.google.com/group/comp.lang.python/msg/11cbb03e09611b8a
    * Improved via a suggestion by Dave Angel:
    http://groups.google.com/group/comp.lang.python/msg/3d400fb22d8a42e1
    """
    all = sys.modules[f.__module__].__dict__.setdefault('__all__', [])
    if f.__name__ not in all:  # Prevent duplicates if run from an IDE.
        all.append(f.__name__)
    return f

public(public)  # Emulate decorating ourself


@public
def valuation(x, p):
    """p-adic valuation of an integer or rational, inf for zero."""
    x = Fraction(x)
    if x == 0:
        return math.inf
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


@public
def fsum_complex(values):
    """Order independent, correctly rounded sum of complex values."""
    values = [complex(v) for v in values]
    return complex(math.fsum(v.real for v in values),
                   math.fsum(v.imag for v in values))


@public
def prod(values, start=1):
    for v in values:
        start = start*v
    return start


@public
def is_dominant(lam):
    return all(a >= b for a, b in zip(lam, lam[1:]))


@public
def q_exponent_power(q, e):
    """q**e for a rational exponent, exact for integer exponents."""
    e = Fraction(e)
    if e.denominator == 1:
        if isinstance(q, int):
            return Fraction(q)**int(e)
        return q**int(e)
    return float(q)**float(e)
