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

"""Unramified Bessel function of SO(2n+1) for the split SO2: the type B
Weyl group, the Weyl denominator Delta, the factor D, the alternating sum
S and its normalizations."""

import logging
from collections import namedtuple
from itertools import permutations, product

from fastcache import clru_cache
from sympy.combinatorics import Permutation

from .groups import modulus_character
from .ring import leibniz_det
from .utils import public, prod, is_dominant


logger = logging.getLogger(__name__)

MAX_RANK = 6


@public
class SingularDeltaError(ZeroDivisionError):
    pass


@public
class SignedPerm(namedtuple("SignedPerm", "perm signs")):
    """w acts by (w chi)_i = chi_{perm[i]} ** signs[i]."""
    __slots__ = ()

    @property
    def sign(self):
        return Permutation(list(self.perm)).signature()*prod(self.signs)

    def act(self, chi):
        return [chi[j] if e == 1 else 1/chi[j]
                for j, e in zip(self.perm, self.signs)]

    def compose(self, other):
        """(self * other) acting as self.act(other.act(chi))."""
        perm = tuple(other.perm[j] for j in self.perm)
        signs = tuple(e*other.signs[j] for j, e in zip(self.perm,
                                                        self.signs))
        return SignedPerm(perm, signs)


@public
@clru_cache(maxsize=8)
def weyl_enumerate(n):
    """All 2**n n! signed permutations of rank n."""
    if n > MAX_RANK:
        raise ValueError("weyl_enumerate: n = {} exceeds {}".format(
            n, MAX_RANK))
    return tuple(SignedPerm(perm, signs)
                 for perm in permutations(range(n))
                 for signs in product((1, -1), repeat=n))


@public
def weyl_act(w, chi):
    return w.act(chi)


@public
class BesselDatum:
    """chi_s: twisted Satake parameters, mu: value of mu_{s1} at p.

    `n_d` is the upper limit of the second product in D and
    `normalization` selects "spherical" (through W_{tau_s}(1) and
    B_{f0}(1)) or "lemma" (through the L-factor quotient).
    `bf0_reading` "i<=j" keeps the diagonal terms 1 - q^-1 of the
    chi_i/chi_j products in both W_{tau_s}(1) and B_{f0}(1); "i<j" drops
    them. Their quotient is the same either way.
    """
    def __init__(self, chi_s, mu, backend, n_d=None, normalization="spherical",
                 params=None, sym2_reading="i<j", bf0_reading="i<j"):
        self.chi_s = list(chi_s)
        self.mu = mu
        self.backend = backend
        self.n_d = self.n if n_d is None else n_d
        if not 0 <= self.n_d <= self.n:
            raise ValueError("n_d must lie in [0, n]")
        if normalization not in ("spherical", "lemma"):
            raise ValueError("unknown normalization {!r}".format(
                normalization))
        if normalization == "lemma" and params is None:
            raise ValueError("the lemma normalization needs SatakeParams")
        self.normalization = normalization
        self.params = params
        self.sym2_reading = sym2_reading
        if bf0_reading not in ("i<j", "i<=j"):
            raise ValueError("unknown B_f0 reading {!r}".format(bf0_reading))
        self.bf0_reading = bf0_reading

    @classmethod
    def from_params(cls, params, mu=None, d_limit="n", **kwargs):
        n_d = params.n if d_limit == "n" else params.n - 1
        return cls(params.chi_s, params.mu if mu is None else mu,
                   params.backend, n_d=n_d, params=params, **kwargs)

    @property
    def n(self):
        return len(self.chi_s)

    def with_chi(self, chi_s):
        return BesselDatum(chi_s, self.mu, self.backend, self.n_d,
                           self.normalization, self.params,
                           self.sym2_reading, self.bf0_reading)


@public
def delta_weyl(datum, chi=None):
    """(-1)^n det(chi_i^(n-j+1) - chi_i^-(n-j+1))."""
    chi = datum.chi_s if chi is None else chi
    n = len(chi)
    rows = [[c**(n - j) - c**(j - n) for j in range(n)] for c in chi]
    d = (-1)**n*leibniz_det(rows)
    if not datum.backend.exact and abs(d) < 1e-12:
        raise SingularDeltaError("Satake parameter is not regular")
    if datum.backend.exact and not d:
        raise SingularDeltaError("Weyl denominator vanishes")
    return d


@public
def d_factor(datum, chi=None):
    """prod chi_i^-(n+1-i) prod_{i<=n_d} (1 - chi_i mu q^-1/2)
    (1 - chi_i mu^-1 q^-1/2)."""
    chi = datum.chi_s if chi is None else chi
    n = len(chi)
    bk = datum.backend
    r = 1/bk.sqrt_q
    out = bk.one
    for i, c in enumerate(chi):
        out = out*c**(-(n - i))
    for c in chi[:datum.n_d]:
        out = out*(1 - c*datum.mu*r)*(1 - c*r/datum.mu)
    return out


@public
def s_sum(datum, delta):
    """Delta^-1 sum_w sgn(w) D(w chi) (w chi)(p^delta)^-1."""
    delta = tuple(delta)
    if len(delta) != datum.n:
        raise ValueError("delta must have {} parts".format(datum.n))
    total = datum.backend.zero
    for w in weyl_enumerate(datum.n):
        chi = w.act(datum.chi_s)
        term = d_factor(datum, chi)
        for c, d in zip(chi, delta):
            if d:
                term = term*c**(-d)
        total = total + w.sign*term
    return total/delta_weyl(datum)


@public
def l_factors(params, mu=None, sym2_reading="i<j"):
    """L(s, mu x tau) and L(2s, tau, Sym^2) in the untwisted chi and
    q^-s."""
    mu = params.mu if mu is None else mu
    zs = params.zs
    chi = params.chi
    bk = params.backend
    l_mu = bk.one
    for c in chi:
        l_mu = l_mu/((1 - c*mu*zs)*(1 - c*zs/mu))
    z2 = zs*zs
    n = len(chi)
    if sym2_reading == "i<j":
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    elif sym2_reading == "i<=j":
        pairs = [(i, j) for i in range(n) for j in range(i, n)]
    else:
        raise ValueError("unknown Sym2 reading {!r}".format(sym2_reading))
    l_sym = bk.one
    for i, j in pairs:
        l_sym = l_sym/(1 - chi[i]*chi[j]*z2)
    for c in chi:
        l_sym = l_sym/(1 - c*z2)
    return l_mu, l_sym


def _diagonal(datum):
    """(1 - q^-1)^n under the i<=j reading, else 1."""
    bk = datum.backend
    if datum.bf0_reading == "i<j":
        return bk.one
    return (1 - 1/bk.q)**datum.n


@public
def w_tau_s_one(datum):
    """W_{tau_s}(1) = prod_{i<j} (1 - chi_i chi_j^-1 q^-1)."""
    bk = datum.backend
    chi = datum.chi_s
    out = _diagonal(datum)
    for i in range(datum.n):
        for j in range(i + 1, datum.n):
            out = out*(1 - chi[i]/chi[j]/bk.q)
    return out


@public
def b_f0_one(datum):
    """Value at 1 of the Bessel function attached to the spherical
    section, in the twisted parameters."""
    bk = datum.backend
    chi = datum.chi_s
    n = datum.n
    q1 = 1/bk.q
    r = 1/bk.sqrt_q
    num = _diagonal(datum)
    for i in range(n):
        for j in range(i, n):
            num = num*(1 - chi[i]*chi[j]*q1)
            if j > i:
                num = num*(1 - chi[i]/chi[j]*q1)
        num = num*(1 - chi[i]*q1)
    den = bk.one
    for c in chi:
        den = den*(1 - c*datum.mu*r)*(1 - c*r/datum.mu)
    return num/den


def _delta_half(datum, delta):
    return datum.backend.q_power(modulus_character("B_H", delta)/2)


@public
def bessel_normalized(datum, delta):
    """B0(p_H^delta) = delta_H^(1/2) S(delta)/S(0), zero off the dominant
    cone."""
    delta = tuple(delta)
    if not (is_dominant(delta) and delta[-1] >= 0):
        return datum.backend.zero
    s0 = s_sum(datum, (0,)*datum.n)
    return _delta_half(datum, delta)*s_sum(datum, delta)/s0


@public
def bessel_value(datum, delta):
    """The unramified Bessel function at p_H^delta."""
    delta = tuple(delta)
    if not (is_dominant(delta) and delta[-1] >= 0):
        return datum.backend.zero
    if datum.normalization == "spherical":
        return (b_f0_one(datum)/w_tau_s_one(datum) *
                bessel_normalized(datum, delta))
    logger.debug("lemma normalization, Sym2 reading %s", datum.sym2_reading)
    l_mu, l_sym = l_factors(datum.params, datum.mu, datum.sym2_reading)
    return l_mu/l_sym*_delta_half(datum, delta)*s_sum(datum, delta)
