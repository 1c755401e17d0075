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

"""Unramified Whittaker functions: Satake parameters, the Casselman-Shalika
formula on GL_n and the induced Whittaker function W_rho on SO(2n+1)."""

import logging

from .groups import (RingMatrix, iwasawa_gln, iwasawa_H, psi0,
                     modulus_character)
from .padic import PAdicScalar, PrecisionError
from .ring import Symbolic, Numeric, RationalFunction, schur_poly
from .utils import public, is_dominant


logger = logging.getLogger(__name__)


@public
class SatakeParams:
    """Unramified data of tau and the twist s.

    chi are the Satake parameters chi_i(p), zs = q**-s and mu the value of
    the auxiliary GL1 character at p. The twisted parameters are
    chi_{i,s} = chi_i q**-(s - 1/2).
    """
    def __init__(self, chi, zs, mu, backend, chi_prime=None):
        self.chi = list(chi)
        self.zs = zs
        self.mu = mu
        self.backend = backend
        self.chi_prime = backend.one if chi_prime is None else chi_prime

    @classmethod
    def formal(cls, n, chi_prime=1):
        bk = Symbolic()
        if chi_prime == "formal":
            cp = bk.var("CHI_P")
        else:
            cp = bk.character(chi_prime)
        return cls([bk.var("X{}".format(i + 1)) for i in range(n)],
                   bk.var("Z_S"), bk.var("MU"), bk, cp)

    @classmethod
    def numeric(cls, chi, s, q, mu=1, chi_prime=1, unitary=False):
        chi = [complex(c) for c in chi]
        if unitary and any(abs(abs(c) - 1) > 1e-12 for c in chi):
            raise ValueError("unitary Satake parameters need |chi_i| = 1")
        zs = complex(q)**(-complex(s))
        values = {"X{}".format(i + 1): c for i, c in enumerate(chi)}
        values.update(Z_S=zs, MU=complex(mu), CHI_P=complex(chi_prime))
        bk = Numeric(q, values)
        return cls(chi, zs, complex(mu), bk, complex(chi_prime))

    @property
    def n(self):
        return len(self.chi)

    @property
    def q(self):
        return self.backend.q

    @property
    def chi_s(self):
        f = self.zs*self.backend.sqrt_q
        return [c*f for c in self.chi]

    @property
    def is_formal(self):
        return self.backend.exact

    def schur(self, lam):
        s = schur_poly(tuple(lam))
        values = {"X{}".format(i + 1): c for i, c in enumerate(self.chi)}
        if self.is_formal and all(
                isinstance(c, RationalFunction) and c == RationalFunction.var(
                    "X{}".format(i + 1)) for i, c in enumerate(self.chi)):
            return s
        return s.evaluate(values)


@public
def cs_whittaker_gln(params, lam):
    """Spherical Whittaker function of GL_n at p**lam (Casselman-Shalika)."""
    lam = tuple(int(l) for l in lam)
    if len(lam) != params.n:
        raise ValueError("lambda must have {} parts".format(params.n))
    if not is_dominant(lam):
        return params.backend.zero
    half = modulus_character("B_GL", lam)/2
    return params.backend.q_power(half)*params.schur(lam)


@public
def w_tau(params, g, psi=psi0):
    """W_tau(g) = psi(z) W(p**lam) for g = z p**lam k."""
    z, t, k = iwasawa_gln(g)
    lam = [t[i, i].val for i in range(t.size)]
    value = cs_whittaker_gln(params, lam)
    if not value:
        return value
    return value*params.backend.character(psi(z))


@public
def eval_W_rho(params, h, a=None, psi=psi0):
    """The normalized spherical vector W(h, a) of rho_{tau,s} on SO(2n+1).

    h = u v(x) k with u in the unipotent radical of Q_n, then
    W(h, a) = delta_Q^(1/2)(v(x)) |det x|^(s-1/2) W_tau(a x).
    """
    n = params.n
    if h.size != 2*n + 1:
        raise ValueError("h must be in SO({})".format(2*n + 1))
    u, t, k = iwasawa_H(h)
    z = u.block(range(n), range(n))
    x = z @ RingMatrix.diag([t[i, i] for i in range(n)])
    vals = [t[i, i].val for i in range(n)]
    if a is not None:
        x = a @ x
    vd = sum(vals)
    bk = params.backend
    factor = bk.q_power(modulus_character("Q_n", vals)/2)
    factor = factor*(params.zs*bk.sqrt_q)**vd
    return factor*w_tau(params, x, psi)


@public
def floor_bracket(b):
    """[b] = b if |b| <= 1 else 1/b."""
    if not isinstance(b, PAdicScalar):
        raise TypeError("floor_bracket needs a p-adic scalar")
    if b.is_zero and not b.is_exact_zero:
        raise PrecisionError("floor_bracket of {!r}: the value cancelled "
                             "to the working precision".format(b))
    if b.is_zero:
        raise ValueError("floor_bracket of zero")
    return b if b.val >= 0 else b.inverse()
