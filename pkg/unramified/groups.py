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

"""Matrices over exact rings, the embeddings of GL2 x GL2 into the
orthogonal groups, the special Weyl elements of H = SO(2n+1) and
Iwasawa decompositions over the p-adic field."""

import logging
import math
from fractions import Fraction

import numpy as np

from .padic import PAdicScalar, additive_character
from .ring import RationalFunction
from .utils import public


logger = logging.getLogger(__name__)


@public
class DomainError(ValueError):
    pass


def _is_zero(x):
    if isinstance(x, PAdicScalar):
        return x.is_zero
    return x == 0


def _pivot_key(x):
    if isinstance(x, PAdicScalar):
        return x.val
    return 0


def _unify(values):
    """Coerce plain numbers into the richest ring present."""
    conv = Fraction
    for v in values:
        if isinstance(v, RationalFunction):
            conv = RationalFunction.const
            break
        if isinstance(v, PAdicScalar):
            p, prec = v.p, v.prec if v.prec != math.inf else 20

            def conv(x, p=p, prec=prec):
                return PAdicScalar.from_rational(x, p, prec)
    out = []
    for v in values:
        if isinstance(v, (int, Fraction, np.integer)):
            v = conv(Fraction(int(v)) if isinstance(v, np.integer) else v)
        out.append(v)
    return out


@public
class RingMatrix:
    """Square matrix with entries in one exact ring (Fraction,
    RationalFunction or PAdicScalar)."""
    __slots__ = ("entries",)

    def __init__(self, entries):
        rows = [list(r) for r in entries]
        k = len(rows)
        if any(len(r) != k for r in rows):
            raise ValueError("RingMatrix must be square")
        flat = _unify([x for r in rows for x in r])
        a = np.empty((k, k), dtype=object)
        for i in range(k):
            for j in range(k):
                a[i, j] = flat[i*k + j]
        self.entries = a

    @classmethod
    def _wrap(cls, a):
        self = object.__new__(cls)
        self.entries = a
        return self

    @classmethod
    def identity(cls, k, one=1):
        return cls.diag([one]*k)

    @classmethod
    def diag(cls, values):
        k = len(values)
        return cls([[values[i] if i == j else 0 for j in range(k)]
                    for i in range(k)])

    @classmethod
    def block_diag(cls, *blocks):
        k = sum(b.size for b in blocks)
        rows = [[0]*k for _ in range(k)]
        o = 0
        for b in blocks:
            for i in range(b.size):
                for j in range(b.size):
                    rows[o + i][o + j] = b.entries[i, j]
            o += b.size
        return cls(rows)

    @property
    def size(self):
        return self.entries.shape[0]

    def __getitem__(self, ij):
        return self.entries[ij]

    def __matmul__(self, other):
        if not isinstance(other, RingMatrix):
            return NotImplemented
        return RingMatrix(self.entries.dot(other.entries).tolist())

    def __mul__(self, c):
        return RingMatrix((self.entries*c).tolist())

    __rmul__ = __mul__

    def __add__(self, other):
        return RingMatrix((self.entries + other.entries).tolist())

    def __sub__(self, other):
        return RingMatrix((self.entries - other.entries).tolist())

    def __neg__(self):
        return RingMatrix((-self.entries).tolist())

    @property
    def T(self):
        return RingMatrix(self.entries.T.tolist())

    def __eq__(self, other):
        if not isinstance(other, RingMatrix):
            return NotImplemented
        if self.size != other.size:
            return False
        return all(_is_zero(x - y) for x, y in
                   zip(self.entries.flat, other.entries.flat))

    __hash__ = None

    def _eliminate(self, rhs=None):
        a = self.entries.copy()
        k = self.size
        sign = 1
        pivots = []
        for c in range(k):
            rows = [r for r in range(c, k) if not _is_zero(a[r, c])]
            if not rows:
                raise ZeroDivisionError("singular matrix")
            piv = min(rows, key=lambda r: _pivot_key(a[r, c]))
            if piv != c:
                a[[c, piv]] = a[[piv, c]]
                if rhs is not None:
                    rhs[[c, piv]] = rhs[[piv, c]]
                sign = -sign
            pivots.append(a[c, c])
            for r in range(c + 1, k):
                if not _is_zero(a[r, c]):
                    f = a[r, c]/a[c, c]
                    a[r, c:] = a[r, c:] - a[c, c:]*f
                    if rhs is not None:
                        rhs[r] = rhs[r] - rhs[c]*f
        return a, pivots, sign

    def det(self):
        try:
            a, pivots, sign = self._eliminate()
        except ZeroDivisionError:
            return self.entries[0, 0]*0
        out = pivots[0]
        for x in pivots[1:]:
            out = out*x
        return out*sign

    def inverse(self):
        k = self.size
        rhs = RingMatrix.identity(k).entries
        rhs = np.array(_unify(list(rhs.flat) + list(self.entries.flat))[
            :k*k], dtype=object).reshape(k, k)
        a, pivots, sign = self._eliminate(rhs)
        x = np.empty((k, k), dtype=object)
        for r in reversed(range(k)):
            row = rhs[r]
            for c in range(r + 1, k):
                row = row - x[c]*a[r, c]
            x[r] = row*(1/a[r, r])
        return RingMatrix(x.tolist())

    def map(self, f):
        return RingMatrix([[f(x) for x in row] for row in
                           self.entries.tolist()])

    def block(self, rows, cols):
        return RingMatrix([[self.entries[i, j] for j in cols] for i in rows])

    def is_upper_triangular(self):
        k = self.size
        return all(_is_zero(self.entries[i, j])
                   for i in range(k) for j in range(i))

    def is_upper_unipotent(self):
        return self.is_upper_triangular() and all(
            _is_zero(self.entries[i, i] - 1) for i in range(self.size))

    def tolist(self):
        return self.entries.tolist()

    def to_data(self):
        return [[str(x) for x in row] for row in self.entries.tolist()]

    def __str__(self):
        cells = self.to_data()
        w = max(len(c) for row in cells for c in row)
        return "\n".join(" ".join(c.rjust(w) for c in row) for row in cells)

    def __repr__(self):
        return "RingMatrix({})".format(self.to_data())


@public
def j_matrix(k):
    return RingMatrix([[1 if i + j == k - 1 else 0 for j in range(k)]
                       for i in range(k)])


@public
def preserves_form(g):
    J = j_matrix(g.size)
    return g.T @ J @ g == J


@public
def is_so(g):
    """g in SO(k) for the antidiagonal form J."""
    return preserves_form(g) and _is_zero(g.det() - 1)


@public
class GPair:
    """Element (g1, g2) of G = {det g1 * det g2 = 1} in GL2 x GL2."""
    def __init__(self, g1, g2, check=True):
        if not isinstance(g1, RingMatrix):
            g1 = RingMatrix(g1)
        if not isinstance(g2, RingMatrix):
            g2 = RingMatrix(g2)
        if check and not _is_zero(g1.det()*g2.det() - 1):
            raise DomainError("det g1 * det g2 != 1")
        self.g1, self.g2 = g1, g2

    def __matmul__(self, other):
        return GPair(self.g1 @ other.g1, self.g2 @ other.g2, check=False)

    def __eq__(self, other):
        return self.g1 == other.g1 and self.g2 == other.g2

    __hash__ = None

    def inverse(self):
        return GPair(self.g1.inverse(), self.g2.inverse(), check=False)

    def __repr__(self):
        return "GPair({!r}, {!r})".format(self.g1, self.g2)


def _diag2(a, d):
    return RingMatrix([[a, 0], [0, d]])


def _upper2(b):
    return RingMatrix([[1, b], [0, 1]])


def _one(x):
    return x**0 if isinstance(x, RationalFunction) else 1


@public
def A1(a):
    return GPair(_diag2(a, 1/a), RingMatrix.identity(2, _one(a)))


@public
def A2(a):
    return GPair(RingMatrix.identity(2, _one(a)), _diag2(a, 1/a))


@public
def G1(b):
    return GPair(_diag2(_one(b), 1/b), _diag2(_one(b), b))


@public
def M1(m):
    return GPair(_diag2(_one(m), 1/m), _diag2(m, _one(m)))


@public
def D(delta):
    """(diag(1, delta), diag(1, 1/delta)), the determinant torus."""
    return G1(1/delta)


@public
def N1(c):
    return GPair(_upper2(c/2 if not isinstance(c, int) else Fraction(c, 2)),
                 _upper2(-c))


@public
def N2(b):
    return GPair(_upper2(b), _upper2(2*b))


@public
def M_SL2(a):
    return GPair(_diag2(a, 1/a), _diag2(a, 1/a))


@public
class ToricCoord:
    """Torus element A1(a1) A2(a2) G1(b) M1(m) of G."""
    def __init__(self, a1=1, a2=1, b=1, m=1):
        self.a1, self.a2, self.b, self.m = a1, a2, b, m

    def to_pair(self):
        return A1(self.a1) @ A2(self.a2) @ G1(self.b) @ M1(self.m)


@public
def iota1(g):
    """SL2 x SL2 (and G) into SO(4, J4)."""
    (a, b), (c, d) = g.g1.tolist()
    (a_, b_), (c_, d_) = g.g2.tolist()
    return RingMatrix([
        [a*a_, -a*b_, b*a_, b*b_],
        [-a*c_, a*d_, -b*c_, -b*d_],
        [c*a_, -c*b_, d*a_, d*b_],
        [c*c_, -c*d_, d*c_, d*d_]])


F = Fraction
_PHI = RingMatrix([
    [1, 0, 0, 0, 0],
    [0, 1, F(-1, 2), 0, 1],
    [0, 1, F(1, 2), 0, 0],
    [0, F(-1, 2), F(1, 4), 0, F(1, 2)],
    [0, 0, 0, 1, 0]])
_PHI_INV = RingMatrix([
    [1, 0, 0, 0, 0],
    [0, F(1, 4), F(1, 2), F(-1, 2), 0],
    [0, F(-1, 2), 1, 1, 0],
    [0, 0, 0, 0, 1],
    [0, F(1, 2), 0, 1, 0]])
del F


@public
def iota2(m):
    """SO(4, J4) into SO(5, J5) through the isometry of J4 + (1) onto J5
    whose last basis vector is (0, 1, 0, 1/2, 0)."""
    if m.size != 4:
        raise DomainError("iota2 needs a 4x4 matrix")
    if not is_so(m):
        raise DomainError("matrix is not in SO(4, J4)")
    ext = RingMatrix.block_diag(m, RingMatrix.identity(1, _one(m[0, 0])))
    return _PHI @ ext @ _PHI_INV


@public
def iota(g):
    return iota2(iota1(g))


def _printed_block(x, y, u, v, corner0, corner4):
    """The printed middle SO3 block in x = b + 1/b, y = b - 1/b with the
    sign choices u, v."""
    h = Fraction(1, 2)
    q = Fraction(1, 4)
    one = x**0
    return RingMatrix([
        [corner0, 0, 0, 0, 0],
        [0, h + q*x, h*u*y, 2*u*y, 0],
        [0, u*y, h*x, -h*v*y, 0],
        [0, h*(h - q*x), -q*u*y, h + q*x, 0],
        [0, 0, 0, 0, corner4*one]])


def _printed(name, t):
    one = t**0
    if name == "G1":
        return _printed_block(t + 1/t, t - 1/t, 1, 1, one, one)
    if name == "A1":
        return _printed_block(t**2 + t**-2, t**2 - t**-2, 1, 1, t, 1/t)
    if name == "A2":
        return _printed_block(t**2 + t**-2, t**2 - t**-2, -1, 1, t, 1/t)
    if name == "M1":
        return RingMatrix.diag([t, one, one, one, 1/t])
    if name == "N1":
        return RingMatrix([[one, 0, t, 0, -t**2/2],
                           [0, one, 0, 0, 0],
                           [0, 0, one, 0, -t],
                           [0, 0, 0, one, 0],
                           [0, 0, 0, 0, one]])
    if name == "N2":
        return RingMatrix([[one, t, 0, -2*t, 0],
                           [0, one, 0, 0, 2*t],
                           [0, 0, one, 0, 0],
                           [0, 0, 0, one, -t],
                           [0, 0, 0, 0, one]])
    raise KeyError(name)


_SUBGROUPS = {"M1": M1, "G1": G1, "A1": A1, "A2": A2, "N1": N1, "N2": N2}


@public
def displayed_images(names=None):
    """Images of the one-parameter subgroups under iota next to their
    printed matrices, in the formal parameter T.

    Returns name -> (image, printed, cells) where cells lists the
    (row, col) entries in which the two disagree.
    """
    t = RationalFunction.var("T")
    out = {}
    for name in names or sorted(_SUBGROUPS):
        image = iota(_SUBGROUPS[name](t))
        printed = _printed(name, t)
        cells = [(i, j) for i in range(5) for j in range(5)
                 if not _is_zero(image[i, j] - printed[i, j])]
        if cells:
            logger.info("%s': %d entries differ from the printed matrix",
                        name, len(cells))
        out[name] = (image, printed, cells)
    return out


@public
def embed_so5_in_H(m, n):
    """diag(I_{n-2}, m, I_{n-2}) in SO(2n+1)."""
    if n < 2:
        raise ValueError("H = SO(2n+1) needs n >= 2")
    one = _one(m[0, 0])
    pad = RingMatrix.identity(n - 2, one) if n > 2 else None
    blocks = [b for b in (pad, m, pad) if b is not None]
    return RingMatrix.block_diag(*blocks)


def _perm_matrix(k, cells):
    rows = [[0]*k for _ in range(k)]
    for i, j, v in cells:
        rows[i][j] = v
    return RingMatrix(rows)


@public
def special_elements(n):
    """The Weyl representatives w, w0, w0~ and w' of SO(2n+1).

    w' = diag(I_n, -1, I_n) preserves the form but has determinant -1;
    conjugation by it agrees with conjugation by -w' in SO(2n+1).
    """
    if n < 2:
        raise ValueError("special elements need n >= 2")
    k = 2*n + 1
    half = Fraction(1, 2)
    sign = (-1)**(n - 2)
    w = [(0, n - 2, half), (1, n - 1, half), (n, n, sign),
         (2*n - 1, n + 1, 2), (2*n, n + 2, 2)]
    w += [(2 + i, n + 3 + i, 1) for i in range(n - 2)]
    w += [(n + 1 + i, i, 1) for i in range(n - 2)]
    w0 = [(i, n + 3 + i, 1) for i in range(n - 2)]
    w0 += [(n + 3 + i, i, 1) for i in range(n - 2)]
    w0 += [(n - 2, n - 2, 1), (n - 1, n - 1, 1), (n, n, sign),
           (n + 1, n + 1, 1), (n + 2, n + 2, 1)]
    w0t = [(i, n + 1 + i, 1) for i in range(n)]
    w0t += [(n + 1 + i, i, 1) for i in range(n)]
    w0t += [(n, n, (-1)**n)]
    wp = RingMatrix.diag([1]*n + [-1] + [1]*n)
    return {"w": _perm_matrix(k, w), "w0": _perm_matrix(k, w0),
            "w0_tilde": _perm_matrix(k, w0t), "w_prime": wp}


@public
def v_matrix(x):
    """v(x) = diag(x, 1, J x^-T J) for x in GL_n."""
    n = x.size
    J = j_matrix(n)
    tail = J @ x.inverse().T @ J
    return RingMatrix.block_diag(x, RingMatrix.identity(1, _one(x[0, 0])),
                                 tail)


@public
def torus_H(delta, uniformizer):
    """diag(u**d1, ..., u**dn, 1, u**-dn, ..., u**-d1)."""
    head = [uniformizer**d for d in delta]
    tail = [uniformizer**(-d) for d in reversed(delta)]
    return RingMatrix.diag(head + [uniformizer**0] + tail)


@public
def exp_nilpotent(x):
    """exp of a nilpotent matrix as a finite sum."""
    k = x.size
    one = RingMatrix.identity(k)
    out = one
    term = one
    for i in range(1, k + 1):
        term = term @ x
        if all(_is_zero(e) for e in term.entries.flat):
            break
        out = out + term*Fraction(1, math.factorial(i))
    return out


@public
def so3_iwasawa(b):
    """Closed-form Iwasawa decomposition u t k of the middle 3x3 block of
    iota(G1(b)): u = x(c), t = diag(bb, 1, 1/bb) with bb = [b]."""
    bb = b if b.val >= 0 else b.inverse()
    c = -2 if b.val >= 0 else 2
    x = RingMatrix([[1, c, -Fraction(c*c, 2)], [0, 1, -c], [0, 0, 1]])
    t = RingMatrix.diag([bb, 1, bb.inverse()])
    k = (x @ t).inverse() @ iota(G1(b)).block(range(1, 4), range(1, 4))
    return x, t, k


def _is_integral(x):
    if isinstance(x, PAdicScalar):
        return x.is_zero or x.val >= 0
    raise DomainError("integrality needs p-adic entries")


@public
def is_integral(g):
    return all(_is_integral(x) for x in g.entries.flat)


@public
def iwasawa_gln(g):
    """g = z t k with z upper unipotent, t diagonal and k in GL_n(O)."""
    n = g.size
    b = g.entries.copy()
    k = RingMatrix.identity(n, g[0, 0]**0).entries
    for row in reversed(range(n)):
        cols = [c for c in range(row + 1) if not _is_zero(b[row, c])]
        if not cols:
            raise DomainError("singular matrix in iwasawa_gln")
        piv = min(cols, key=lambda c: b[row, c].val)
        if piv != row:
            b[:, [piv, row]] = b[:, [row, piv]]
            k[[piv, row]] = k[[row, piv]]
        for c in range(row):
            if not _is_zero(b[row, c]):
                f = b[row, c]/b[row, row]
                b[:, c] = b[:, c] - b[:, row]*f
                k[row] = k[row] + k[c]*f
                b[row, c] = b[row, c]*0
    t = RingMatrix.diag([b[i, i] for i in range(n)])
    z = RingMatrix(b.tolist()) @ t.inverse()
    return z, t, RingMatrix(k.tolist())


@public
def iwasawa_H(h):
    """h = u t k in SO(2n+1) with u in N_H, t in T_H and k in SO(2n+1, O).

    The column operations are elements of SO(2n+1, O): signed
    transpositions of the paired coordinates and root unipotents exp(f X)
    with X = E_{r,c} - E_{c',s}.
    """
    N = h.size
    b = h.entries.copy()
    k = RingMatrix.identity(N, h[0, 0]**0).entries
    mid = N//2

    def bar(i):
        return N - 1 - i

    for s in range(mid):
        r = bar(s)
        active = [c for c in range(s, r + 1) if not _is_zero(b[r, c])]
        if not active:
            raise DomainError("matrix is singular")
        piv = min(active, key=lambda c: (b[r, c].val, c == mid, c != r))
        if piv == s:
            b[:, [s, r]] = b[:, [r, s]]
            b[:, mid] = -b[:, mid]
            k[[s, r]] = k[[r, s]]
            k[mid] = -k[mid]
        elif piv != r:
            b[:, [piv, r]] = b[:, [r, piv]]
            b[:, [bar(piv), s]] = b[:, [s, bar(piv)]]
            k[[piv, r]] = k[[r, piv]]
            k[[bar(piv), s]] = k[[s, bar(piv)]]
        for c in range(s + 1, r):
            if _is_zero(b[r, c]):
                continue
            f = -b[r, c]/b[r, r]
            # right multiplication by exp(f X); column s first, it reads
            # the old column bar(c)
            b[:, s] = b[:, s] - b[:, bar(c)]*f
            if c == mid:
                b[:, s] = b[:, s] - b[:, r]*(f*f*Fraction(1, 2))
                k[r] = k[r] - k[s]*(f*f*Fraction(1, 2))
            b[:, c] = b[:, c] + b[:, r]*f
            k[r] = k[r] - k[c]*f
            k[bar(c)] = k[bar(c)] + k[s]*f
            b[r, c] = b[r, c]*0
    for i in range(N):
        for j in range(i):
            if not _is_zero(b[i, j]):
                raise DomainError("matrix is not in SO(2n+1): entry "
                                  "({}, {}) survives reduction".format(i, j))
    t = RingMatrix.diag([b[i, i] for i in range(N)])
    u = RingMatrix(b.tolist()) @ t.inverse()
    return u, t, RingMatrix(k.tolist())


@public
def psi1(u, n):
    """Generic character of N_H: psi(sum_{i<=n-3} u_{i,i+1} + u_{n-2,n}
    + u_{n-2,n+2}/2) in 1-based indices."""
    if not u.is_upper_unipotent():
        raise DomainError("psi1 is defined on the upper unipotent N_H")
    arg = 0
    for i in range(n - 3):
        arg = u[i, i + 1] + arg
    if n >= 3:
        arg = u[n - 3, n - 1] + u[n - 3, n + 1]*Fraction(1, 2) + arg
    if isinstance(arg, int):
        return 1 + 0j
    return additive_character(arg)


@public
def psi_yq(z, q4):
    """psi(q4 z_{12} + sum_{i>=2} z_{i,i+1}), q4 = -4 Q'(y2)."""
    if not z.is_upper_unipotent():
        raise DomainError("psi_{y,Q'} is defined on upper unipotents")
    arg = z[0, 1]*q4 if z.size > 1 else 0
    for i in range(1, z.size - 1):
        arg = z[i, i + 1] + arg
    if isinstance(arg, int):
        return 1 + 0j
    return additive_character(arg)


@public
def psi0(z):
    """Standard generic character psi(sum z_{i,i+1}) of Z_n."""
    if not z.is_upper_unipotent():
        raise DomainError("psi0 is defined on upper unipotents")
    arg = 0
    for i in range(z.size - 1):
        arg = z[i, i + 1] + arg
    if isinstance(arg, int):
        return 1 + 0j
    return additive_character(arg)


def _roots(group, n):
    if group == "B_H":
        return ([(i, 1, j, -1) for i in range(n) for j in range(i + 1, n)] +
                [(i, 1, j, 1) for i in range(n) for j in range(i + 1, n)] +
                [(i, 1, None, 0) for i in range(n)])
    if group == "Q_n":
        return ([(i, 1, j, 1) for i in range(n) for j in range(i + 1, n)] +
                [(i, 1, None, 0) for i in range(n)])
    if group in ("B_GL", "B_G"):
        return [(i, 1, j, -1) for i in range(n) for j in range(i + 1, n)]
    raise ValueError("unknown group {!r}".format(group))


@public
def modulus_character(group, t):
    """Exponent e with delta_group(t) = q**e.

    `t` is the list of valuations of the torus coordinates: t_1..t_n for
    B_H, Q_n and B_GL, and (a1, d1, a2, d2) for B_G.
    """
    t = list(t)
    if group == "B_G":
        a1, d1, a2, d2 = t
        return -Fraction((a1 - d1) + (a2 - d2))
    total = 0
    for i, ci, j, cj in _roots(group, len(t)):
        total += ci*t[i] + (cj*t[j] if j is not None else 0)
    return -Fraction(total)
