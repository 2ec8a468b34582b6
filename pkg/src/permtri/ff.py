"""Finite field towers GF(p) < GF(q) < GF(q^2) with table-backed arithmetic.

Every layer of the tower is a :class:`FieldCtx`.  An element is identified by
its canonical integer index

    n = sum_i c_i * B**i

where (c_i) are the coefficient digits over the layer below (lowest power
first) and B is that layer's cardinality, applied recursively down to GF(p).
Consequences worth knowing:

* a subfield element keeps its index when lifted into an extension, and
* written in base p, the index of any element spells out its GF(p)
  coordinates in the canonical basis.

Each layer is reduced modulo the *canonical* irreducible polynomial: the
lexicographically smallest monic irreducible, comparing the coefficient
tuple from the highest non-leading term down, each coefficient by its
integer index.  For odd p the quadratic layer therefore has modulus t^2 + c
with -c a non-square, so conjugation x -> x^q flips the sign of the t
coordinate and the adjoined root t itself is the distinguished element e
with e^q = -e.  For p = 2 the modulus is t^2 + t + c with c of absolute
trace 1 and conjugation maps u + v t to (u + v) + v t.

Multiplication runs on discrete-log tables, addition on per-element GF(p)
digit vectors; both exist as plain lists (scalar ops) and numpy arrays
(vectorised ops, see the v* methods).  Contexts are immutable after
construction and safe to share across threads.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

__all__ = [
    "FieldCtx",
    "FieldTower",
    "Elem",
    "SquareClass",
    "make_field",
    "frobenius",
    "norm_trace",
    "is_square",
    "sqrt",
    "mu_set",
    "lift",
    "project",
    "is_prime",
    "is_prime_power",
    "DEFAULT_MAX_ORDER",
]

# Largest permitted cardinality of the top layer GF(q^2).
DEFAULT_MAX_ORDER = 6_250_000

# Dense order x order add/mul tables are built below this cell count; they
# turn the vectorised ops into single gathers.  Larger layers fall back to
# digit-vector addition and log/exp multiplication.
_DENSE_TABLE_CELLS = 8_000_000


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test (inputs are tiny here)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def is_prime_power(n: int) -> tuple[int, int] | None:
    """Return (p, k) with n = p**k and p prime, or None."""
    if n < 2:
        return None
    p = n
    for d in range(2, n + 1):
        if d * d > n:
            break
        if n % d == 0:
            p = d
            break
    k = 0
    m = n
    while m % p == 0:
        m //= p
        k += 1
    return (p, k) if m == 1 else None


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


class SquareClass:
    """Trichotomy returned by :func:`is_square`."""

    ZERO = "zero"
    SQUARE = "square-nonzero"
    NONSQUARE = "nonsquare"


class Elem:
    """A field element: a context plus its canonical integer index.

    Value semantics; arithmetic through the usual operators.  Plain ints on
    either side are coerced through ``ctx.scalar`` (i.e. interpreted as
    multiples of 1, not as indices).
    """

    __slots__ = ("ctx", "i")

    def __init__(self, ctx: FieldCtx, i: int):
        self.ctx = ctx
        self.i = i

    def coeffs(self) -> tuple:
        """Coefficient vector over the layer below, lowest power first."""
        ctx = self.ctx
        if ctx.base is None:
            return (self.i,)
        B = ctx.base.order
        i = self.i
        out = []
        for _ in range(ctx.degree):
            out.append(Elem(ctx.base, i % B))
            i //= B
        return tuple(out)

    def _coerce(self, other):
        if isinstance(other, Elem):
            if other.ctx is not self.ctx:
                raise ValueError("context mismatch")
            return other.i
        if isinstance(other, int):
            return self.ctx.scalar_idx(other)
        return None

    def __add__(self, other):
        j = self._coerce(other)
        if j is None:
            return NotImplemented
        return Elem(self.ctx, self.ctx.add_i(self.i, j))

    __radd__ = __add__

    def __sub__(self, other):
        j = self._coerce(other)
        if j is None:
            return NotImplemented
        return Elem(self.ctx, self.ctx.sub_i(self.i, j))

    def __rsub__(self, other):
        j = self._coerce(other)
        if j is None:
            return NotImplemented
        return Elem(self.ctx, self.ctx.sub_i(j, self.i))

    def __mul__(self, other):
        j = self._coerce(other)
        if j is None:
            return NotImplemented
        return Elem(self.ctx, self.ctx.mul_i(self.i, j))

    __rmul__ = __mul__

    def __truediv__(self, other):
        j = self._coerce(other)
        if j is None:
            return NotImplemented
        return Elem(self.ctx, self.ctx.mul_i(self.i, self.ctx.inv_i(j)))

    def __rtruediv__(self, other):
        j = self._coerce(other)
        if j is None:
            return NotImplemented
        return Elem(self.ctx, self.ctx.mul_i(j, self.ctx.inv_i(self.i)))

    def __neg__(self):
        return Elem(self.ctx, self.ctx.neg_i(self.i))

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        return Elem(self.ctx, self.ctx.pow_i(self.i, k))

    def inv(self) -> Elem:
        return Elem(self.ctx, self.ctx.inv_i(self.i))

    def __eq__(self, other):
        if isinstance(other, Elem):
            return self.ctx is other.ctx and self.i == other.i
        if isinstance(other, int):
            return self.i == self.ctx.scalar_idx(other)
        return NotImplemented

    def __hash__(self):
        return hash((id(self.ctx), self.i))

    def __bool__(self):
        return self.i != 0

    def __repr__(self):
        return f"GF({self.ctx.order}):{self.i}"


class FieldCtx:
    """One layer of the tower.  Build through :func:`make_field`.

    Attributes: ``p`` (characteristic), ``degree`` (over the layer below),
    ``h`` (absolute degree over GF(p)), ``order``, ``base`` (layer below or
    None), ``level`` ("Fp"/"Fq"/"Fq2"), ``modulus`` (tuple of base-layer
    indices, monic, low power first; None for the prime layer), and for the
    top layer ``q`` and ``e`` (odd p only).
    """

    def __init__(self, *, _token=None):
        if _token is not _CTX_TOKEN:
            raise TypeError("use make_field() to construct field contexts")

    # ---------------------------------------------------------------- build

    @staticmethod
    def _prime(p: int) -> FieldCtx:
        ctx = FieldCtx(_token=_CTX_TOKEN)
        ctx.p = p
        ctx.degree = 1
        ctx.h = 1
        ctx.order = p
        ctx.base = None
        ctx.level = "Fp"
        ctx.modulus = None
        ctx.q = None
        ctx.e = None
        ctx._finish_tables(gen=ctx._find_prime_generator())
        return ctx

    @staticmethod
    def _extension(base: FieldCtx, degree: int, level: str) -> FieldCtx:
        ctx = FieldCtx(_token=_CTX_TOKEN)
        ctx.p = base.p
        ctx.degree = degree
        ctx.h = base.h * degree
        ctx.order = base.order**degree
        ctx.base = base
        ctx.level = level
        ctx.modulus = ctx._canonical_modulus()
        ctx.q = None
        ctx.e = None
        ctx._finish_tables(gen=ctx._find_ext_generator())
        return ctx

    def _canonical_modulus(self) -> tuple[int, ...]:
        base, d = self.base, self.degree
        for hi_first in itertools.product(range(base.order), repeat=d):
            cand = tuple(reversed(hi_first)) + (1,)  # low power first, monic
            if _coeff_irreducible(cand, base):
                return cand
        raise RuntimeError("no irreducible modulus found")  # pragma: no cover

    def _find_prime_generator(self) -> int:
        if self.p == 2:
            return 1
        fac = _prime_factors(self.p - 1)
        for g in range(2, self.p):
            if all(pow(g, (self.p - 1) // r, self.p) != 1 for r in fac):
                return g
        raise RuntimeError("no primitive root")  # pragma: no cover

    def _find_ext_generator(self) -> int:
        n1 = self.order - 1
        fac = _prime_factors(n1)
        for g in range(2, self.order):
            if all(self._boot_pow(g, n1 // r) != 1 for r in fac):
                return g
        raise RuntimeError("no generator")  # pragma: no cover

    # Bootstrap coefficient arithmetic, used only before the log tables exist.
    def _boot_mul(self, x: int, y: int) -> int:
        base, d, B = self.base, self.degree, self.base.order
        xv = [(x // B**k) % B for k in range(d)]
        yv = [(y // B**k) % B for k in range(d)]
        prod = [0] * (2 * d - 1)
        for ix, cx in enumerate(xv):
            if cx == 0:
                continue
            for iy, cy in enumerate(yv):
                prod[ix + iy] = base.add_i(prod[ix + iy], base.mul_i(cx, cy))
        # reduce modulo the monic modulus
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k]
            if c == 0:
                continue
            prod[k] = 0
            for j in range(d):
                m = self.modulus[j]
                if m:
                    prod[k - d + j] = base.sub_i(prod[k - d + j], base.mul_i(c, m))
        out = 0
        for k in range(d - 1, -1, -1):
            out = out * B + prod[k]
        return out

    def _boot_pow(self, x: int, k: int) -> int:
        r = 1
        while k:
            if k & 1:
                r = self._boot_mul(r, x)
            x = self._boot_mul(x, x)
            k >>= 1
        return r

    def _finish_tables(self, gen: int) -> None:
        n, p = self.order, self.p
        self.generator_idx = gen

        # GF(p) digit matrix of every index (base-p expansion).
        idx = np.arange(n, dtype=np.int64)
        dig = np.empty((n, self.h), dtype=np.int16)
        t = idx.copy()
        for k in range(self.h):
            dig[:, k] = t % p
            t //= p
        self.np_dig = dig
        self.np_pv = (p ** np.arange(self.h, dtype=np.int64)).astype(np.int64)

        # negation tables
        neg = ((p - dig) % p) @ self.np_pv
        self.np_neg = neg.astype(np.int32)
        self._neg = self.np_neg.tolist()

        # exp/log tables from the generator
        exp = [0] * (2 * (n - 1)) if n > 2 else [1, 1]
        log = [0] * n
        if n > 2:
            acc = 1
            if self.base is None:
                for k in range(n - 1):
                    exp[k] = acc
                    exp[k + n - 1] = acc
                    log[acc] = k
                    acc = acc * gen % p
            else:
                for k in range(n - 1):
                    exp[k] = acc
                    exp[k + n - 1] = acc
                    log[acc] = k
                    acc = self._boot_mul(acc, gen)
            if acc != 1:  # pragma: no cover
                raise RuntimeError("generator order mismatch")
        else:
            log = [0, 0]
        self._exp = exp
        self._log = log
        self.np_exp2 = np.array(exp, dtype=np.int32)
        self.np_log = np.array(log, dtype=np.int32)

        # inversion table (index 0 left as 0; scalar path raises instead)
        inv = np.zeros(n, dtype=np.int32)
        nz = np.arange(1, n)
        inv[nz] = self.np_exp2[(n - 1) - self.np_log[nz]]
        self.np_inv = inv
        self._inv = inv.tolist()

        # Dense tables for the vectorised fast path.
        self.np_add = None
        self.np_mul = None
        if n * n <= _DENSE_TABLE_CELLS:
            add = np.empty((n, n), dtype=np.int32)
            block = max(1, _DENSE_TABLE_CELLS // (8 * n))
            for lo in range(0, n, block):
                hi = min(n, lo + block)
                s = (dig[lo:hi, None, :] + dig[None, :, :]) % p
                add[lo:hi] = s.astype(np.int64) @ self.np_pv
            self.np_add = add
            lg = self.np_log
            mul = self.np_exp2[lg[:, None] + lg[None, :]].astype(np.int32)
            mul[0, :] = 0
            mul[:, 0] = 0
            self.np_mul = mul

        # Zech-style table: _zech[k] = log(1 + g^k), -1 when the sum is zero.
        ones = self.vadd(np.ones(n - 1, dtype=np.int64), self.np_exp2[: n - 1])
        zech = np.where(ones == 0, -1, self.np_log[ones])
        self._zech = zech.tolist()

        if self.level == "Fq2":
            self._finish_top_tables()

    def _finish_top_tables(self) -> None:
        n, B = self.order, self.base.order
        self.q = B
        idx = np.arange(n, dtype=np.int64)
        u, v = idx % B, idx // B
        if self.p != 2:
            if self.modulus[1] != 0:  # pragma: no cover
                raise RuntimeError("odd-p quadratic modulus must be t^2 + c")
            frob = u + B * self.base.np_neg[v]
        else:
            frob = self.base.vadd(u, v) + B * v
        self.np_frob = frob.astype(np.int32)
        self._frob = self.np_frob.tolist()
        self.np_norm = self.vmul(idx, self.np_frob).astype(np.int32)
        if not (self.np_norm < B).all():  # pragma: no cover
            raise RuntimeError("norm left the subfield")
        self._norm = self.np_norm.tolist()

        # (q+1)-st roots of unity, ascending by index
        mu = sorted(int(self.np_exp2[k * (B - 1)]) for k in range(B + 1))
        self.mu_indices = tuple(mu)
        self.np_mu = np.array(mu, dtype=np.int32)

        if self.p != 2:
            self.e = Elem(self, B)  # the adjoined root t
            if self._frob[B] != self._neg[B]:  # pragma: no cover
                raise RuntimeError("e^q != -e")

    # ------------------------------------------------------- scalar indices

    def add_i(self, x: int, y: int) -> int:
        if x == 0:
            return y
        if y == 0:
            return x
        n1 = self.order - 1
        i, j = self._log[x], self._log[y]
        z = self._zech[(j - i) % n1]
        return 0 if z < 0 else self._exp[i + z]

    def sub_i(self, x: int, y: int) -> int:
        return self.add_i(x, self._neg[y])

    def neg_i(self, x: int) -> int:
        return self._neg[x]

    def mul_i(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        return self._exp[self._log[x] + self._log[y]]

    def inv_i(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inversion of zero")
        return self._inv[x]

    def pow_i(self, x: int, k: int) -> int:
        if x == 0:
            return 1 if k == 0 else 0
        return self._exp[self._log[x] * k % (self.order - 1)]

    def scalar_idx(self, k: int) -> int:
        return k % self.p

    # ------------------------------------------------------ vectorised ops

    def vadd(self, x, y):
        if self.np_add is not None:
            return self.np_add[x, y]
        x, y = np.broadcast_arrays(x, y)
        s = (self.np_dig[x] + self.np_dig[y]) % self.p
        return s.astype(np.int64) @ self.np_pv

    def vsub(self, x, y):
        return self.vadd(x, self.np_neg[y])

    def vmul(self, x, y):
        if self.np_mul is not None:
            return self.np_mul[x, y]
        x, y = np.broadcast_arrays(x, y)
        out = self.np_exp2[self.np_log[x] + self.np_log[y]]
        return np.where((x == 0) | (y == 0), 0, out)

    def vinv(self, x):
        return self.np_inv[x]

    def vpow(self, x, k: int):
        x = np.asarray(x)
        lg = self.np_log[x].astype(np.int64)
        out = self.np_exp2[lg * (k % (self.order - 1)) % (self.order - 1)]
        return np.where(x == 0, 1 if k == 0 else 0, out)

    # ------------------------------------------------------------ elements

    def elem(self, i: int) -> Elem:
        if not 0 <= i < self.order:
            raise ValueError(f"index {i} out of range for GF({self.order})")
        return Elem(self, i)

    def scalar(self, k: int) -> Elem:
        return Elem(self, self.scalar_idx(k))

    @property
    def zero(self) -> Elem:
        return Elem(self, 0)

    @property
    def one(self) -> Elem:
        return Elem(self, 1)

    def elements(self):
        """All elements in canonical index order."""
        return (Elem(self, i) for i in range(self.order))

    def from_coeffs(self, coeffs) -> Elem:
        """Inverse of Elem.coeffs(); accepts base-layer Elems or indices."""
        if self.base is None:
            (c,) = coeffs
            return Elem(self, c.i if isinstance(c, Elem) else c % self.p)
        B = self.base.order
        i = 0
        for c in reversed(list(coeffs)):
            ci = c.i if isinstance(c, Elem) else c
            if not 0 <= ci < B:
                raise ValueError("coefficient out of range")
            i = i * B + ci
        return Elem(self, i)

    def __repr__(self):
        return f"FieldCtx(GF({self.order}), {self.level})"


_CTX_TOKEN = object()


def _coeff_divmod_r(num: list[int], den: list[int], base: FieldCtx):
    """Remainder of coefficient-list division over `base` (low power first)."""
    num = list(num)
    dd = len(den) - 1
    inv_lc = base.inv_i(den[-1])
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k]
        if c == 0:
            continue
        f = base.mul_i(c, inv_lc)
        for j in range(dd + 1):
            num[k - dd + j] = base.sub_i(num[k - dd + j], base.mul_i(f, den[j]))
    while num and num[-1] == 0:
        num.pop()
    return num


def _coeff_irreducible(cand: tuple[int, ...], base: FieldCtx) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    d = len(cand) - 1
    if d == 1:
        return True
    for dd in range(1, d // 2 + 1):
        for tail in itertools.product(range(base.order), repeat=dd):
            den = list(tail) + [1]
            if not _coeff_divmod_r(cand, den, base):
                return False
    return True


@dataclass(frozen=True)
class FieldTower:
    """The full construction GF(p) < GF(q) < GF(q^2); fq is fp when h = 1."""

    fp: FieldCtx
    fq: FieldCtx
    fq2: FieldCtx

    @property
    def p(self) -> int:
        return self.fp.p

    @property
    def h(self) -> int:
        return self.fq.h

    @property
    def q(self) -> int:
        return self.fq.order

    def __repr__(self):
        return f"FieldTower(p={self.p}, q={self.q}, q2={self.fq2.order})"


def make_field(p: int, h: int, max_order: int = DEFAULT_MAX_ORDER) -> FieldTower:
    """Build the tower GF(p) -> GF(p^h) -> GF(p^(2h)).

    Raises ValueError for non-prime p, h < 1, or p^(2h) > max_order.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if h < 1:
        raise ValueError("extension degree must be >= 1")
    if p ** (2 * h) > max_order:
        raise ValueError(f"field size {p}^{2 * h} exceeds the bound {max_order}")
    fp = FieldCtx._prime(p)
    fq = fp if h == 1 else FieldCtx._extension(fp, h, "Fq")
    fq2 = FieldCtx._extension(fq, 2, "Fq2")
    return FieldTower(fp=fp, fq=fq, fq2=fq2)


# ------------------------------------------------------------ element ops


def _require_top(x: Elem) -> FieldCtx:
    if x.ctx.level != "Fq2":
        raise ValueError("operation requires an element of the quadratic layer")
    return x.ctx


def frobenius(x: Elem) -> Elem:
    """x -> x^q on the top layer, computed by coefficient conjugation."""
    ctx = _require_top(x)
    return Elem(ctx, ctx._frob[x.i])


def lift(x: Elem, ext: FieldCtx) -> Elem:
    """Embed a subfield element into `ext` (index-preserving)."""
    if ext.base is not x.ctx:
        raise ValueError("not a direct subfield of the target layer")
    return Elem(ext, x.i)


def project(x: Elem, sub: FieldCtx) -> Elem:
    """Inverse of lift; raises if x is not actually in the subfield."""
    if x.ctx.base is not sub:
        raise ValueError("not a direct extension of the target layer")
    if x.i >= sub.order:
        raise ArithmeticError(f"element {x!r} is not in the subfield")
    return Elem(sub, x.i)


def norm_trace(x: Elem) -> tuple[Elem, Elem]:
    """(x * x^q, x + x^q) projected into GF(q); raises if either escapes."""
    ctx = _require_top(x)
    xq = ctx._frob[x.i]
    n = ctx.mul_i(x.i, xq)
    t = ctx.add_i(x.i, xq)
    sub = ctx.base
    for val in (n, t):
        if val >= sub.order:
            raise ArithmeticError("norm/trace left the subfield")
    return Elem(sub, n), Elem(sub, t)


def is_square(x: Elem) -> str:
    """Euler-criterion square class of x within its own layer.

    In characteristic 2 squaring is bijective, so every nonzero element
    reports square-nonzero.
    """
    if x.i == 0:
        return SquareClass.ZERO
    ctx = x.ctx
    if ctx.p == 2:
        return SquareClass.SQUARE
    r = ctx.pow_i(x.i, (ctx.order - 1) // 2)
    return SquareClass.SQUARE if r == 1 else SquareClass.NONSQUARE


def sqrt(x: Elem) -> Elem | None:
    """A square root of x in its own layer, or None.

    When both roots exist the one with the smaller index is returned.
    """
    ctx = x.ctx
    if x.i == 0:
        return Elem(ctx, 0)
    if ctx.p == 2:
        return Elem(ctx, ctx.pow_i(x.i, ctx.order // 2))
    k = ctx._log[x.i]
    if k % 2:
        return None
    r = ctx._exp[k // 2]
    return Elem(ctx, min(r, ctx._neg[r]))


def mu_set(ctx: FieldCtx) -> list[Elem]:
    """The (q+1)-st roots of unity in GF(q^2), ascending by index."""
    if ctx.level != "Fq2":
        raise ValueError("mu_set is defined on the quadratic layer")
    return [Elem(ctx, i) for i in ctx.mu_indices]
