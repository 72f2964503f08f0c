"""Exact arithmetic in small finite fields F_q, q = p**k with p an odd prime.

Elements are integer codes 0..q-1.  The code of an element with coefficient
vector (c0, c1, ..., c_{k-1}) in the power basis of the modulus (c0 the
constant term) is sum(c_i * p**(k-1-i)), so plain integer order on codes is
the canonical element order: lexicographic on coefficient vectors with the
constant term most significant.  That order is the tie-breaker everywhere
(square-root choice, non-square selection, set serialization).

All operations are table-driven: the context precomputes dense q x q lookup
tables once, which both the pure-Python and the compiled kernels index into.
Characteristic 2 is rejected at construction; the square / non-square split
and the halving used downstream need odd q.  Intended scale is q <= ~121.

Contexts are immutable after construction and safe to share across threads.
"""

from __future__ import annotations

import itertools
from enum import Enum

import numpy as np

from .cyclotomic import Cyclotomic
from .errors import CompositeP, DivisionByZero, ReducibleModulus


class SquareClass(Enum):
    """Multiplicative type of a field element."""

    ZERO = "zero"
    SQUARE = "square"
    NON_SQUARE = "non-square"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


# Polynomials over F_p are little-endian coefficient lists without trailing
# zeros; [] is the zero polynomial.

def _ptrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _ptrim(out)


def _pmod(a, m, p):
    """Remainder of a modulo a monic m."""
    a = list(a)
    dm = len(m) - 1
    while len(a) > dm:
        lead = a[-1]
        if lead:
            shift = len(a) - 1 - dm
            for i, mi in enumerate(m):
                a[shift + i] = (a[shift + i] - lead * mi) % p
        a.pop()
    return _ptrim(a)


def _is_irreducible(m, p):
    """Trial division by every monic polynomial of degree <= deg(m)/2."""
    k = len(m) - 1
    for deg in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            div = list(low) + [1]
            if not _pmod(m, div, p):
                return False
    return True


def _default_modulus(p, k):
    """Smallest monic irreducible of degree k, constant term most significant."""
    for low in itertools.product(range(p), repeat=k):
        candidate = list(low) + [1]
        if _is_irreducible(candidate, p):
            return candidate
    raise AssertionError("no irreducible polynomial found")  # cannot happen


class FieldCtx:
    """Arithmetic context for F_q with dense lookup tables.

    Use :func:`make_field` to construct one.  Public numpy tables (read-only):
    ``add_table``, ``sub_table``, ``mul_table``, ``neg_table``, ``inv_table``,
    ``sq_table``, ``trace_table``; plus ``one`` (the code of 1), ``non_square``
    (the smallest non-square) and ``modulus`` (coefficients c0..ck, only for
    k > 1).
    """

    def __init__(self, p: int, k: int = 1, modulus=None) -> None:
        if p == 2 or not _is_prime(p):
            raise CompositeP(f"p must be an odd prime, got {p}")
        if k < 1:
            raise ValueError(f"extension degree must be >= 1, got {k}")
        self.p = p
        self.k = k
        self.q = p**k

        if k == 1:
            if modulus is not None:
                raise ValueError("a modulus is only meaningful for k > 1")
            self.modulus = None
            self._modulus_le = None
        else:
            if modulus is None:
                mod_le = _default_modulus(p, k)
            else:
                mod_le = [int(c) % p for c in modulus]
                if len(mod_le) != k + 1 or mod_le[-1] != 1:
                    raise ValueError(
                        f"modulus must be monic of degree {k} (got {list(modulus)})"
                    )
                if not _is_irreducible(mod_le, p):
                    raise ReducibleModulus(f"{list(modulus)} factors over F_{p}")
            self._modulus_le = mod_le
            self.modulus = tuple(mod_le)

        self._build_tables()
        self._cache = {}

    # -- element encoding ---------------------------------------------------

    def coeffs(self, a: int) -> tuple:
        """Coefficient vector (c0..c_{k-1}) of the element with code a."""
        out = []
        for i in range(self.k - 1, -1, -1):
            out.append((a // self.p**i) % self.p)
        return tuple(out)

    def from_coeffs(self, cs) -> int:
        cs = list(cs)
        if len(cs) != self.k:
            raise ValueError(f"need {self.k} coefficients, got {len(cs)}")
        code = 0
        for c in cs:
            c = int(c)
            if not 0 <= c < self.p:
                raise ValueError(f"coefficient {c} out of range for p={self.p}")
            code = code * self.p + c
        return code

    def elements(self):
        return range(self.q)

    def units(self):
        return range(1, self.q)

    # -- table construction -------------------------------------------------

    def _build_tables(self):
        p, k, q = self.p, self.k, self.q
        if k == 1:
            ar = np.arange(q, dtype=np.int64)
            add = (ar[:, None] + ar[None, :]) % q
            mul = (ar[:, None] * ar[None, :]) % q
        else:
            # coeffs() is constant-term first, which is the little-endian
            # polynomial layout used by the schoolbook helpers
            le = [_ptrim(list(self.coeffs(a))) for a in range(q)]
            def to_code(poly):
                return self.from_coeffs(list(poly) + [0] * (k - len(poly)))
            add = np.zeros((q, q), dtype=np.int64)
            mul = np.zeros((q, q), dtype=np.int64)
            for a in range(q):
                pa = le[a]
                for b in range(a, q):
                    pb = le[b]
                    n = max(len(pa), len(pb))
                    s = [( (pa[i] if i < len(pa) else 0) + (pb[i] if i < len(pb) else 0)) % p
                         for i in range(n)]
                    add[a, b] = add[b, a] = to_code(s)
                    m = _pmod(_pmul(pa, pb, p), self._modulus_le, p)
                    mul[a, b] = mul[b, a] = to_code(m)

        self.one = self.from_coeffs([1] + [0] * (k - 1))
        neg = np.zeros(q, dtype=np.int64)
        for a in range(q):
            row = add[a]
            neg[a] = int(np.nonzero(row == 0)[0][0])
        sub = add[:, neg]
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            inv[a] = int(np.nonzero(mul[a] == self.one)[0][0])
        sq = mul.diagonal().copy()

        as_table = lambda a: np.ascontiguousarray(a, dtype=np.int16)
        self.add_table = as_table(add)
        self.sub_table = as_table(sub)
        self.mul_table = as_table(mul)
        self.neg_table = as_table(neg)
        self.inv_table = as_table(inv)
        self.sq_table = as_table(sq)

        # row lists: faster than numpy for scalar lookups
        self._add = add.tolist()
        self._sub = sub.tolist()
        self._mul = mul.tolist()
        self._neg = neg.tolist()
        self._inv = inv.tolist()
        self._sq = sq.tolist()

        # square roots: ascending scan records the canonical (smaller) root
        root = [-1] * q
        for b in range(q):
            r = self._sq[b]
            if root[r] < 0:
                root[r] = b
        self._sqrt = root
        self.sqrt_table = np.asarray(root, dtype=np.int16)

        # Euler criterion a**((q-1)/2) splits the units into the two classes
        neg_one = self._neg[self.one]
        half = (q - 1) // 2
        classes = [SquareClass.ZERO]
        for a in range(1, q):
            e = self.pow(a, half)
            if e == self.one:
                classes.append(SquareClass.SQUARE)
            elif e == neg_one:
                classes.append(SquareClass.NON_SQUARE)
            else:
                raise AssertionError("Euler criterion returned a third value")
        self._classes = classes
        n_squares = sum(1 for c in classes if c is SquareClass.SQUARE)
        if n_squares != half:
            raise AssertionError("square count is not (q-1)/2")
        self.non_square = classes.index(SquareClass.NON_SQUARE)

        # trace to the prime subfield via Frobenius iterates
        trace = []
        for a in range(q):
            acc, x = a, a
            for _ in range(self.k - 1):
                x = self.pow(x, p)
                acc = self._add[acc][x]
            cs = self.coeffs(acc)
            if any(cs[1:]):
                raise AssertionError("trace landed outside the prime subfield")
            trace.append(cs[0])
        self._trace = trace
        self.trace_table = np.asarray(trace, dtype=np.int16)

        for t in (self.add_table, self.sub_table, self.mul_table, self.neg_table,
                  self.inv_table, self.sq_table, self.sqrt_table, self.trace_table):
            t.setflags(write=False)

    # -- scalar operations ----------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def sub(self, a: int, b: int) -> int:
        return self._sub[a][b]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return self._inv[a]

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise DivisionByZero("division by zero")
        return self._mul[a][self._inv[b]]

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        result = self.one
        base = a
        while e:
            if e & 1:
                result = self._mul[result][base]
            base = self._mul[base][base]
            e >>= 1
        return result

    def square_class(self, a: int) -> SquareClass:
        return self._classes[a]

    def sqrt(self, a: int):
        """Canonically smaller root of y**2 = a, or None when a is a non-square."""
        r = self._sqrt[a]
        return None if r < 0 else r

    def trace(self, a: int) -> int:
        """Trace into the prime subfield, returned as a residue mod p."""
        return self._trace[a]

    def character(self, a: int) -> Cyclotomic:
        """Additive character value z**trace(a), exact in Z[z]."""
        return Cyclotomic.root_power(self.p, self._trace[a])

    def embed_subfield(self, residue: int) -> int:
        """Code of the constant polynomial with value residue mod p."""
        if not 0 <= residue < self.p:
            raise ValueError(f"residue {residue} out of range for p={self.p}")
        return residue * self.p ** (self.k - 1)

    def in_prime_subfield(self, a: int) -> bool:
        return not any(self.coeffs(a)[1:])

    # -- identity / serialization ----------------------------------------------

    def descriptor(self) -> dict:
        out = {"p": self.p, "k": self.k}
        if self.k > 1:
            out["modulus"] = list(self.modulus)
        return out

    @classmethod
    def from_descriptor(cls, obj: dict) -> "FieldCtx":
        return cls(int(obj["p"]), int(obj["k"]), obj.get("modulus"))

    def __eq__(self, other):
        if not isinstance(other, FieldCtx):
            return NotImplemented
        return (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        if self.k == 1:
            return f"FieldCtx(q={self.q})"
        return f"FieldCtx(q={self.q}, p={self.p}, k={self.k}, modulus={list(self.modulus)})"


def make_field(p: int, k: int = 1, modulus=None) -> FieldCtx:
    """Build F_(p**k).

    The modulus, when omitted for k > 1, is the smallest monic irreducible of
    degree k in the canonical coefficient order, and the stored non-square is
    the smallest one, so contexts are reproducible across runs.
    """
    return FieldCtx(p, k, modulus)
