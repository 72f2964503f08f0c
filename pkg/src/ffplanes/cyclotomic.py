"""Exact arithmetic in Z[z], z a primitive p-th root of unity (p an odd prime).

A value is stored as p integer coordinates over 1, z, ..., z^(p-1) and kept in
the canonical form whose last coordinate is zero, obtained by subtracting a
multiple of 1 + z + ... + z^(p-1) = 0.  Since 1, z, ..., z^(p-2) is a basis of
the ring over the integers, canonical forms are unique and equality is a plain
tuple comparison.  No floating point is used anywhere.
"""

from __future__ import annotations


class Cyclotomic:
    """An element of Z[z] with exact integer coordinates."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs) -> None:
        coeffs = tuple(coeffs)
        if len(coeffs) != p:
            raise ValueError(f"need {p} coordinates, got {len(coeffs)}")
        last = coeffs[-1]
        if last:
            coeffs = tuple(c - last for c in coeffs)
        self.p = p
        self.coeffs = coeffs

    @classmethod
    def zero(cls, p: int) -> "Cyclotomic":
        return cls(p, (0,) * p)

    @classmethod
    def integer(cls, p: int, n: int) -> "Cyclotomic":
        return cls(p, (n,) + (0,) * (p - 1))

    @classmethod
    def root_power(cls, p: int, j: int) -> "Cyclotomic":
        """z**j for any integer j."""
        coeffs = [0] * p
        coeffs[j % p] = 1
        return cls(p, coeffs)

    @classmethod
    def from_counts(cls, p: int, counts) -> "Cyclotomic":
        """sum(counts[j] * z**j); counts may be any length-p integer sequence."""
        return cls(p, (int(c) for c in counts))

    def _check(self, other: "Cyclotomic") -> None:
        if self.p != other.p:
            raise ValueError("mixed root orders")

    def __add__(self, other):
        if isinstance(other, int):
            other = Cyclotomic.integer(self.p, other)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        self._check(other)
        return Cyclotomic(self.p, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.p, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, int):
            other = Cyclotomic.integer(self.p, other)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        self._check(other)
        return Cyclotomic(self.p, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return Cyclotomic(self.p, tuple(a * other for a in self.coeffs))
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        self._check(other)
        p = self.p
        raw = [0] * p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        raw[(i + j) % p] += a * b
        return Cyclotomic(p, raw)

    __rmul__ = __mul__

    def shifted(self, j: int) -> "Cyclotomic":
        """self * z**j, done as an index rotation."""
        p = self.p
        j %= p
        raw = [0] * p
        for i, a in enumerate(self.coeffs):
            raw[(i + j) % p] += a
        return Cyclotomic(p, raw)

    def conjugate(self) -> "Cyclotomic":
        """Complex conjugation, z**j -> z**(p-j)."""
        p = self.p
        raw = [0] * p
        for i, a in enumerate(self.coeffs):
            raw[(p - i) % p] += a
        return Cyclotomic(p, raw)

    def abs_squared(self) -> "Cyclotomic":
        return self * self.conjugate()

    @property
    def is_integer(self) -> bool:
        return not any(self.coeffs[1:])

    def as_int(self) -> int:
        if not self.is_integer:
            raise ValueError(f"not a rational integer: {self!r}")
        return self.coeffs[0]

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.is_integer and self.coeffs[0] == other
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        return self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __repr__(self) -> str:
        return f"Cyclotomic(p={self.p}, {list(self.coeffs)})"
