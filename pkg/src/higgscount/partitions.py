"""Partition combinatorics and the filtration exponent rho.

Partitions are stored as weakly decreasing tuples of positive parts.  The
multiplicity view lambda = (1^{r_1}, 2^{r_2}, ..., t^{r_t}) drives the block
structure of the iterated residue: block i consists of r_i consecutive
variables.
"""

from __future__ import annotations

from typing import NamedTuple


class Partition:
    """Immutable integer partition."""

    __slots__ = ("parts",)

    def __init__(self, parts):
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts):
            raise ValueError("parts must be positive")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError("parts must be weakly decreasing")
        self.parts = parts

    @staticmethod
    def all_of_size(n):
        """All partitions of n, largest part first, in lex order."""
        out = []

        def rec(remaining, cap, acc):
            if remaining == 0:
                out.append(Partition(acc))
                return
            for p in range(min(cap, remaining), 0, -1):
                rec(remaining - p, p, acc + [p])

        rec(n, n, [])
        return out

    def size(self):
        return sum(self.parts)

    def length(self):
        return len(self.parts)

    def conjugate(self):
        if not self.parts:
            return Partition(())
        cols = [0] * self.parts[0]
        for p in self.parts:
            for j in range(p):
                cols[j] += 1
        return Partition(cols)

    def multiplicity(self, i):
        """r_i = number of parts equal to i."""
        return sum(1 for p in self.parts if p == i)

    def max_part(self):
        return self.parts[0] if self.parts else 0

    def r_below(self, i):
        """r_{<i} = number of parts with value < i."""
        return sum(1 for p in self.parts if p < i)

    def r_upto(self, i):
        """r_{<=i}."""
        return sum(1 for p in self.parts if p <= i)

    def cells(self):
        """Cells (i, j), 1-indexed: row i, column j."""
        for i, p in enumerate(self.parts, start=1):
            for j in range(1, p + 1):
                yield (i, j)

    def arm(self, cell):
        i, j = cell
        if not (1 <= i <= len(self.parts) and 1 <= j <= self.parts[i - 1]):
            raise ValueError(f"cell {cell} outside diagram")
        return self.parts[i - 1] - j

    def leg(self, cell):
        i, j = cell
        if not (1 <= i <= len(self.parts) and 1 <= j <= self.parts[i - 1]):
            raise ValueError(f"cell {cell} outside diagram")
        return sum(1 for p in self.parts[i:] if p >= j)

    def arm_leg(self, cell):
        return self.arm(cell), self.leg(cell)

    def hook(self, cell):
        return self.arm(cell) + self.leg(cell) + 1

    def pairing(self):
        """<lambda, lambda> = sum of squared conjugate parts."""
        return sum(c * c for c in self.conjugate().parts)

    def __eq__(self, other):
        return isinstance(other, Partition) and self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        return f"Partition{self.parts}"


class ChernClass(NamedTuple):
    r: int
    d: int

    def twist(self, n):
        """alpha(n) = (r, d + n*r)."""
        return ChernClass(self.r, self.d + n * self.r)


def chi(a, b, g):
    """Euler pairing chi(a, b) = r_a d_b - r_b d_a + r_a r_b (1-g)."""
    return a.r * b.d - b.r * a.d + a.r * b.r * (1 - g)


def lam_of_tuple(alphas):
    """Partition (1^{rk a_1}, 2^{rk a_2}, ...) attached to a tuple of classes."""
    parts = []
    for i, a in enumerate(alphas, start=1):
        parts.extend([i] * a.r)
    return Partition(sorted(parts, reverse=True))


def rho(l, alphas, g):
    """Filtration exponent rho_l of a tuple (alpha_1..alpha_s).

    The defining double sum computes -rho_l, so the result is negated:
    rho_l = -[ sum_{i<j} (i chi(a_i,a_j) + (i-1) chi(a_j,a_i) - i(j-1) r_i r_j l)
             + sum_i ((i-1) chi(a_i,a_i) - binom(i,2) r_i^2 l) ].
    """
    alphas = list(alphas)
    s = len(alphas)
    acc = 0
    for i in range(1, s + 1):
        ai = alphas[i - 1]
        for j in range(i + 1, s + 1):
            aj = alphas[j - 1]
            acc += i * chi(ai, aj, g) + (i - 1) * chi(aj, ai, g)
            acc -= i * (j - 1) * ai.r * aj.r * l
        acc += (i - 1) * chi(ai, ai, g)
        acc -= (i * (i - 1) // 2) * ai.r * ai.r * l
    return -acc


def rho0(alphas, g):
    return rho(0, alphas, g)
