"""Integer partitions and the partition-indexed q-quantities.

Covers partition enumeration (reverse-lexicographic, for deterministic
series assembly), conjugation, the inner product computed by two independent
routes, q-Pochhammer products, centralizer orders of nilpotent Jordan types,
per-partition weights of the orbit generating series, the Moebius function
and the count of monic irreducible polynomials of a given degree.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .exactnum import InternalCheckError, PolyQ, RationalFunctionQ


class Partition:
    """Weakly decreasing sequence of positive integers; () is the partition of 0."""

    __slots__ = ("_parts",)

    def __init__(self, parts=()):
        parts = tuple(int(p) for p in parts)
        for i, p in enumerate(parts):
            if p < 1:
                raise ValueError(f"partition parts must be >= 1, got {p}")
            if i and parts[i - 1] < p:
                raise ValueError(f"parts must be weakly decreasing: {parts}")
        self._parts = parts

    @property
    def parts(self) -> tuple[int, ...]:
        return self._parts

    @property
    def weight(self) -> int:
        return sum(self._parts)

    @property
    def length(self) -> int:
        return len(self._parts)

    def conjugate(self) -> "Partition":
        """Transpose of the Young diagram: part i counts original parts >= i."""
        if not self._parts:
            return self
        out = []
        for i in range(1, self._parts[0] + 1):
            out.append(sum(1 for p in self._parts if p >= i))
        return Partition(out)

    def exponential_form(self) -> dict[int, int]:
        """Map part value -> multiplicity, finitely supported."""
        mult: dict[int, int] = {}
        for p in self._parts:
            mult[p] = mult.get(p, 0) + 1
        return mult

    def __eq__(self, other) -> bool:
        return isinstance(other, Partition) and self._parts == other._parts

    def __hash__(self) -> int:
        return hash(self._parts)

    def __iter__(self):
        return iter(self._parts)

    def __repr__(self) -> str:
        return f"Partition{self._parts}"


def partitions_of(n: int) -> list[Partition]:
    """All partitions of n, exactly once, in reverse-lexicographic order."""
    if n < 0:
        raise ValueError("cannot partition a negative integer")
    return [Partition(p) for p in _parts_desc(n, n)]


def _parts_desc(n: int, max_part: int):
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in _parts_desc(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def partition_count(n: int) -> int:
    """p(n) by the pentagonal-number recurrence (independent of enumeration)."""
    if n < 0:
        return 0
    if n == 0:
        return 1
    total = 0
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        g2 = k * (3 * k + 1) // 2
        if g1 > n and g2 > n:
            break
        sign = -1 if k % 2 == 0 else 1
        if g1 <= n:
            total += sign * partition_count(n - g1)
        if g2 <= n:
            total += sign * partition_count(n - g2)
        k += 1
    return total


def inner_product(lam: Partition, mu: Partition) -> int:
    """Sum of products of conjugate parts.

    Computed by both available routes -- conjugate-partition sum, and the
    min-weighted double sum over part multiplicities -- and cross-asserted,
    so every call re-verifies their equivalence.
    """
    lc = lam.conjugate().parts
    mc = mu.conjugate().parts
    via_conjugates = sum(a * b for a, b in zip(lc, mc))

    em = lam.exponential_form()
    en = mu.exponential_form()
    via_multiplicities = sum(
        min(i, j) * mi * nj for i, mi in em.items() for j, nj in en.items()
    )

    if via_conjugates != via_multiplicities:
        raise InternalCheckError(
            f"inner product routes disagree on {lam}, {mu}: "
            f"{via_conjugates} != {via_multiplicities}"
        )
    return via_conjugates


def q_pochhammer(r: int) -> PolyQ:
    """The product (1-q)(1-q^2)...(1-q^r); the empty product 1 for r = 0."""
    if r < 0:
        raise ValueError("q_pochhammer requires r >= 0")
    out = PolyQ([1])
    for j in range(1, r + 1):
        out = out * PolyQ([1] + [0] * (j - 1) + [-1])
    return out


def pochhammer_product(lam: Partition) -> PolyQ:
    """Product of q_pochhammer(m) over the part multiplicities m of lam."""
    out = PolyQ([1])
    for m in lam.exponential_form().values():
        out = out * q_pochhammer(m)
    return out


def centralizer_order(lam: Partition) -> PolyQ:
    """Order of the centralizer of a nilpotent matrix of Jordan type lam,
    as a polynomial in the field size.

    Equals q**<lam,lam> times the pochhammer product evaluated at 1/q, with
    the negative powers cleared symbolically so the result stays a plain
    polynomial.
    """
    ip = inner_product(lam, lam)
    cleared = sum(m * (m + 1) // 2 for m in lam.exponential_form().values())
    out = PolyQ.q_power(ip - cleared)
    for m in lam.exponential_form().values():
        for j in range(1, m + 1):
            out = out * PolyQ([-1] + [0] * (j - 1) + [1])  # q^j - 1
    return out


def orbit_weight(lam: Partition, g: int) -> RationalFunctionQ:
    """Weight of a partition in the orbit generating series.

    The count of g-tuples of nilpotent matrices commuting with a fixed
    regular block of Jordan type lam, divided by the order of its
    centralizer: q**(g(<lam,lam> - length)) / centralizer_order(lam).
    """
    if lam.weight < 1:
        raise ValueError("orbit weight needs a nonempty partition")
    if g < 1:
        raise ValueError("tuple length g must be >= 1")
    ip = inner_product(lam, lam)
    num = PolyQ.q_power(g * (ip - lam.length))
    return RationalFunctionQ(num, centralizer_order(lam))


def mobius(n: int) -> int:
    """Standard Moebius function via trial factorization."""
    if n < 1:
        raise ValueError("mobius is defined on positive integers")
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


def divisors(n: int) -> list[int]:
    """Positive divisors of n in increasing order."""
    if n < 1:
        raise ValueError("divisors requires n >= 1")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def monic_irreducible_count(d: int) -> PolyQ:
    """Number of monic irreducible polynomials of degree d with x excluded,
    as a polynomial in the field size: (1/d) * sum over e | d of
    mobius(e) * (q**(d/e) - 1).

    Rational coefficients in general, but integer-valued at prime powers;
    the symbolic form is what the series assembly exponentiates by.
    """
    if d < 1:
        raise ValueError("degree must be >= 1")
    total = PolyQ()
    for e in divisors(d):
        total = total + mobius(e) * (PolyQ.q_power(d // e) - PolyQ([1]))
    return total * Fraction(1, d)
