"""Assembly of the orbit-counting polynomials and the identity verifiers.

The chain runs: per-partition weights -> weight series in X -> formal log ->
Moebius sums giving the absolutely-indecomposable counts A -> divisor sums
giving the indecomposable counts I -> the full orbit counts M.

M is always computed by two independent routes (an infinite product over
irreducible-polynomial degrees, and the exp of the I-weighted divisor sum)
and cross-asserted, so every run re-verifies the algebra that connects the
chain.  Facts guaranteed by the mathematics (polynomiality, integrality,
degree bounds) are hard assertions; the open nonnegativity question is only
ever a report.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

from .exactnum import (
    InternalCheckError,
    PolyQ,
    RationalFunctionQ,
    RF_ONE,
    RF_ZERO,
    TruncatedQSeries,
)
from .partitions import (
    divisors,
    mobius,
    monic_irreducible_count,
    orbit_weight,
    partitions_of,
)
from .series import TruncatedXSeries

KINDS = ("A", "I", "M", "H")

#: prime powers where positivity of the counts is spot-checked at construction
_CHECK_POINTS = (2, 3, 4, 5)


@dataclass(frozen=True)
class CountingPolynomial:
    """A counting polynomial (or rational function, for kind H) with its
    provenance: which count it is, the tuple length g and the matrix order n.
    """

    kind: str
    g: int
    n: int
    value: Union[PolyQ, RationalFunctionQ]

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")

    @property
    def coefficient_list(self) -> tuple[int, ...]:
        """Ascending integer coefficients (kinds with integral values)."""
        poly = self.value if isinstance(self.value, PolyQ) else self.value.as_poly()
        return tuple(int(c) for c in poly.coefficients)

    def degree(self) -> int:
        if isinstance(self.value, PolyQ):
            return self.value.degree()
        raise ValueError("degree of a non-polynomial count")

    def evaluate(self, q0) -> Fraction:
        return self.value.evaluate(q0)

    def __str__(self) -> str:
        return f"{self.kind}_{self.g}({self.n},q) = {self.value}"


@dataclass(frozen=True)
class Mismatch:
    x_degree: int
    q_degree: Optional[int]
    lhs: str
    rhs: str


@dataclass(frozen=True)
class VerificationReport:
    identity: str
    g: int
    x_order: int
    q_order: Optional[int]
    passed: bool
    mismatch: Optional[Mismatch]

    def __post_init__(self):
        if not self.passed and self.mismatch is None:
            raise InternalCheckError("failed report without a mismatch location")


@dataclass(frozen=True)
class ScanReport:
    g: int
    n_max: int
    negative_terms: tuple[tuple[int, int, int], ...]
    polynomials: tuple[CountingPolynomial, ...]

    @property
    def all_nonnegative(self) -> bool:
        return not self.negative_terms


# ---------------------------------------------------------------------------
# the weight series and its formal log


@lru_cache(maxsize=None)
def weight_series(g: int, order: int) -> TruncatedXSeries:
    """Generating series whose X**n coefficient sums orbit_weight over all
    partitions of n (constant term 1)."""
    if g < 1:
        raise ValueError("tuple length g must be >= 1")
    if order < 0:
        raise ValueError("series order must be >= 0")
    coeffs = [RF_ONE]
    for n in range(1, order + 1):
        total = RF_ZERO
        for lam in partitions_of(n):
            total = total + orbit_weight(lam, g)
        coeffs.append(total)
    return TruncatedXSeries(coeffs)


@lru_cache(maxsize=None)
def _log_coefficients(g: int, order: int) -> tuple[RationalFunctionQ, ...]:
    return weight_series(g, order).log().coefficients


def log_weight_coefficient(g: int, n: int) -> RationalFunctionQ:
    """Coefficient of X**n in the formal log of the weight series."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return _log_coefficients(g, n)[n]


@lru_cache(maxsize=None)
def _log_weight_adams(g: int, n: int, d: int) -> RationalFunctionQ:
    """log_weight_coefficient with q -> q**d, cached: the Moebius sums below
    re-request the same transported values many times."""
    return log_weight_coefficient(g, n).adams(d)


# ---------------------------------------------------------------------------
# the counting polynomials


@lru_cache(maxsize=None)
def absolutely_indecomposable_count(g: int, n: int) -> CountingPolynomial:
    """Count of absolutely indecomposable orbits, as a polynomial in q.

    Built as (q - 1) times the Moebius-weighted divisor sum of transported
    log coefficients.  Polynomiality, integrality and the degree bound
    (g-1)*n*n are mathematically guaranteed, so violations raise.
    """
    if g < 1 or n < 1:
        raise ValueError("g and n must be >= 1")
    total = RF_ZERO
    for d in divisors(n):
        mu = mobius(d)
        if mu == 0:
            continue
        total = total + _log_weight_adams(g, n // d, d) * Fraction(mu, d)
    value = total * PolyQ([-1, 1])
    if not value.is_polynomial:
        raise InternalCheckError(f"non-polynomial result for A at g={g}, n={n}")
    poly = value.as_poly()
    if not poly.is_integral:
        raise InternalCheckError(f"non-integral coefficients for A at g={g}, n={n}")
    if poly.degree() > (g - 1) * n * n:
        raise InternalCheckError(
            f"degree bound exceeded for A at g={g}, n={n}: "
            f"{poly.degree()} > {(g - 1) * n * n}"
        )
    return CountingPolynomial("A", g, n, poly)


def coefficient_table(g: int, n: int) -> tuple[int, ...]:
    """Ascending integer coefficients of the absolutely-indecomposable count."""
    return absolutely_indecomposable_count(g, n).coefficient_list


@lru_cache(maxsize=None)
def indecomposable_count(g: int, n: int) -> CountingPolynomial:
    """Count of indecomposable orbits: the double divisor sum over
    transported absolutely-indecomposable counts."""
    if g < 1 or n < 1:
        raise ValueError("g and n must be >= 1")
    total = PolyQ()
    for d in divisors(n):
        inner = PolyQ()
        for r in divisors(d):
            mu = mobius(d // r)
            if mu == 0:
                continue
            a = absolutely_indecomposable_count(g, n // d).value
            inner = inner + mu * a.adams(r)
        total = total + inner * Fraction(1, d)
    _check_prime_power_positivity("I", g, n, total)
    return CountingPolynomial("I", g, n, total)


def _check_prime_power_positivity(kind: str, g: int, n: int, poly: PolyQ) -> None:
    for q0 in _CHECK_POINTS:
        v = poly.evaluate(q0)
        if v.denominator != 1 or v <= 0:
            raise InternalCheckError(
                f"{kind} at g={g}, n={n} evaluates to {v} at q={q0}; "
                "expected a positive integer"
            )


# -- the two routes to the full orbit counts --------------------------------


def _orbit_series_product_route(g: int, order: int) -> TruncatedXSeries:
    """Product over degrees d of the Adams-transported weight series raised
    to the monic-irreducible count of degree d.

    Factors with d > order start at X**d and cannot affect coefficients up
    to the truncation, so the product stops at d = order.
    """
    acc = TruncatedXSeries.one(order)
    base = weight_series(g, order)
    for d in range(1, order + 1):
        acc = acc * base.adams(d).pow_with_exponent(monic_irreducible_count(d))
    return acc


def _orbit_series_component_route(g: int, order: int) -> TruncatedXSeries:
    """exp of sum over n of I(g, n) * sum over k of X**(nk) / k, i.e. the
    log of the product of (1 - X**n) ** (-I(g, n))."""
    coeffs = [RF_ZERO] * (order + 1)
    for n in range(1, order + 1):
        count = RationalFunctionQ(indecomposable_count(g, n).value)
        k = 1
        while n * k <= order:
            coeffs[n * k] = coeffs[n * k] + count * Fraction(1, k)
            k += 1
    return TruncatedXSeries(coeffs).exp()


@lru_cache(maxsize=None)
def orbit_count_series(g: int, order: int) -> tuple[CountingPolynomial, ...]:
    """Full orbit counts for n = 1..order, computed by both routes and
    cross-asserted coefficientwise before conversion to polynomials."""
    if g < 1 or order < 1:
        raise ValueError("g and order must be >= 1")
    via_product = _orbit_series_product_route(g, order)
    via_components = _orbit_series_component_route(g, order)
    out = []
    for n in range(1, order + 1):
        a = via_product.coefficient(n)
        b = via_components.coefficient(n)
        if a != b:
            raise InternalCheckError(
                f"orbit-count routes disagree at g={g}, X^{n}: {a} vs {b}"
            )
        if not a.is_polynomial:
            raise InternalCheckError(f"non-polynomial orbit count at g={g}, n={n}")
        poly = a.as_poly()
        _check_prime_power_positivity("M", g, n, poly)
        out.append(CountingPolynomial("M", g, n, poly))
    return tuple(out)


def orbit_count(g: int, n: int) -> CountingPolynomial:
    return orbit_count_series(g, n)[n - 1]


def log_weight_value(g: int, n: int) -> CountingPolynomial:
    """The kind-H value: the X**n log coefficient as a rational function."""
    if g < 1 or n < 1:
        raise ValueError("g and n must be >= 1")
    return CountingPolynomial("H", g, n, log_weight_coefficient(g, n))


def counting_value(kind: str, g: int, n: int) -> CountingPolynomial:
    if kind == "A":
        return absolutely_indecomposable_count(g, n)
    if kind == "I":
        return indecomposable_count(g, n)
    if kind == "M":
        return orbit_count(g, n)
    if kind == "H":
        return log_weight_value(g, n)
    raise ValueError(f"unknown kind {kind!r}")


# ---------------------------------------------------------------------------
# identity verifiers


def verify_product_routes(g: int, order: int) -> VerificationReport:
    """Compare the two independent constructions of the orbit-count series
    coefficientwise, reporting rather than raising on mismatch."""
    via_product = _orbit_series_product_route(g, order)
    via_components = _orbit_series_component_route(g, order)
    for n in range(order + 1):
        a = via_product.coefficient(n)
        b = via_components.coefficient(n)
        if a != b:
            return VerificationReport(
                "thm5-routes", g, order, None, False,
                Mismatch(n, None, str(a), str(b)),
            )
    return VerificationReport("thm5-routes", g, order, None, True, None)


def _bi_one(x_order: int, q_order: int) -> list[TruncatedQSeries]:
    rows = [TruncatedQSeries([1], q_order)]
    rows += [TruncatedQSeries([], q_order) for _ in range(x_order)]
    return rows


def _bi_mul_binomial(rows: list[TruncatedQSeries], n: int, c: int) -> list[TruncatedQSeries]:
    """Multiply by (1 - q**c X**n) in the doubly truncated ring."""
    out = list(rows)
    for m in range(len(rows) - 1, n - 1, -1):
        out[m] = rows[m] - rows[m - n].mul_qpower(c)
    return out


def _bi_mul_geometric(rows: list[TruncatedQSeries], n: int, c: int) -> list[TruncatedQSeries]:
    """Multiply by (1 - q**c X**n) ** -1, i.e. by 1 + q^c X^n + q^2c X^2n + ..."""
    out = list(rows)
    for m in range(n, len(rows)):
        out[m] = out[m] + out[m - n].mul_qpower(c)
    return out


def _expand_weight_series(g: int, x_order: int, q_order: int) -> list[TruncatedQSeries]:
    rows = []
    for n, coeff in enumerate(weight_series(g, x_order).coefficients):
        row = coeff.expand(q_order)
        if not row.is_clean:
            raise InternalCheckError(
                f"weight-series coefficient at X^{n} is not a clean q-series"
            )
        rows.append(row)
    return rows


def _compare_rows(
    identity: str,
    g: int,
    x_order: int,
    q_order: int,
    lhs: list[TruncatedQSeries],
    rhs: list[TruncatedQSeries],
) -> VerificationReport:
    for n in range(x_order + 1):
        if lhs[n] == rhs[n]:
            continue
        for k in range(q_order + 1):
            a = lhs[n].coefficient(k)
            b = rhs[n].coefficient(k)
            if a != b:
                return VerificationReport(
                    identity, g, x_order, q_order, False,
                    Mismatch(n, k, str(a), str(b)),
                )
    return VerificationReport(identity, g, x_order, q_order, True, None)


def verify_triple_product(
    g: int,
    x_order: int,
    q_order: int,
    perturb: Optional[tuple[int, int, int]] = None,
) -> VerificationReport:
    """Check that the weight series equals the triple product over
    (n, s, i) of (1 - q**(s+i) X**n) ** a(n, s), where a(n, s) are the
    coefficients of the absolutely-indecomposable counts.

    Both sides are expanded in X up to x_order and q up to q_order; factors
    with s + i > q_order are 1 modulo the q-truncation and are skipped.
    Integer exponents are applied by repeated multiplication so the right
    side stays inside integer q-series arithmetic.  ``perturb = (n, s, d)``
    adds d to the exponent a(n, s) -- a deliberate-corruption hook for
    negative-control testing.
    """
    if x_order < 1 or q_order < 1:
        raise ValueError("truncation orders must be >= 1")
    tables: dict[int, list[int]] = {
        n: list(coefficient_table(g, n)) for n in range(1, x_order + 1)
    }
    if perturb is not None:
        pn, ps, delta = perturb
        if not 1 <= pn <= x_order or ps < 0:
            raise ValueError("perturbation outside the verified window")
        table = tables[pn]
        table.extend([0] * (ps + 1 - len(table)))
        table[ps] += delta

    rhs = _bi_one(x_order, q_order)
    for n in range(1, x_order + 1):
        for s, a in enumerate(tables[n]):
            if a == 0 or s > q_order:
                continue
            for i in range(q_order - s + 1):
                if a > 0:
                    for _ in range(a):
                        rhs = _bi_mul_binomial(rhs, n, s + i)
                else:
                    for _ in range(-a):
                        rhs = _bi_mul_geometric(rhs, n, s + i)

    lhs = _expand_weight_series(g, x_order, q_order)
    return _compare_rows("kwi", g, x_order, q_order, lhs, rhs)


def verify_g1_product(x_order: int, q_order: int) -> VerificationReport:
    """At g = 1 the weight series equals the plain double product of
    (1 - q**i X**n); this builds that product directly, without going
    through the counting polynomials."""
    if x_order < 1 or q_order < 1:
        raise ValueError("truncation orders must be >= 1")
    rhs = _bi_one(x_order, q_order)
    for n in range(1, x_order + 1):
        for i in range(q_order + 1):
            rhs = _bi_mul_binomial(rhs, n, i)
    lhs = _expand_weight_series(1, x_order, q_order)
    return _compare_rows("g1-product", 1, x_order, q_order, lhs, rhs)


def scan_nonnegativity(g: int, n_max: int) -> ScanReport:
    """List every negative coefficient of the absolutely-indecomposable
    counts for n up to n_max.  An empty list means the nonnegativity
    conjecture holds in range; a nonempty one is a finding, not an error."""
    if g < 2:
        raise ValueError("the nonnegativity scan needs g >= 2")
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    negatives = []
    polys = []
    for n in range(1, n_max + 1):
        cp = absolutely_indecomposable_count(g, n)
        polys.append(cp)
        for s, c in enumerate(cp.coefficient_list):
            if c < 0:
                negatives.append((n, s, c))
    return ScanReport(g, n_max, tuple(negatives), tuple(polys))
