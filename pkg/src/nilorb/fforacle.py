"""Brute-force verification over small finite fields.

Everything here is desk-scale and exhaustive by design: enumerate nilpotent
matrices, enumerate the general linear group, count orbits of nilpotent
tuples under simultaneous conjugation both by Burnside averaging and by
explicit orbit construction, compute simultaneous commutants by linear
algebra, and classify orbits through their endomorphism algebras.  Hard
size guards keep every call honest about what can actually be enumerated.

Field elements are integers 0..q-1.  For prime fields the integer is the
residue; for prime-power fields it encodes the coefficient vector of the
polynomial representative in base p (little-endian), with a fixed modulus
per field so results are reproducible.  Matrices are tuples of row tuples.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from .exactnum import InternalCheckError
from .partitions import Partition, inner_product

Matrix = tuple[tuple[int, ...], ...]
MatrixTuple = tuple[Matrix, ...]


class SizeGuardError(ValueError):
    """An enumeration request exceeds the desk-scale guards."""


#: fixed monic irreducible moduli (ascending coefficients, leading 1)
_MODULI: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),      # x^2 + x + 1
    (2, 3): (1, 1, 0, 1),   # x^3 + x + 1
    (3, 2): (1, 0, 1),      # x^2 + 1
}

#: commutant-enumeration ceiling for orbit classification
_ALGEBRA_LIMIT = 2 ** 14


class FieldSpec:
    """A finite field with at most 9 elements, fully tabled arithmetic.

    The multiplication/addition tables are verified against the field
    axioms exhaustively at construction, so a bad modulus cannot produce
    silently wrong counts downstream.
    """

    __slots__ = ("p", "e", "q", "modulus", "_add", "_mul", "_neg", "_inv")

    def __init__(self, p: int, e: int):
        if p < 2 or any(p % d == 0 for d in range(2, p)):
            raise ValueError(f"characteristic {p} is not prime")
        if e < 1:
            raise ValueError("extension degree must be >= 1")
        q = p ** e
        if q > 9:
            raise SizeGuardError(f"fields beyond 9 elements are not supported (q={q})")
        self.p = p
        self.e = e
        self.q = q
        self.modulus: Optional[tuple[int, ...]] = _MODULI.get((p, e)) if e > 1 else None
        if e > 1 and self.modulus is None:
            raise ValueError(f"no modulus on record for GF({p}^{e})")
        self._build_tables()
        self._verify_axioms()

    @classmethod
    def of(cls, q: int) -> "FieldSpec":
        """Field with exactly q elements (q a prime power <= 9)."""
        if q < 2:
            raise ValueError(f"{q} is not a prime power")
        p = next(d for d in range(2, q + 1) if q % d == 0)
        e = 0
        m = q
        while m % p == 0:
            m //= p
            e += 1
        if m != 1:
            raise ValueError(f"{q} is not a prime power")
        return cls(p, e)

    # -- element encoding --------------------------------------------------

    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.e):
            out.append(a % self.p)
            a //= self.p
        return out

    def _undigits(self, digits: Sequence[int]) -> int:
        val = 0
        for d in reversed(digits):
            val = val * self.p + d
        return val

    def _build_tables(self) -> None:
        p, e, q = self.p, self.e, self.q
        add = [[0] * q for _ in range(q)]
        mul = [[0] * q for _ in range(q)]
        for a in range(q):
            da = self._digits(a)
            for b in range(q):
                db = self._digits(b)
                add[a][b] = self._undigits([(x + y) % p for x, y in zip(da, db)])
                prod = [0] * (2 * e - 1)
                for i, x in enumerate(da):
                    if x:
                        for j, y in enumerate(db):
                            prod[i + j] = (prod[i + j] + x * y) % p
                # reduce modulo the field polynomial
                if e > 1:
                    mod = self.modulus
                    for k in range(len(prod) - 1, e - 1, -1):
                        c = prod[k]
                        if c:
                            prod[k] = 0
                            for i in range(e):
                                prod[k - e + i] = (prod[k - e + i] - c * mod[i]) % p
                mul[a][b] = self._undigits(prod[:e])
        self._add = tuple(tuple(r) for r in add)
        self._mul = tuple(tuple(r) for r in mul)
        neg = [0] * q
        inv = [0] * q
        for a in range(q):
            for b in range(q):
                if add[a][b] == 0:
                    neg[a] = b
                if a and mul[a][b] == 1:
                    inv[a] = b
        self._neg = tuple(neg)
        self._inv = tuple(inv)

    def _verify_axioms(self) -> None:
        q = self.q
        rng = range(q)
        for a in rng:
            if self._add[a][0] != a or self._mul[a][1] != a:
                raise InternalCheckError("identity axiom failed")
            if a and self._mul[a][self._inv[a]] != 1:
                raise InternalCheckError(f"no multiplicative inverse for {a}")
        for a in rng:
            for b in rng:
                if self._add[a][b] != self._add[b][a] or self._mul[a][b] != self._mul[b][a]:
                    raise InternalCheckError("commutativity failed")
                for c in rng:
                    if self._add[self._add[a][b]][c] != self._add[a][self._add[b][c]]:
                        raise InternalCheckError("additive associativity failed")
                    if self._mul[self._mul[a][b]][c] != self._mul[a][self._mul[b][c]]:
                        raise InternalCheckError("multiplicative associativity failed")
                    if self._mul[a][self._add[b][c]] != self._add[self._mul[a][b]][self._mul[a][c]]:
                        raise InternalCheckError("distributivity failed")

    # -- scalar arithmetic -----------------------------------------------

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def sub(self, a: int, b: int) -> int:
        return self._add[a][self._neg[b]]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return self._inv[a]

    @property
    def elements(self) -> range:
        return range(self.q)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldSpec)
            and (self.p, self.e, self.modulus) == (other.p, other.e, other.modulus)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.e, self.modulus))

    def __repr__(self) -> str:
        return f"FieldSpec(q={self.q})"


# ---------------------------------------------------------------------------
# matrix arithmetic


def zero_matrix(n: int) -> Matrix:
    return tuple((0,) * n for _ in range(n))


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_add(field: FieldSpec, a: Matrix, b: Matrix) -> Matrix:
    add = field._add
    return tuple(
        tuple(add[x][y] for x, y in zip(ra, rb)) for ra, rb in zip(a, b)
    )


def mat_mul(field: FieldSpec, a: Matrix, b: Matrix) -> Matrix:
    add = field._add
    mul = field._mul
    n = len(a)
    cols = tuple(zip(*b))
    out = []
    for row in a:
        out_row = []
        for col in cols:
            acc = 0
            for x, y in zip(row, col):
                if x and y:
                    acc = add[acc][mul[x][y]]
            out_row.append(acc)
        out.append(tuple(out_row))
    return tuple(out)


def is_nilpotent(field: FieldSpec, m: Matrix) -> bool:
    """True when m**n = 0 with n the matrix order (the Cayley-Hamilton bound)."""
    n = len(m)
    power = m
    for _ in range(n - 1):
        power = mat_mul(field, power, m)
    return power == zero_matrix(n)


def mat_rank(field: FieldSpec, m: Matrix) -> int:
    rows = [list(r) for r in m]
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    rank = 0
    for col in range(n_cols):
        pivot = next((r for r in range(rank, n_rows) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = field.inv(rows[rank][col])
        rows[rank] = [field.mul(inv, x) for x in rows[rank]]
        for r in range(n_rows):
            if r != rank and rows[r][col]:
                factor = rows[r][col]
                rows[r] = [
                    field.sub(x, field.mul(factor, y))
                    for x, y in zip(rows[r], rows[rank])
                ]
        rank += 1
    return rank


def mat_inverse(field: FieldSpec, m: Matrix) -> Matrix:
    n = len(m)
    aug = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(m)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col]), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = field.inv(aug[col][col])
        aug[col] = [field.mul(inv, x) for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [
                    field.sub(x, field.mul(factor, y))
                    for x, y in zip(aug[r], aug[col])
                ]
    return tuple(tuple(row[n:]) for row in aug)


def _nullspace(field: FieldSpec, rows: list[list[int]], n_cols: int) -> list[tuple[int, ...]]:
    """Basis of the solution space of the homogeneous system rows * x = 0."""
    m = [list(r) for r in rows]
    pivots: list[int] = []
    rank = 0
    for col in range(n_cols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = field.inv(m[rank][col])
        m[rank] = [field.mul(inv, x) for x in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][col]:
                factor = m[r][col]
                m[r] = [field.sub(x, field.mul(factor, y)) for x, y in zip(m[r], m[rank])]
        pivots.append(col)
        rank += 1
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        vec = [0] * n_cols
        vec[f] = 1
        for r, pc in enumerate(pivots):
            vec[pc] = field.neg(m[r][f])
        basis.append(tuple(vec))
    return basis


# ---------------------------------------------------------------------------
# exhaustive enumerations


def _guard_matrix_space(field: FieldSpec, n: int) -> None:
    if n < 1:
        raise SizeGuardError("matrix order must be >= 1")
    if not ((n <= 3 and field.q <= 3) or (n <= 2 and field.q <= 9)):
        raise SizeGuardError(
            f"enumerating {field.q}^{n * n} matrices exceeds the desk-scale guard"
        )


def _all_matrices(field: FieldSpec, n: int):
    for entries in itertools.product(field.elements, repeat=n * n):
        yield tuple(entries[i * n : (i + 1) * n] for i in range(n))


@lru_cache(maxsize=None)
def nilpotent_matrices(field: FieldSpec, n: int) -> tuple[Matrix, ...]:
    """All nilpotent n x n matrices, in row-major lexicographic order.

    The count is asserted against the q**(n*n - n) closed form.
    """
    _guard_matrix_space(field, n)
    out = tuple(m for m in _all_matrices(field, n) if is_nilpotent(field, m))
    expected = field.q ** (n * n - n)
    if len(out) != expected:
        raise InternalCheckError(
            f"nilpotent count {len(out)} != {expected} for n={n}, q={field.q}"
        )
    return out


@lru_cache(maxsize=None)
def invertible_matrices(field: FieldSpec, n: int) -> tuple[Matrix, ...]:
    """The full general linear group, count-asserted against the product
    of (q**n - q**i)."""
    _guard_matrix_space(field, n)
    out = tuple(m for m in _all_matrices(field, n) if mat_rank(field, m) == n)
    expected = 1
    for i in range(n):
        expected *= field.q ** n - field.q ** i
    if len(out) != expected:
        raise InternalCheckError(
            f"GL count {len(out)} != {expected} for n={n}, q={field.q}"
        )
    return out


def _guard_orbit_space(field: FieldSpec, n: int, g: int) -> None:
    if g < 1:
        raise SizeGuardError("tuple length g must be >= 1")
    if (n, field.q) not in {(2, 2), (2, 3), (3, 2)} or g > 3:
        raise SizeGuardError(
            f"orbit enumeration at n={n}, q={field.q}, g={g} exceeds the guard"
        )


def burnside_orbit_count(field: FieldSpec, n: int, g: int) -> int:
    """Number of orbits of nilpotent g-tuples under simultaneous conjugation,
    by averaging fixed-point counts over the whole group: each T fixes
    (number of nilpotent matrices commuting with T) ** g tuples."""
    _guard_orbit_space(field, n, g)
    nil = nilpotent_matrices(field, n)
    group = invertible_matrices(field, n)
    total = 0
    for t in group:
        fixed = sum(1 for m in nil if mat_mul(field, t, m) == mat_mul(field, m, t))
        total += fixed ** g
    if total % len(group):
        raise InternalCheckError("Burnside sum is not divisible by the group order")
    return total // len(group)


@dataclass(frozen=True)
class OrbitRecord:
    """One orbit of nilpotent g-tuples: its lexicographically minimal member,
    size, and endomorphism-algebra profile."""

    representative: MatrixTuple
    size: int
    endo_dim: int
    local: bool
    residue_size: Optional[int]

    def __post_init__(self):
        if self.local and self.residue_size is None:
            raise InternalCheckError("local orbit without residue size")
        if not self.local and self.residue_size is not None:
            raise InternalCheckError("residue size on a non-local orbit")


@lru_cache(maxsize=None)
def _conjugation_tables(field: FieldSpec, n: int) -> tuple[tuple[tuple[int, ...], ...], tuple[Matrix, ...]]:
    """For each group element, the permutation it induces on the (sorted)
    nilpotent matrices by conjugation.  Nilpotents are closed under
    conjugation, so these are genuine permutations."""
    nil = nilpotent_matrices(field, n)  # already lex sorted
    index = {m: i for i, m in enumerate(nil)}
    perms = []
    for t in invertible_matrices(field, n):
        ti = mat_inverse(field, t)
        perms.append(
            tuple(index[mat_mul(field, mat_mul(field, ti, m), t)] for m in nil)
        )
    return tuple(perms), nil


def orbits(field: FieldSpec, n: int, g: int) -> list[OrbitRecord]:
    """Partition all nilpotent g-tuples into conjugation orbits.

    Tuples are visited in lexicographic order (row-major entries, field
    elements by table index), so the first unseen member of each orbit is
    its canonical representative; applying every group element confirms it
    is the orbit minimum.
    """
    _guard_orbit_space(field, n, g)
    perms, nil = _conjugation_tables(field, n)
    group_order = len(perms)
    seen: set[tuple[int, ...]] = set()
    records = []
    total_size = 0
    for combo in itertools.product(range(len(nil)), repeat=g):
        if combo in seen:
            continue
        orbit = {tuple(p[i] for i in combo) for p in perms}
        if min(orbit) != combo:
            raise InternalCheckError("canonical representative is not the orbit minimum")
        seen.update(orbit)
        size = len(orbit)
        if group_order % size:
            raise InternalCheckError("orbit size does not divide the group order")
        total_size += size
        rep = tuple(nil[i] for i in combo)
        dim, local, residue = _endomorphism_profile(field, rep)
        records.append(OrbitRecord(rep, size, dim, local, residue))
    if total_size != len(nil) ** g:
        raise InternalCheckError("orbit sizes do not sum to the tuple count")
    return records


# ---------------------------------------------------------------------------
# commutants and orbit classification


def commutant_basis(field: FieldSpec, matrices: MatrixTuple) -> list[Matrix]:
    """Basis of the algebra of matrices commuting with every member of the
    tuple, from the g * n^2 homogeneous equations E M = M E."""
    if not matrices:
        raise ValueError("commutant of an empty tuple is the full algebra; pass matrices")
    n = len(matrices[0])
    rows = []
    for m in matrices:
        for r in range(n):
            for c in range(n):
                row = [0] * (n * n)
                for b in range(n):
                    row[r * n + b] = field.add(row[r * n + b], m[b][c])
                for a in range(n):
                    row[a * n + c] = field.sub(row[a * n + c], m[r][a])
                rows.append(row)
    basis = _nullspace(field, rows, n * n)
    return [tuple(vec[i * n : (i + 1) * n] for i in range(n)) for vec in basis]


def _endomorphism_profile(field: FieldSpec, matrices: MatrixTuple) -> tuple[int, bool, Optional[int]]:
    """Dimension of the endomorphism algebra, whether it is local (non-units
    closed under addition, hence forming the unique maximal ideal), and the
    residue field size when local."""
    basis = commutant_basis(field, matrices)
    k = len(basis)
    if field.q ** k > _ALGEBRA_LIMIT:
        raise SizeGuardError(
            f"endomorphism algebra with {field.q}^{k} elements exceeds the guard"
        )
    n = len(matrices[0])
    elements = []
    for combo in itertools.product(field.elements, repeat=k):
        acc = zero_matrix(n)
        for coeff, bmat in zip(combo, basis):
            if coeff:
                scaled = tuple(
                    tuple(field.mul(coeff, x) for x in row) for row in bmat
                )
                acc = mat_add(field, acc, scaled)
        elements.append(acc)
    nonunits = [m for m in elements if mat_rank(field, m) < n]
    nonunit_set = set(nonunits)
    local = True
    for i, a in enumerate(nonunits):
        for b in nonunits[i:]:
            if mat_add(field, a, b) not in nonunit_set:
                local = False
                break
        if not local:
            break
    if not local:
        return k, False, None
    order = field.q ** k
    if order % len(nonunits):
        raise InternalCheckError("radical size does not divide the algebra order")
    residue = order // len(nonunits)
    s = 0
    m = residue
    while m > 1:
        if m % field.q:
            raise InternalCheckError("residue size is not a power of the field size")
        m //= field.q
        s += 1
    if s < 1:
        raise InternalCheckError("local algebra with trivial residue")
    return k, True, residue


DECOMPOSABLE = "decomposable"
INDECOMPOSABLE = "indecomposable"
ABSOLUTELY_INDECOMPOSABLE = "absolutely indecomposable"


def classify_tuple(field: FieldSpec, matrices: MatrixTuple) -> str:
    """Classify one tuple via its endomorphism algebra: indecomposable iff
    the algebra is local (Fitting), absolutely indecomposable iff the
    residue field is the base field itself.  These criteria are standard
    representation theory rather than anything specific to this package."""
    _, local, residue = _endomorphism_profile(field, matrices)
    if not local:
        return DECOMPOSABLE
    if residue == field.q:
        return ABSOLUTELY_INDECOMPOSABLE
    return INDECOMPOSABLE


def classify_orbit(record: OrbitRecord, field: FieldSpec) -> str:
    """Classification of an orbit from its recorded algebra profile."""
    if not record.local:
        return DECOMPOSABLE
    if record.residue_size == field.q:
        return ABSOLUTELY_INDECOMPOSABLE
    return INDECOMPOSABLE


def indecomposability_counts(field: FieldSpec, n: int, g: int) -> tuple[int, int]:
    """(indecomposable orbit count, absolutely indecomposable orbit count)
    tallied over the explicit orbit list."""
    recs = orbits(field, n, g)
    i_count = sum(1 for r in recs if r.local)
    a_count = sum(1 for r in recs if r.local and r.residue_size == field.q)
    if not a_count <= i_count <= len(recs):
        raise InternalCheckError("classification counts are inconsistent")
    return i_count, a_count


def random_orbit_member(field: FieldSpec, n: int, rep: MatrixTuple, rng: random.Random) -> MatrixTuple:
    """A uniformly random conjugate of the given tuple (testing aid)."""
    group = invertible_matrices(field, n)
    t = rng.choice(group)
    ti = mat_inverse(field, t)
    return tuple(mat_mul(field, mat_mul(field, ti, m), t) for m in rep)


# ---------------------------------------------------------------------------
# block constructions and the commutant counting checks


def companion_matrix(field: FieldSpec, f: Sequence[int]) -> Matrix:
    """Companion matrix of a monic polynomial given by ascending coefficients
    over the field (leading coefficient 1 included)."""
    if len(f) < 2 or f[-1] != 1:
        raise ValueError("companion matrix needs a monic polynomial of degree >= 1")
    d = len(f) - 1
    out = [[0] * d for _ in range(d)]
    for i in range(d - 1):
        out[i][i + 1] = 1
    for j in range(d):
        out[d - 1][j] = field.neg(f[j])
    return tuple(tuple(r) for r in out)


def block_jordan_matrix(field: FieldSpec, f: Sequence[int], m: int) -> Matrix:
    """Jordan-style block of order m over the companion matrix of f:
    companion blocks on the diagonal, identity blocks above it."""
    if m < 1:
        raise ValueError("block multiplicity must be >= 1")
    c = companion_matrix(field, f)
    d = len(c)
    size = m * d
    out = [[0] * size for _ in range(size)]
    for blk in range(m):
        for i in range(d):
            for j in range(d):
                out[blk * d + i][blk * d + j] = c[i][j]
        if blk + 1 < m:
            for i in range(d):
                out[blk * d + i][(blk + 1) * d + i] = 1
    return tuple(tuple(r) for r in out)


def jordan_type_matrix(field: FieldSpec, f: Sequence[int], lam: Partition) -> Matrix:
    """Direct sum of block_jordan_matrix(f, part) over the parts of lam."""
    blocks = [block_jordan_matrix(field, f, part) for part in lam.parts]
    size = sum(len(b) for b in blocks)
    out = [[0] * size for _ in range(size)]
    pos = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[pos + i][pos + j] = x
        pos += len(b)
    return tuple(tuple(r) for r in out)


def poly_divmod(field: FieldSpec, a: Sequence[int], b: Sequence[int]):
    """Polynomial division over the field, coefficients ascending."""
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    b = list(b)
    while b and b[-1] == 0:
        b.pop()
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [0] * max(len(a) - len(b) + 1, 0)
    lead_inv = field.inv(b[-1])
    while len(a) >= len(b):
        factor = field.mul(a[-1], lead_inv)
        shift = len(a) - len(b)
        quot[shift] = factor
        for i, y in enumerate(b):
            a[shift + i] = field.sub(a[shift + i], field.mul(factor, y))
        while a and a[-1] == 0:
            a.pop()
    return quot, a


def is_irreducible(field: FieldSpec, f: Sequence[int]) -> bool:
    """Trial-division irreducibility for a monic polynomial over the field."""
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    for e in range(1, d // 2 + 1):
        for tail in itertools.product(field.elements, repeat=e):
            divisor = list(tail) + [1]
            _, rem = poly_divmod(field, f, divisor)
            if not rem:
                return False
    return True


def monic_irreducibles(field: FieldSpec, d: int, exclude_x: bool = True) -> list[tuple[int, ...]]:
    """Enumerate monic irreducible polynomials of degree d (ascending
    coefficients), excluding the monomial x by default."""
    out = []
    for tail in itertools.product(field.elements, repeat=d):
        f = tuple(tail) + (1,)
        if exclude_x and d == 1 and f[0] == 0:
            continue
        if is_irreducible(field, f):
            out.append(f)
    return out


def nilpotent_commutant_count(field: FieldSpec, f: Sequence[int], lam: Partition) -> int:
    """Count nilpotent matrices commuting with the Jordan-type block built
    from the monic irreducible f and the partition lam, by enumerating the
    commutant algebra.  The count is asserted against the closed form
    q ** (deg(f) * (<lam,lam> - length))."""
    f = tuple(f)
    d = len(f) - 1
    if d < 1 or f[-1] != 1:
        raise ValueError("f must be monic of degree >= 1")
    if any(not 0 <= c < field.q for c in f):
        raise ValueError("f has coefficients outside the field")
    if d > 1 and not is_irreducible(field, f):
        raise ValueError("f must be irreducible")
    v = d * lam.weight
    if field.q > 3 or v > 4:
        raise SizeGuardError(
            f"commutant enumeration at order {v} over q={field.q} exceeds the guard"
        )
    j = jordan_type_matrix(field, f, lam)
    basis = commutant_basis(field, (j,))
    count = 0
    for combo in itertools.product(field.elements, repeat=len(basis)):
        acc = zero_matrix(v)
        for coeff, bmat in zip(combo, basis):
            if coeff:
                scaled = tuple(tuple(field.mul(coeff, x) for x in row) for row in bmat)
                acc = mat_add(field, acc, scaled)
        if is_nilpotent(field, acc):
            count += 1
    expected = field.q ** (d * (inner_product(lam, lam) - lam.length))
    if count != expected:
        raise InternalCheckError(
            f"nilpotent commutant count {count} != {expected} "
            f"for lam={lam.parts}, f={f}, q={field.q}"
        )
    return count
