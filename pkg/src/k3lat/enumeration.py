"""Finite enumeration: fixed-norm vectors, isometric embeddings, isometry search.

The short-vector kernel uses an exact rational Cholesky decomposition with
integer interval truncation, so it is deterministic and never touches
floating point.  A naive box scan is kept in the test suite as its oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_form

from .forms import BinaryForm, reduce_form
from .lattice import Lattice, Vector


class EnumerationError(ValueError):
    """A precondition of an enumeration routine was violated."""


def _interval(center: Fraction, radius_sq: Fraction) -> range:
    """Integers x with (x + center)^2 <= radius_sq, as a range."""
    if radius_sq < 0:
        return range(0)
    p, q = center.numerator, center.denominator
    # (xq + p)^2 <= radius_sq * q^2, and the right side may be floored since
    # the left side is an integer
    s, t = radius_sq.numerator, radius_sq.denominator
    m = math.isqrt(s * q * q // t)
    lo = math.ceil(Fraction(-m - p, q))
    hi = math.floor(Fraction(m - p, q))
    return range(lo, hi + 1)


def _cholesky(gram) -> tuple[list[Fraction], list[list[Fraction]]]:
    """Q(x) = sum_i d[i] (x_i + sum_{j>i} u[i][j] x_j)^2 for positive definite gram."""
    n = len(gram)
    a = [[Fraction(gram[i][j]) for j in range(n)] for i in range(n)]
    d = [Fraction(0)] * n
    u = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        if a[i][i] <= 0:
            raise EnumerationError("Gram matrix is not positive definite")
        d[i] = a[i][i]
        for j in range(i + 1, n):
            u[i][j] = a[i][j] / a[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                a[k][l] -= a[i][k] * a[i][l] / a[i][i]
                a[l][k] = a[k][l]
    return d, u


def short_vectors_le(gram, bound) -> list[Vector]:
    """All integer vectors x with x^T gram x <= bound, lexicographically sorted.

    gram may have Fraction entries (used for trace forms of number fields);
    the zero vector is included.
    """
    n = len(gram)
    bound = Fraction(bound)
    if bound < 0:
        return []
    d, u = _cholesky(gram)
    out: list[Vector] = []
    x = [0] * n

    def descend(i: int, remaining: Fraction) -> None:
        center = sum((u[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        for xi in _interval(center, remaining / d[i]):
            x[i] = xi
            if i == 0:
                out.append(tuple(x))
            else:
                descend(i - 1, remaining - d[i] * (xi + center) ** 2)

    descend(n - 1, bound)
    out.sort()
    return out


def vectors_of_norm(lat: Lattice, n: int) -> list[Vector]:
    """Complete sorted list of v with (v.v) = n in a positive definite lattice."""
    n = int(n)
    if n < 0:
        raise EnumerationError("norm must be nonnegative")
    if not lat.is_positive_definite():
        raise EnumerationError("lattice must be positive definite")
    return [v for v in short_vectors_le(lat.gram, n) if lat.norm(v) == n]


@dataclass(frozen=True)
class EmbeddingMatrix:
    """Integer matrix realizing an isometric embedding source -> target.

    columns[i] holds the target coordinates of the i-th source basis vector;
    Gram compatibility is verified exactly on construction.
    """

    source: Lattice
    target: Lattice
    columns: tuple[Vector, ...]

    def __post_init__(self) -> None:
        cols = tuple(self.target.check_vector(c) for c in self.columns)
        if len(cols) != self.source.rank:
            raise EnumerationError("column count must equal source rank")
        for i in range(len(cols)):
            for j in range(i, len(cols)):
                if self.target.inner(cols[i], cols[j]) != self.source.gram[i][j]:
                    raise EnumerationError(
                        f"columns are not Gram compatible at ({i}, {j})")
        object.__setattr__(self, "columns", cols)

    def apply(self, v) -> Vector:
        v = self.source.check_vector(v)
        m = self.target.rank
        return tuple(sum(self.columns[i][r] * v[i] for i in range(len(v)))
                     for r in range(m))

    def as_rows(self) -> tuple[tuple[int, ...], ...]:
        m = self.target.rank
        return tuple(tuple(c[r] for c in self.columns) for r in range(m))


def identity_embedding(lat: Lattice) -> EmbeddingMatrix:
    n = lat.rank
    cols = [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]
    return EmbeddingMatrix(lat, lat, tuple(cols))


def _is_saturated(target_rank: int, columns: tuple[Vector, ...]) -> bool:
    """Whether the column span is a primitive (saturated) sublattice."""
    m = Matrix([[c[r] for c in columns] for r in range(target_rank)])
    d = smith_normal_form(m)
    k = len(columns)
    return all(abs(int(d[i, i])) == 1 for i in range(k))


def embeddings(source: Lattice, target: Lattice,
               primitive_only: bool = False) -> list[EmbeddingMatrix]:
    """All isometric embeddings of one positive definite lattice into another.

    Backtracks over the fixed-norm vector lists column by column, pruning on
    pairwise inner products.  With primitive_only the image is additionally
    required to be a saturated sublattice.
    """
    if not source.is_positive_definite() or not target.is_positive_definite():
        raise EnumerationError("both lattices must be positive definite")
    if source.rank > target.rank:
        return []
    norm_candidates = {}
    for i in range(source.rank):
        nrm = source.gram[i][i]
        if nrm not in norm_candidates:
            norm_candidates[nrm] = vectors_of_norm(target, nrm)
    found: list[EmbeddingMatrix] = []
    chosen: list[Vector] = []

    def backtrack(i: int) -> None:
        if i == source.rank:
            cols = tuple(chosen)
            if primitive_only and not _is_saturated(target.rank, cols):
                return
            found.append(EmbeddingMatrix(source, target, cols))
            return
        for v in norm_candidates[source.gram[i][i]]:
            if all(target.inner(chosen[j], v) == source.gram[j][i]
                   for j in range(i)):
                chosen.append(v)
                backtrack(i + 1)
                chosen.pop()

    backtrack(0)
    return found


def is_isometric_definite(l1: Lattice, l2: Lattice):
    """An isometry between definite lattices of equal rank, or None.

    The embedding search is complete, so None certifies non-isometry.
    """
    if l1.rank != l2.rank:
        raise EnumerationError("lattices must have equal rank")
    s1, s2 = l1.signature(), l2.signature()
    if s1 != s2 or 0 not in s1:
        raise EnumerationError("lattices must be definite of the same sign")
    if l1.determinant() != l2.determinant():
        return None
    if l1 == l2:
        return identity_embedding(l1)
    a, b = (l1, l2) if s1[1] == 0 else (l1.twist(-1), l2.twist(-1))
    # a full-rank Gram-compatible map between equal-determinant lattices is
    # automatically unimodular, hence an isometry
    for emb in embeddings(a, b):
        return EmbeddingMatrix(l1, l2, emb.columns)
    return None


@dataclass(frozen=True)
class IsometrySearchResult:
    """Outcome of a bounded indefinite isometry search.

    conclusive is True when either a witness was found or the invariants
    already rule an isometry out; a bound-limited miss is inconclusive.
    """

    witness: EmbeddingMatrix | None
    conclusive: bool

    @property
    def found(self) -> bool:
        return self.witness is not None


def _bounded_norm_vectors(lat: Lattice, norm: int, bound: int) -> list[Vector]:
    """Vectors v with (v.v) = norm and |v_i| <= bound, any signature.

    Scans all but the last coordinate and solves the remaining quadratic
    exactly, so indefinite Gram matrices are fine.
    """
    n = lat.rank
    g = lat.gram
    out = []

    def rec(prefix: list[int]) -> None:
        i = len(prefix)
        if i == n - 1:
            # g[n-1][n-1] t^2 + 2 s t + (q - norm) = 0 over the integers
            a = g[n - 1][n - 1]
            s = sum(g[n - 1][j] * prefix[j] for j in range(n - 1))
            q = sum(prefix[j] * g[j][k] * prefix[k]
                    for j in range(n - 1) for k in range(n - 1))
            c = q - norm
            if a == 0:
                if s == 0:
                    if c == 0:
                        for t in range(-bound, bound + 1):
                            out.append(tuple(prefix) + (t,))
                elif (-c) % (2 * s) == 0:
                    t = (-c) // (2 * s)
                    if abs(t) <= bound:
                        out.append(tuple(prefix) + (t,))
                return
            disc = s * s - a * c
            if disc < 0:
                return
            r = math.isqrt(disc)
            if r * r != disc:
                return
            for num in sorted({-s + r, -s - r}):
                if num % a == 0:
                    t = num // a
                    if abs(t) <= bound:
                        out.append(tuple(prefix) + (t,))
            return
        for x in range(-bound, bound + 1):
            prefix.append(x)
            rec(prefix)
            prefix.pop()

    if n == 1:
        a = g[0][0]
        for t in range(-bound, bound + 1):
            if a * t * t == norm:
                out.append((t,))
    else:
        rec([])
    out.sort()
    return out


def _box_witness(l1: Lattice, l2: Lattice, height_bound: int):
    """First matrix with entries in the box conjugating l2's Gram to l1's."""
    cache: dict[int, list[Vector]] = {}
    for i in range(l1.rank):
        nrm = l1.gram[i][i]
        if nrm not in cache:
            cache[nrm] = _bounded_norm_vectors(l2, nrm, height_bound)
    chosen: list[Vector] = []

    def backtrack(i: int):
        if i == l1.rank:
            return EmbeddingMatrix(l1, l2, tuple(chosen))
        for v in cache[l1.gram[i][i]]:
            if all(l2.inner(chosen[j], v) == l1.gram[j][i] for j in range(i)):
                chosen.append(v)
                # equal determinants force any full Gram-compatible matrix to
                # be unimodular, so the first hit is already an isometry
                hit = backtrack(i + 1)
                if hit is not None:
                    return hit
                chosen.pop()
        return None

    return backtrack(0)


def _split_witness(l1: Lattice, l2: Lattice, height_bound: int):
    """Witness for block sources (definite rank 2) + (k): pick a norm-k vector
    u in l2 whose complement splits off integrally, then solve the remaining
    definite rank-2 problem exactly."""
    if l1.rank != 3:
        return None
    g = l1.gram
    if g[0][2] or g[1][2]:
        return None
    c1 = Lattice([[g[0][0], g[0][1]], [g[0][1], g[1][1]]])
    if 0 not in c1.signature():
        return None
    k = g[2][2]
    for u in _bounded_norm_vectors(l2, k, height_bound):
        if not l2.is_primitive(u):
            continue
        comp, basis = l2.orthogonal_complement(u)
        if comp.determinant() * k != l2.determinant():
            continue  # u^perp + Zu sits in l2 with index > 1
        if comp.signature() != c1.signature():
            continue
        w = is_isometric_definite(c1, comp)
        if w is None:
            continue
        cols = []
        for i in range(2):
            cols.append(tuple(
                sum(basis[r][t] * w.columns[i][r] for r in range(2))
                for t in range(3)))
        cols.append(u)
        return EmbeddingMatrix(l1, l2, tuple(cols))
    return None


def _invert_witness(w: EmbeddingMatrix) -> EmbeddingMatrix:
    inv = Matrix(w.as_rows()).inv()
    n = w.source.rank
    cols = tuple(tuple(int(inv[i, j]) for i in range(n)) for j in range(n))
    return EmbeddingMatrix(w.target, w.source, cols)


def indefinite_isometry_search(l1: Lattice, l2: Lattice,
                               height_bound: int) -> IsometrySearchResult:
    """Best-effort search for an isometry l1 -> l2 bounded by height_bound.

    Tries, in order: matrices with entries in the box, the split strategy
    for block sources, and both again with the roles of l1 and l2 swapped
    (inverting any witness found).  Invariant mismatches (rank, signature,
    determinant) are conclusive non-isometry; a fruitless bounded search is
    not, and is reported as inconclusive.
    """
    if height_bound < 1:
        raise EnumerationError("height bound must be positive")
    if (l1.rank != l2.rank or l1.signature() != l2.signature()
            or l1.determinant() != l2.determinant()):
        return IsometrySearchResult(None, True)
    if l1 == l2:
        return IsometrySearchResult(identity_embedding(l1), True)
    witness = _box_witness(l1, l2, height_bound)
    if witness is None:
        witness = _split_witness(l1, l2, height_bound)
    if witness is None:
        rev = _box_witness(l2, l1, height_bound) or _split_witness(l2, l1, height_bound)
        if rev is not None:
            witness = _invert_witness(rev)
    return IsometrySearchResult(witness, witness is not None)


@dataclass(frozen=True)
class OrbitInvariant:
    """Orbit record of a positive-norm primitive vector: its square, the
    ambient discriminant group, and the discriminant group and reduced form
    class of the definite complement (a single entry when rank 1).

    The unoriented record (middle coefficient up to sign) is constant on full
    orthogonal-group orbits, so differing unoriented records certify distinct
    orbits.  The signed class refines this: it also separates a mirror pair
    of complement classes, but an orientation-reversing ambient isometry can
    exchange exactly that pair.
    """

    norm: int
    ambient_disc: tuple[int, ...]
    complement_disc: tuple[int, ...]
    complement_class: tuple[int, ...]

    def unoriented(self) -> "OrbitInvariant":
        cls = self.complement_class
        if len(cls) == 3:
            cls = (cls[0], abs(cls[1]), cls[2])
        return OrbitInvariant(self.norm, self.ambient_disc,
                              self.complement_disc, cls)


def orbit_invariant(lat: Lattice, v) -> OrbitInvariant:
    """Invariant record for the orbit of v in a signature (1, m) lattice, m <= 2."""
    sig = lat.signature()
    if lat.rank < 2 or lat.rank > 3 or sig != (1, lat.rank - 1):
        raise EnumerationError("lattice must have signature (1, m) with 1 <= m <= 2")
    v = lat.check_vector(v)
    nrm = lat.norm(v)
    if nrm <= 0:
        raise EnumerationError("vector must have positive norm")
    if not lat.is_primitive(v):
        raise EnumerationError("vector must be primitive")
    comp, _ = lat.orthogonal_complement(v)
    if not comp.is_negative_definite():
        raise EnumerationError("complement is not negative definite")
    if comp.rank == 1:
        cls: tuple[int, ...] = (-comp.gram[0][0],)
    else:
        pos = comp.twist(-1)
        f = BinaryForm(pos.gram[0][0], 2 * pos.gram[0][1], pos.gram[1][1])
        cls = reduce_form(f, with_transform=False)[0].as_tuple()
    return OrbitInvariant(nrm, lat.discriminant_group(),
                          comp.discriminant_group(), cls)
