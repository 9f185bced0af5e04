"""Exact arithmetic on integral lattices presented by Gram matrices.

Everything here works over Z, or over Q internally, with no floating point,
so results are exact for arbitrarily large entries.  Lattices are immutable
values and all operations are pure functions, safe for concurrent use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_form

Vector = tuple[int, ...]


class LatticeError(ValueError):
    """A precondition on a lattice or vector was violated."""


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with g = gcd(a, b) = s*a + t*b and g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _sign_changes(coeffs: list[int]) -> int:
    signs = [c for c in coeffs if c != 0]
    return sum(1 for x, y in zip(signs, signs[1:]) if (x > 0) != (y > 0))


def hnf_columns(cols: list[Vector]) -> list[Vector]:
    """Canonical basis of the column lattice spanned by ``cols``.

    Column-style Hermite normal form with positive pivots; requires the
    columns to be linearly independent.  Output is deterministic, which is
    what downstream canonical forms rely on.
    """
    k = len(cols)
    if k == 0:
        return []
    m = len(cols[0])
    a = [[int(c[i]) for c in cols] for i in range(m)]  # m x k
    piv = 0
    pivots = []
    for i in range(m):
        if piv == k:
            break
        js = [j for j in range(piv, k) if a[i][j] != 0]
        if not js:
            continue
        # sweep the pivot row to a single positive entry in column ``piv``
        if js[0] != piv:
            for r in range(m):
                a[r][piv], a[r][js[0]] = a[r][js[0]], a[r][piv]
        for j in range(piv + 1, k):
            if a[i][j] == 0:
                continue
            g, s, t = xgcd(a[i][piv], a[i][j])
            p, q = -(a[i][j] // g), a[i][piv] // g
            for r in range(m):
                x, y = a[r][piv], a[r][j]
                a[r][piv] = s * x + t * y
                a[r][j] = p * x + q * y
        if a[i][piv] < 0:
            for r in range(m):
                a[r][piv] = -a[r][piv]
        g = a[i][piv]
        for j in range(piv):
            q = a[i][j] // g
            if q:
                for r in range(m):
                    a[r][j] -= q * a[r][piv]
        pivots.append(i)
        piv += 1
    if piv != k:
        raise LatticeError("columns are not linearly independent")
    return [tuple(a[r][j] for r in range(m)) for j in range(k)]


def _kernel_of_functional(w: list[int]) -> list[Vector]:
    """Basis of the saturated sublattice {x in Z^n : w.x = 0}."""
    n = len(w)
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    vals = list(w)
    for j in range(1, n):
        if vals[j] == 0:
            continue
        g, s, t = xgcd(vals[0], vals[j])
        p, q = -(vals[j] // g), vals[0] // g
        for i in range(n):
            c0, cj = u[i][0], u[i][j]
            u[i][0] = s * c0 + t * cj
            u[i][j] = p * c0 + q * cj
        vals[0], vals[j] = g, 0
    if vals[0] == 0:
        raise LatticeError("functional is zero")
    return [tuple(u[i][j] for i in range(n)) for j in range(1, n)]


@dataclass(frozen=True)
class Lattice:
    """Free Z-module of finite rank with pairing (v.w) = v^T gram w."""

    gram: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        gram = tuple(tuple(int(x) for x in row) for row in self.gram)
        n = len(gram)
        if n == 0:
            raise LatticeError("rank must be at least 1")
        if any(len(row) != n for row in gram):
            raise LatticeError("Gram matrix must be square")
        if any(gram[i][j] != gram[j][i] for i in range(n) for j in range(i)):
            raise LatticeError("Gram matrix must be symmetric")
        object.__setattr__(self, "gram", gram)

    @property
    def rank(self) -> int:
        return len(self.gram)

    def __repr__(self) -> str:
        rows = ";".join(",".join(str(x) for x in row) for row in self.gram)
        return f"Lattice({rows})"

    def check_vector(self, v) -> Vector:
        v = tuple(int(x) for x in v)
        if len(v) != self.rank:
            raise LatticeError(f"vector length {len(v)} does not match rank {self.rank}")
        return v

    def inner(self, v, w) -> int:
        """Bilinear pairing (v.w)."""
        v = self.check_vector(v)
        w = self.check_vector(w)
        return sum(v[i] * sum(self.gram[i][j] * w[j] for j in range(self.rank))
                   for i in range(self.rank))

    def norm(self, v) -> int:
        """Square (v.v) of a vector."""
        return self.inner(v, v)

    def determinant(self) -> int:
        return int(Matrix(self.gram).det())

    def signature(self) -> tuple[int, int]:
        """Counts of positive and negative eigenvalues, computed exactly.

        Descartes' rule of signs applied to the characteristic polynomial is
        exact here because a symmetric matrix has only real eigenvalues.
        """
        coeffs = [int(c) for c in Matrix(self.gram).charpoly().all_coeffs()]
        if coeffs[-1] == 0:
            raise LatticeError("degenerate Gram matrix")
        deg = len(coeffs) - 1
        pos = _sign_changes(coeffs)
        neg = _sign_changes([c if (deg - i) % 2 == 0 else -c
                             for i, c in enumerate(coeffs)])
        return pos, neg

    def is_positive_definite(self) -> bool:
        return self.signature() == (self.rank, 0)

    def is_negative_definite(self) -> bool:
        return self.signature() == (0, self.rank)

    def discriminant_group(self) -> tuple[int, ...]:
        """Invariant factors (> 1) of Z^n / gram.Z^n, in divisibility order.

        Their product equals |det|; an empty tuple means the lattice is
        unimodular.
        """
        if self.determinant() == 0:
            raise LatticeError("degenerate Gram matrix")
        d = smith_normal_form(Matrix(self.gram))
        factors = sorted(abs(int(d[i, i])) for i in range(self.rank))
        return tuple(f for f in factors if f > 1)

    def direct_sum(self, other: "Lattice") -> "Lattice":
        n, m = self.rank, other.rank
        gram = [[0] * (n + m) for _ in range(n + m)]
        for i in range(n):
            for j in range(n):
                gram[i][j] = self.gram[i][j]
        for i in range(m):
            for j in range(m):
                gram[n + i][n + j] = other.gram[i][j]
        return Lattice(gram)

    def twist(self, a: int) -> "Lattice":
        """Same module with the form scaled by a; written L(a)."""
        a = int(a)
        if a == 0:
            raise LatticeError("twist by zero is degenerate")
        return Lattice([[a * x for x in row] for row in self.gram])

    def is_primitive(self, v) -> bool:
        """True iff v generates a saturated rank-1 sublattice (gcd of coords 1)."""
        v = self.check_vector(v)
        if all(x == 0 for x in v):
            raise LatticeError("zero vector has no primitivity")
        return math.gcd(*v) == 1

    def orthogonal_complement(self, v) -> tuple["Lattice", tuple[Vector, ...]]:
        """Saturated sublattice {x : (x.v) = 0} and its defining basis.

        The basis columns are primitive vectors of self, normalized via the
        Hermite normal form so output is deterministic; the returned lattice
        carries the induced Gram matrix.
        """
        v = self.check_vector(v)
        if all(x == 0 for x in v):
            raise LatticeError("v must be nonzero")
        if self.rank == 1:
            raise LatticeError("complement in a rank-1 lattice is trivial")
        if self.determinant() == 0:
            raise LatticeError("degenerate Gram matrix")
        w = [sum(self.gram[i][j] * v[j] for j in range(self.rank))
             for i in range(self.rank)]
        basis = hnf_columns(_kernel_of_functional(w))
        gram = [[self.inner(b1, b2) for b2 in basis] for b1 in basis]
        return Lattice(gram), tuple(basis)

    def change_basis(self, u: list[list[int]]) -> "Lattice":
        """Gram matrix in the new basis given by the columns of u (u unimodular)."""
        n = self.rank
        cols = [tuple(u[i][j] for i in range(n)) for j in range(n)]
        gram = [[self.inner(ci, cj) for cj in cols] for ci in cols]
        return Lattice(gram)
