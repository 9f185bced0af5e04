"""Binary quadratic forms: reduction, equivalence, composition, class groups.

Forms are triples (a, b, c) standing for aX^2 + bXY + cY^2.  The class-group
machinery is restricted to positive definite forms (negative discriminant),
which is all the downstream lattice constructions need.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from sympy import isprime, kronecker_symbol

from .lattice import Lattice, xgcd

Transform = tuple[tuple[int, int], tuple[int, int]]

IDENTITY_2X2: Transform = ((1, 0), (0, 1))


class FormError(ValueError):
    """A precondition on a binary quadratic form was violated."""


@dataclass(frozen=True)
class BinaryForm:
    a: int
    b: int
    c: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", int(self.a))
        object.__setattr__(self, "b", int(self.b))
        object.__setattr__(self, "c", int(self.c))

    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def is_positive_definite(self) -> bool:
        return self.discriminant() < 0 and self.a > 0

    def is_primitive(self) -> bool:
        return math.gcd(self.a, math.gcd(self.b, self.c)) == 1

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not self.is_positive_definite():
            return False
        if not (abs(b) <= a <= c):
            return False
        if b < 0 and (abs(b) == a or a == c):
            return False
        return True

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def __repr__(self) -> str:
        return f"BinaryForm({self.a}, {self.b}, {self.c})"


def matmul2(u: Transform, v: Transform) -> Transform:
    return (
        (u[0][0] * v[0][0] + u[0][1] * v[1][0], u[0][0] * v[0][1] + u[0][1] * v[1][1]),
        (u[1][0] * v[0][0] + u[1][1] * v[1][0], u[1][0] * v[0][1] + u[1][1] * v[1][1]),
    )


def det2(u: Transform) -> int:
    return u[0][0] * u[1][1] - u[0][1] * u[1][0]


def inv2(u: Transform) -> Transform:
    """Inverse of a determinant +/-1 integer matrix."""
    d = det2(u)
    if d not in (1, -1):
        raise FormError("transform is not unimodular")
    return ((d * u[1][1], -d * u[0][1]), (-d * u[1][0], d * u[0][0]))


def apply_transform(f: BinaryForm, u: Transform) -> BinaryForm:
    """Form g with g(x, y) = f((x, y) mapped through the columns of u)."""
    (p, q), (r, s) = u
    a = f(p, r)
    c = f(q, s)
    b = 2 * f.a * p * q + f.b * (p * s + q * r) + 2 * f.c * r * s
    return BinaryForm(a, b, c)


def reduce_form(f: BinaryForm, with_transform: bool = True):
    """Unique reduced representative of a positive definite form.

    Returns (reduced, transform) where transform has determinant 1 and
    apply_transform(f, transform) == reduced.  Reduced means |b| <= a <= c
    with b >= 0 on the boundary cases |b| = a or a = c.
    """
    if not f.is_positive_definite():
        raise FormError(f"form {f.as_tuple()} is not positive definite")
    a, b, c = f.a, f.b, f.c
    u = IDENTITY_2X2
    while True:
        # translate b into (-a, a]
        m = (a - b) // (2 * a)
        if m:
            c = a * m * m + b * m + c
            b = b + 2 * a * m
            if with_transform:
                u = matmul2(u, ((1, m), (0, 1)))
        if a > c:
            a, b, c = c, -b, a
            if with_transform:
                u = matmul2(u, ((0, -1), (1, 0)))
            continue
        break
    if b < 0 and a == c:
        a, b, c = c, -b, a
        if with_transform:
            u = matmul2(u, ((0, -1), (1, 0)))
    g = BinaryForm(a, b, c)
    if with_transform:
        return g, u
    return g, None


def is_equivalent(f: BinaryForm, g: BinaryForm):
    """A determinant-1 transform carrying f to g, or None.

    Two positive definite forms are SL2(Z)-equivalent exactly when they share
    a reduced representative.
    """
    if not f.is_positive_definite() or not g.is_positive_definite():
        raise FormError("equivalence test requires positive definite forms")
    if f.discriminant() != g.discriminant():
        return None
    rf, uf = reduce_form(f)
    rg, ug = reduce_form(g)
    if rf != rg:
        return None
    v = matmul2(uf, inv2(ug))
    assert apply_transform(f, v) == g
    return v


@dataclass(frozen=True)
class FormClassGroup:
    """All reduced primitive positive definite forms of one discriminant."""

    discriminant: int
    elements: tuple[BinaryForm, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def principal(self) -> BinaryForm:
        d = self.discriminant
        b0 = d % 2
        return BinaryForm(1, b0, (b0 * b0 - d) // 4)


def class_group(d: int) -> FormClassGroup:
    """Class group Cl(d) by the reduced-form scan |b| <= a <= sqrt(|d|/3)."""
    d = int(d)
    if d >= 0:
        raise FormError("discriminant must be negative")
    if d % 4 not in (0, 1):
        raise FormError("discriminant must be 0 or 1 mod 4")
    forms = []
    b = d % 2
    while 3 * b * b <= -d:
        m = (b * b - d) // 4
        a = max(b, 1)
        while a * a <= m:
            if m % a == 0:
                c = m // a
                if math.gcd(a, math.gcd(b, c)) == 1:
                    forms.append(BinaryForm(a, b, c))
                    if 0 < b < a < c:
                        forms.append(BinaryForm(a, -b, c))
            a += 1
        b += 2
    forms.sort(key=BinaryForm.as_tuple)
    return FormClassGroup(d, tuple(forms))


def _coprime_representative(g: BinaryForm, n: int) -> BinaryForm:
    """Equivalent form whose leading coefficient is coprime to n.

    A primitive form represents values coprime to any modulus, so a small
    spiral search over primitive (x, y) terminates.
    """
    if math.gcd(g.a, n) == 1:
        return g
    r = 1
    while True:
        for x in range(-r, r + 1):
            for y in range(-r, r + 1):
                if max(abs(x), abs(y)) != r or math.gcd(x, y) != 1:
                    continue
                if math.gcd(g(x, y), n) == 1:
                    _, s, t = xgcd(x, y)
                    u = ((x, -t), (y, s))
                    assert det2(u) == 1
                    return apply_transform(g, u)
        r += 1


def compose(f: BinaryForm, g: BinaryForm) -> BinaryForm:
    """Reduced Dirichlet composition of two primitive forms of equal discriminant.

    Replaces g by an equivalent form whose leading coefficient is coprime to
    f.a, so the classical united-forms formula applies directly.
    """
    d = f.discriminant()
    if d != g.discriminant():
        raise FormError("forms must share a discriminant")
    if d >= 0 or f.a <= 0 or g.a <= 0:
        raise FormError("composition requires positive definite forms")
    if not f.is_primitive() or not g.is_primitive():
        raise FormError("composition requires primitive forms")
    g = _coprime_representative(g, f.a)
    a1, b1 = f.a, f.b
    a2, b2 = g.a, g.b
    # CRT: B = b1 (mod 2 a1), B = b2 (mod 2 a2) with gcd(a1, a2) = 1
    t = ((b2 - b1) // 2 * pow(a1, -1, a2)) % a2
    bb = b1 + 2 * a1 * t
    aa = a1 * a2
    cc = (bb * bb - d) // (4 * aa)
    assert (bb * bb - d) % (4 * aa) == 0
    return reduce_form(BinaryForm(aa, bb, cc), with_transform=False)[0]


def verify_principal_genus(p: int) -> bool:
    """Whether squaring is onto in Cl(-p), for a prime p = 3 mod 4."""
    p = int(p)
    if not isprime(p) or p % 4 != 3:
        raise FormError("p must be a prime congruent to 3 mod 4")
    cl = class_group(-p)
    squares = {compose(x, x) for x in cl.elements}
    return squares == set(cl.elements)


def form_to_lattice(f: BinaryForm) -> Lattice:
    """Rank-2 lattice with Gram matrix ((2a, b), (b, 2c)); det = -disc."""
    return Lattice([[2 * f.a, f.b], [f.b, 2 * f.c]])


def lattice_to_form(lat: Lattice) -> BinaryForm:
    """Binary form of a rank-2 Gram matrix, using the doubled convention.

    For Gram ((g11, g12), (g12, g22)) this is (g11, 2*g12, g22), the integral
    quadratic form the Gram matrix evaluates.
    """
    if lat.rank != 2:
        raise FormError("lattice must have rank 2")
    return BinaryForm(lat.gram[0][0], 2 * lat.gram[0][1], lat.gram[1][1])


def is_fundamental_discriminant(d: int) -> bool:
    d = int(d)
    if d >= 0 or d % 4 not in (0, 1):
        return False
    if d % 4 == 1:
        return _squarefree(-d)
    m = d // 4
    return m % 4 in (2, 3) and _squarefree(-m)


def _squarefree(n: int) -> bool:
    from sympy import factorint

    return all(e == 1 for e in factorint(n).values())


def dirichlet_class_number(d: int, terms: int = 100_000) -> int:
    """Analytic class number of a fundamental discriminant d < 0, rounded.

    Evaluates h = w sqrt(|d|) L(1, chi_d) / (2 pi) with the L-series truncated
    after ``terms`` summands.  Independent of the reduced-form scan; used as
    its oracle.
    """
    d = int(d)
    if d >= 0 or d % 4 not in (0, 1):
        raise FormError("d must be a negative discriminant")
    q = -d
    chi = np.zeros(q, dtype=np.float64)
    for r in range(1, q):
        chi[r] = int(kronecker_symbol(d, r))
    n = np.arange(1, terms + 1)
    lval = float(np.sum(chi[n % q] / n))
    w = 6 if d == -3 else 4 if d == -4 else 2
    return round(w * math.sqrt(q) * lval / (2 * math.pi))
