"""Exact arithmetic in small CM fields and the period-embedding machinery.

Fields are presented by a monic integer minimal polynomial of degree 2 or 4
together with the automorphism acting as complex conjugation under every
embedding.  Elements live in the power basis with Fraction coordinates, so
all arithmetic, conjugation, integrality and total-positivity tests are
exact; nothing here evaluates a complex embedding numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from sympy import Poly, Symbol, cyclotomic_poly, factorint, totient

from .enumeration import EmbeddingMatrix, short_vectors_le
from .lattice import Lattice


class CMError(ValueError):
    """A CM-field or period precondition was violated."""


def _solve_rect(rows, rhs):
    """Any rational solution x of rows * x = rhs, or None when inconsistent."""
    m, k = len(rows), len(rows[0])
    a = [[Fraction(rows[i][j]) for j in range(k)] + [Fraction(rhs[i])]
         for i in range(m)]
    pivots = []
    r = 0
    for c in range(k):
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if a[i][k] != 0:
            return None
    x = [Fraction(0)] * k
    for i, c in enumerate(pivots):
        x[c] = a[i][k]
    return x


def _rational_rank(rows) -> int:
    a = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    ncols = len(a[0]) if a else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(a)) if a[r][col] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = 1 / a[rank][col]
        a[rank] = [x * inv for x in a[rank]]
        for r in range(len(a)):
            if r != rank and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[rank])]
        rank += 1
    return rank


def _reduction_table(min_poly: tuple[int, ...]) -> list[tuple[Fraction, ...]]:
    """Power-basis coordinates of theta^k for k = 0 .. 2n-2."""
    n = len(min_poly) - 1
    top = [-Fraction(c) for c in min_poly[:n]]  # theta^n
    table = [tuple(Fraction(1) if i == k else Fraction(0) for i in range(n))
             for k in range(n)]
    for _ in range(n - 1):
        prev = table[-1]
        shifted = [Fraction(0)] + list(prev[: n - 1])
        carry = prev[n - 1]
        table.append(tuple(shifted[i] + carry * top[i] for i in range(n)))
    return table


def _poly_mul(red, a, b) -> tuple[Fraction, ...]:
    """Product of power-basis coordinate vectors, reduced by the table."""
    n = len(red[0])
    prod = [Fraction(0)] * (2 * n - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    prod[i + j] += ai * bj
    out = list(prod[:n])
    for k in range(n, 2 * n - 1):
        if prod[k]:
            for i in range(n):
                out[i] += prod[k] * red[k][i]
    return tuple(out)


@dataclass(frozen=True)
class CMField:
    """Totally imaginary field of degree 2 or 4 with a designated conjugation."""

    min_poly: tuple[int, ...]          # ascending coefficients, monic
    conj_gen: tuple[Fraction, ...]     # image of the generator under conjugation
    integral_basis: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        mp = tuple(int(c) for c in self.min_poly)
        n = len(mp) - 1
        if n not in (2, 4):
            raise CMError("only degrees 2 and 4 are supported")
        if mp[-1] != 1:
            raise CMError("minimal polynomial must be monic")
        x = Symbol("x")
        poly = Poly(list(reversed(mp)), x)
        if not poly.is_irreducible:
            raise CMError("minimal polynomial must be irreducible")
        if poly.real_roots():
            raise CMError("field must be totally imaginary")
        conj = tuple(Fraction(c) for c in self.conj_gen)
        if len(conj) != n:
            raise CMError("conjugation image has the wrong length")
        basis = tuple(tuple(Fraction(c) for c in row) for row in self.integral_basis)
        if len(basis) != n or any(len(row) != n for row in basis):
            raise CMError("integral basis must be a square matrix")
        if _rational_rank(basis) != n:
            raise CMError("integral basis is not a basis")
        object.__setattr__(self, "min_poly", mp)
        object.__setattr__(self, "conj_gen", conj)
        object.__setattr__(self, "integral_basis", basis)
        object.__setattr__(self, "_red", _reduction_table(mp))
        conj_pows = [tuple(Fraction(1) if i == 0 else Fraction(0) for i in range(n))]
        for _ in range(n - 1):
            conj_pows.append(self._raw_mul(conj_pows[-1], conj))
        object.__setattr__(self, "_conj_pows", conj_pows)
        basis_cols = [[basis[j][i] for j in range(n)] for i in range(n)]
        object.__setattr__(self, "_basis_cols", basis_cols)
        self._validate_structure()

    # -- raw coordinate arithmetic -------------------------------------------

    def _raw_mul(self, a, b) -> tuple[Fraction, ...]:
        return _poly_mul(self._red, a, b)

    def _validate_structure(self) -> None:
        theta = self.gen()
        conj_theta = self.element(self.conj_gen)
        mp = self.min_poly
        acc = self.zero()
        power = self.one()
        for c in mp:
            acc = acc + power * c
            power = power * conj_theta
        if acc != self.zero():
            raise CMError("conjugation does not fix the minimal polynomial")
        if conj_theta.conjugate() != theta:
            raise CMError("conjugation must be an involution")
        if conj_theta == theta:
            raise CMError("conjugation must be nontrivial")
        if not _totally_positive(theta * conj_theta):
            raise CMError("conjugation is not complex conjugation")
        if not self.one().is_integral() or not theta.is_integral():
            raise CMError("integral basis must contain 1 and the generator's order")
        basis_elems = [self.element(row) for row in self.integral_basis]
        for bi in basis_elems:
            for bj in basis_elems:
                if not (bi * bj).is_integral():
                    raise CMError("integral basis is not multiplicatively closed")

    # -- constructors ----------------------------------------------------------

    @classmethod
    def imaginary_quadratic(cls, m: int) -> "CMField":
        """Q(sqrt(-m)) for squarefree m > 0, with its maximal order."""
        m = int(m)
        if m <= 0 or any(e > 1 for e in factorint(m).values()):
            raise CMError("m must be a positive squarefree integer")
        if m % 4 == 3:
            basis = ((Fraction(1), Fraction(0)), (Fraction(1, 2), Fraction(1, 2)))
        else:
            basis = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))
        return cls((m, 0, 1), (Fraction(0), Fraction(-1)), basis)

    @classmethod
    def cyclotomic(cls, k: int) -> "CMField":
        """Q(zeta_k) for phi(k) in {2, 4}; conjugation sends zeta to zeta^(k-1)."""
        k = int(k)
        n = int(totient(k))
        if n not in (2, 4):
            raise CMError("cyclotomic field must have degree 2 or 4")
        x = Symbol("x")
        mp = tuple(int(c) for c in reversed(Poly(cyclotomic_poly(k, x), x).all_coeffs()))
        red = _reduction_table(mp)
        conj = tuple(Fraction(1) if i == 0 else Fraction(0) for i in range(n))
        gen = tuple(Fraction(1) if i == 1 else Fraction(0) for i in range(n))
        for _ in range(k - 1):
            conj = _poly_mul(red, conj, gen)
        basis = tuple(tuple(Fraction(1) if i == j else Fraction(0) for i in range(n))
                      for j in range(n))
        return cls(mp, conj, basis)

    # -- element helpers -------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.min_poly) - 1

    def element(self, coords) -> "CMElement":
        coords = tuple(Fraction(c) for c in coords)
        if len(coords) != self.degree:
            raise CMError("coordinate length does not match the degree")
        return CMElement(self, coords)

    def rational(self, q) -> "CMElement":
        return self.element((Fraction(q),) + (Fraction(0),) * (self.degree - 1))

    def zero(self) -> "CMElement":
        return self.rational(0)

    def one(self) -> "CMElement":
        return self.rational(1)

    def gen(self) -> "CMElement":
        coords = [Fraction(0)] * self.degree
        coords[1] = Fraction(1)
        return self.element(coords)

    def from_integral(self, z) -> "CMElement":
        z = list(z)
        if len(z) != self.degree:
            raise CMError("coordinate length does not match the degree")
        coords = [Fraction(0)] * self.degree
        for zi, row in zip(z, self.integral_basis):
            for i in range(self.degree):
                coords[i] += zi * row[i]
        return self.element(coords)

    def roots_of_unity(self) -> list["CMElement"]:
        """All roots of unity in the ring of integers, sorted by coordinates."""
        return [x for x in enumerate_bounded_integers(self, 1)
                if is_root_of_unity(x) is not None]


@dataclass(frozen=True)
class CMElement:
    field: CMField
    coords: tuple[Fraction, ...]

    def _lift(self, other) -> "CMElement":
        if isinstance(other, CMElement):
            if other.field != self.field:
                raise CMError("elements belong to different fields")
            return other
        return self.field.rational(other)

    def __add__(self, other):
        o = self._lift(other)
        return CMElement(self.field, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self):
        return CMElement(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        return CMElement(self.field, self.field._raw_mul(self.coords, o.coords))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.field.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self) -> "CMElement":
        n = self.field.degree
        # columns of the multiplication-by-self matrix
        cols = [self.field._raw_mul(self.coords, self.field._red[j]) for j in range(n)]
        mat = [[cols[j][i] for j in range(n)] for i in range(n)]
        rhs = [Fraction(1)] + [Fraction(0)] * (n - 1)
        sol = _solve_rect(mat, rhs)
        if sol is None:
            raise CMError("division by zero")
        return CMElement(self.field, tuple(sol))

    def conjugate(self) -> "CMElement":
        out = [Fraction(0)] * self.field.degree
        for a, pw in zip(self.coords, self.field._conj_pows):
            if a:
                for i in range(self.field.degree):
                    out[i] += a * pw[i]
        return CMElement(self.field, tuple(out))

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise CMError("element is not rational")
        return self.coords[0]

    def integral_coords(self) -> tuple[Fraction, ...]:
        sol = _solve_rect(self.field._basis_cols, list(self.coords))
        assert sol is not None
        return tuple(sol)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.integral_coords())

    def trace(self) -> Fraction:
        n = self.field.degree
        return sum(self.field._raw_mul(self.coords, self.field._red[j])[j]
                   for j in range(n))

    def min_poly_coeffs(self) -> tuple[Fraction, ...]:
        """Ascending monic coefficients of the minimal polynomial over Q."""
        n = self.field.degree
        powers = [self.field.one().coords]
        for _ in range(n):
            powers.append(self.field._raw_mul(powers[-1], self.coords))
        for deg in range(1, n + 1):
            rows = [[powers[k][i] for k in range(deg)] for i in range(n)]
            rhs = [powers[deg][i] for i in range(n)]
            sol = _solve_rect(rows, rhs)
            if sol is not None:
                return tuple(-c for c in sol) + (Fraction(1),)
        raise CMError("no minimal polynomial found")  # pragma: no cover

    def __repr__(self) -> str:
        return f"CMElement({', '.join(str(c) for c in self.coords)})"


def _totally_nonneg(y: CMElement) -> bool:
    """Exact test that every embedding sends y to a nonnegative real."""
    if y.conjugate() != y:
        return False
    mp = y.min_poly_coeffs()
    if len(mp) == 2:
        return -mp[0] >= 0
    c0, c1, _ = mp
    disc = c1 * c1 - 4 * c0
    # roots are (-c1 +- sqrt(disc)) / 2; both real and nonnegative
    return disc >= 0 and -c1 >= 0 and c0 >= 0


def _totally_positive(y: CMElement) -> bool:
    if y.conjugate() != y:
        return False
    mp = y.min_poly_coeffs()
    if len(mp) == 2:
        return -mp[0] > 0
    c0, c1, _ = mp
    disc = c1 * c1 - 4 * c0
    return disc >= 0 and -c1 > 0 and c0 > 0


def enumerate_bounded_integers(field: CMField, bound: int) -> list[CMElement]:
    """All algebraic integers with every complex embedding of modulus <= bound.

    Candidates come from the trace form box (sum of |g(x)|^2 is a positive
    definite rational quadratic form in the integral coordinates); acceptance
    is the exact totally-nonnegative test on bound^2 - x * conj(x).
    """
    bound = int(bound)
    if bound < 0:
        raise CMError("bound must be nonnegative")
    n = field.degree
    basis = [field.element(row) for row in field.integral_basis]
    gram = [[(bi * bj.conjugate()).trace() for bj in basis] for bi in basis]
    out = []
    bsq = field.rational(bound * bound)
    for z in short_vectors_le(gram, Fraction(n * bound * bound)):
        x = field.from_integral(z)
        if _totally_nonneg(bsq - x * x.conjugate()):
            out.append(x)
    out.sort(key=lambda e: e.coords)
    return out


def max_root_of_unity_order(degree: int) -> int:
    """Largest m with phi(m) <= degree; phi(m) >= sqrt(m/2) bounds the scan."""
    degree = int(degree)
    if degree < 1:
        raise CMError("degree must be positive")
    limit = 2 * degree * degree + 2
    return max(m for m in range(1, limit + 1) if totient(m) <= degree)


def is_root_of_unity(x: CMElement) -> int | None:
    """Least m with x^m = 1, or None.

    An algebraic integer whose conjugates all have modulus 1 is a root of
    unity, and x * conj(x) = 1 is exactly that modulus condition here, so
    powering up to the cyclotomic bound for the degree decides the question.
    """
    if not x.is_integral():
        return None
    if x * x.conjugate() != x.field.one():
        return None
    bound = max_root_of_unity_order(x.field.degree)
    power = x
    for m in range(1, bound + 1):
        if power == x.field.one():
            return m
        power = power * x
    return None


def twistor_fiber_bound(field_degree: int, roots_of_unity: int | None = None) -> int:
    """Upper bound for the number of twistor fibres isomorphic to the base.

    Twice the number of roots of unity when that count is known, else twice
    the largest possible order of a root of unity in a field of the given
    degree.  Transcendental ranks above 21 cannot occur.
    """
    field_degree = int(field_degree)
    if not 1 <= field_degree <= 21:
        raise CMError("field degree must be between 1 and 21")
    if roots_of_unity is not None:
        if roots_of_unity < 1:
            raise CMError("root-of-unity count must be positive")
        return 2 * roots_of_unity
    return 2 * max_root_of_unity_order(field_degree)


@dataclass(frozen=True)
class PeriodVector:
    """Isotropic positive class sigma = sum mu_i gamma_i defining a weight-two
    Hodge structure on the lattice, with exact CM-field coordinates."""

    lattice: Lattice
    mu: tuple[CMElement, ...]

    def __post_init__(self) -> None:
        mu = tuple(self.mu)
        if len(mu) != self.lattice.rank:
            raise CMError("need one coordinate per basis vector")
        field = mu[0].field
        if any(m.field != field for m in mu):
            raise CMError("coordinates must share one field")
        object.__setattr__(self, "mu", mu)
        g = self.lattice.gram
        n = self.lattice.rank
        iso = field.zero()
        for i in range(n):
            for j in range(n):
                if g[i][j]:
                    iso = iso + mu[i] * mu[j] * g[i][j]
        if iso != field.zero():
            raise CMError("period is not isotropic")
        if not _totally_positive(self._pairing()):
            raise CMError("(sigma.sigmabar) is not totally positive")
        rows = [m.coords for m in mu]
        if _rational_rank(rows) != n:
            raise CMError("period is not general: a proper primitive "
                          "sublattice contains it")
        if self.sigma1() == field.zero():
            raise CMError("(gamma_1.sigma) vanishes; permute the basis first")

    @property
    def field(self) -> CMField:
        return self.mu[0].field

    def _pairing(self) -> CMElement:
        g = self.lattice.gram
        n = self.lattice.rank
        out = self.field.zero()
        for i in range(n):
            for j in range(n):
                if g[i][j]:
                    out = out + self.mu[i] * self.mu[j].conjugate() * g[i][j]
        return out

    def sigma1(self) -> CMElement:
        g = self.lattice.gram
        out = self.field.zero()
        for i in range(self.lattice.rank):
            if g[0][i]:
                out = out + self.mu[i] * g[0][i]
        return out

    def normalized(self) -> "PeriodVector":
        """Rescale so that (gamma_1.sigma) = 1."""
        s = self.sigma1()
        return PeriodVector(self.lattice, tuple(m / s for m in self.mu))


def pairing_sigma_sigmabar(pv: PeriodVector) -> CMElement:
    """Exact (sigma.sigmabar); raises unless it is totally positive."""
    out = pv._pairing()
    if not _totally_positive(out):
        raise CMError("(sigma.sigmabar) is not totally positive")
    return out


def solve_lambda(pv: PeriodVector, phi: EmbeddingMatrix):
    """Coefficients (lambda, lambda', nu) with phi(sigma) = lambda sigma +
    lambda' sigmabar + nu e, or None when phi admits no such expression.

    phi must map into lattice + Z e with e the final basis vector.
    """
    n = pv.lattice.rank
    if phi.target.rank != n + 1 or phi.source.rank != n:
        raise CMError("embedding must map rank n into rank n+1")
    mu = pv.mu
    mub = [m.conjugate() for m in mu]
    field = pv.field
    cols = phi.columns
    cvals = []
    for j in range(n):
        acc = field.zero()
        for i in range(n):
            if cols[i][j]:
                acc = acc + mu[i] * cols[i][j]
        cvals.append(acc)
    pair = None
    for i in range(n):
        for j in range(i + 1, n):
            if mu[i] * mub[j] - mu[j] * mub[i] != field.zero():
                pair = (i, j)
                break
        if pair:
            break
    if pair is None:
        raise CMError("all coordinate minors vanish; period is degenerate")
    i, j = pair
    det = mu[i] * mub[j] - mu[j] * mub[i]
    lam = (cvals[i] * mub[j] - cvals[j] * mub[i]) / det
    lam_p = (mu[i] * cvals[j] - mu[j] * cvals[i]) / det
    for k in range(n):
        if cvals[k] != lam * mu[k] + lam_p * mub[k]:
            return None
    nu = field.zero()
    for i in range(n):
        if cols[i][n]:
            nu = nu + mu[i] * cols[i][n]
    return lam, lam_p, nu


def _norm_equation_value(lam, lam_p, nu, d, ssb) -> CMElement:
    return (lam * lam.conjugate() + lam_p * lam_p.conjugate()
            + nu * nu.conjugate() * (lam.field.rational(d) / ssb))


def verify_norm_equation(lam: CMElement, lam_p: CMElement, nu: CMElement,
                         d: int, ssb: CMElement) -> bool:
    """Exact check of |lambda|^2 + |lambda'|^2 + |nu|^2 d / (sigma.sigmabar) = 1."""
    if not _totally_positive(ssb):
        raise CMError("(sigma.sigmabar) must be totally positive")
    return _norm_equation_value(lam, lam_p, nu, d, ssb) == lam.field.one()


@dataclass(frozen=True)
class PeriodEmbedding:
    embedding: EmbeddingMatrix
    lam: CMElement
    lam_prime: CMElement
    nu: CMElement


def _denominator_lcm(x: CMElement) -> int:
    return math.lcm(*(c.denominator for c in x.integral_coords()))


def enumerate_period_embeddings(pv: PeriodVector, d: int,
                                overlattice_index: int = 1) -> list[PeriodEmbedding]:
    """Complete list of isometric embeddings of the period lattice into
    itself plus Z(d) that map sigma into the span of sigma, sigmabar and e.

    The scaling integer N clears the denominators any solution's lambda and
    lambda' can have, the candidates are the algebraic integers bounded by N
    (times the overlattice index), and each admissible pair is lifted back to
    a matrix and re-verified exactly.  With overlattice_index = k > 1 the
    returned matrices represent k * phi for embeddings phi into an index-k
    overlattice, so their source carries the form scaled by k^2.
    """
    d = int(d)
    nn = int(overlattice_index)
    if d <= 0:
        raise CMError("d must be positive")
    if nn < 1:
        raise CMError("overlattice index must be positive")
    t = pv.lattice
    if t.rank != 2:
        raise CMError("only rank-2 period lattices are supported")
    field = pv.field
    mu1, mu2 = pv.mu
    mub1, mub2 = mu1.conjugate(), mu2.conjugate()
    det_p = mu1 * mub2 - mu2 * mub1
    assert det_p != field.zero()  # guaranteed by period validity
    pinv = ((mub2 / det_p, -mub1 / det_p), (-mu2 / det_p, mu1 / det_p))
    nden = 1
    for row in pinv:
        for entry in row:
            for m in (mu1, mu2):
                nden = math.lcm(nden, _denominator_lcm(entry * m))
    target = t.direct_sum(Lattice([[d]]))
    source = t if nn == 1 else t.twist(nn * nn)
    ssb = pv._pairing()
    goal = field.rational(nn * nn)
    candidates = [x / nden for x in enumerate_bounded_integers(field, nden * nn)]
    norms = [x * x.conjugate() for x in candidates]
    g = t.gram
    out: list[PeriodEmbedding] = []
    for lam, nlam in zip(candidates, norms):
        for lam_p, nlam_p in zip(candidates, norms):
            rest = goal - nlam - nlam_p
            if not _totally_nonneg(rest):
                continue
            # psi = P [[lam, conj(lam')], [lam', conj(lam)]] P^-1 must be integral
            m2 = ((lam, lam_p.conjugate()), (lam_p, lam.conjugate()))
            psi = [[field.zero(), field.zero()], [field.zero(), field.zero()]]
            p = ((mu1, mub1), (mu2, mub2))
            for r in range(2):
                for c in range(2):
                    acc = field.zero()
                    for k in range(2):
                        for l in range(2):
                            acc = acc + p[r][k] * m2[k][l] * pinv[l][c]
                    psi[r][c] = acc
            if not all(e.is_rational() and e.as_rational().denominator == 1
                       for row in psi for e in row):
                continue
            pz = [[int(e.as_rational()) for e in row] for row in psi]
            # residual form must be d * b b^T for an integer vector b
            gp = [[sum(pz[a][i] * g[a][b] * pz[b][j] for a in range(2) for b in range(2))
                   for j in range(2)] for i in range(2)]
            r00 = nn * nn * g[0][0] - gp[0][0]
            r01 = nn * nn * g[0][1] - gp[0][1]
            r11 = nn * nn * g[1][1] - gp[1][1]
            bs = _rank_one_factor(r00, r01, r11, d)
            for b in bs:
                cols = ((pz[0][0], pz[1][0], b[0]), (pz[0][1], pz[1][1], b[1]))
                try:
                    emb = EmbeddingMatrix(source, target, cols)
                except ValueError:
                    continue
                solved = solve_lambda(pv, emb)
                if solved is None:
                    continue
                lam2, lam_p2, nu = solved
                if (lam2, lam_p2) != (lam, lam_p):
                    continue
                if _norm_equation_value(lam2, lam_p2, nu, d, ssb) != goal:
                    continue
                out.append(PeriodEmbedding(emb, lam2, lam_p2, nu))
    out.sort(key=lambda pe: pe.embedding.columns)
    return out


def _rank_one_factor(r00: int, r01: int, r11: int, d: int) -> list[tuple[int, int]]:
    """Integer vectors b with d * b b^T = ((r00, r01), (r01, r11))."""
    if r00 == 0 and r01 == 0 and r11 == 0:
        return [(0, 0)]
    if r00 % d or r11 % d or r00 < 0 or r11 < 0:
        return []
    b0 = math.isqrt(r00 // d)
    b1 = math.isqrt(r11 // d)
    if d * b0 * b0 != r00 or d * b1 * b1 != r11:
        return []
    sols = []
    for s0 in (1, -1):
        for s1 in (1, -1):
            if d * (s0 * b0) * (s1 * b1) == r01:
                sols.append((s0 * b0, s1 * b1))
    return sorted(set(sols))
