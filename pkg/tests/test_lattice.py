import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from k3lat.lattice import Lattice, LatticeError
from util import change_basis, random_nondegenerate, random_unimodular

A2 = Lattice([[2, 1], [1, 2]])
U = Lattice([[0, 1], [1, 0]])


def test_rejects_bad_gram():
    with pytest.raises(LatticeError):
        Lattice([[1, 2], [3, 4]])
    with pytest.raises(LatticeError):
        Lattice([[1, 2, 3], [2, 1, 0]])
    with pytest.raises(LatticeError):
        Lattice([])


@pytest.mark.parametrize("gram,v,expected", [
    ([[2, 1], [1, 2]], (1, 0), 2),
    ([[2, 1], [1, 2]], (1, -2), 6),
    ([[0, 1], [1, 0]], (1, -1), -2),
])
def test_norm(gram, v, expected):
    assert Lattice(gram).norm(v) == expected


def test_norm_dimension_mismatch():
    with pytest.raises(LatticeError):
        A2.norm((1, 0, 0))


@pytest.mark.parametrize("gram,expected", [
    ([[2, 1], [1, 2]], (2, 0)),
    ([[0, 1], [1, 0]], (1, 1)),
    ([[-8, -4], [-4, -8]], (0, 2)),
    ([[2, 1, 0], [1, 12, 0], [0, 0, -1]], (2, 1)),
])
def test_signature(gram, expected):
    assert Lattice(gram).signature() == expected


def test_signature_degenerate():
    with pytest.raises(LatticeError):
        Lattice([[1, 1], [1, 1]]).signature()


@pytest.mark.parametrize("gram,expected", [
    ([[2, 1], [1, 2]], 3),
    ([[6, 0], [0, 2]], 12),
    ([[0, 1], [1, 0]], -1),
])
def test_determinant(gram, expected):
    assert Lattice(gram).determinant() == expected


@pytest.mark.parametrize("gram,expected", [
    ([[2, 0], [0, 2]], (2, 2)),
    ([[2, 1], [1, 2]], (3,)),
    ([[6, 0], [0, 2]], (2, 6)),
])
def test_discriminant_group(gram, expected):
    assert Lattice(gram).discriminant_group() == expected


def test_discriminant_group_divisibility_and_product(rng):
    for _ in range(30):
        lat = random_nondegenerate(rng.choice([2, 3, 4]), rng)
        factors = lat.discriminant_group()
        prod = math.prod(factors) if factors else 1
        assert prod == abs(lat.determinant())
        assert all(factors[i] % factors[i - 1] == 0 for i in range(1, len(factors)))


def test_direct_sum_and_twist():
    assert Lattice([[2]]).direct_sum(Lattice([[-2]])).gram == ((2, 0), (0, -2))
    s = A2.direct_sum(Lattice([[-1]]))
    assert s.rank == 3 and s.determinant() == -3
    assert A2.twist(-4).gram == ((-8, -4), (-4, -8))
    assert Lattice([[1]]).twist(7).gram == ((7,),)
    assert A2.twist(-1).twist(-1) == A2
    assert A2.twist(-4).determinant() == (-4) ** 2 * 3
    with pytest.raises(LatticeError):
        A2.twist(0)


def test_is_primitive():
    l3 = A2.direct_sum(Lattice([[2]]))
    assert l3.is_primitive((1, -2, 0))
    assert not A2.is_primitive((2, 4))
    assert l3.is_primitive((0, 0, 1))
    with pytest.raises(LatticeError):
        A2.is_primitive((0, 0))


def test_orthogonal_complement_rank20_example():
    # rank-3 lattice entering the twistor-fibre construction: splitting at the
    # last vector recovers the binary part, splitting at the first yields a
    # lattice with a different discriminant group
    l3 = A2.direct_sum(Lattice([[2]]))
    comp3, basis3 = l3.orthogonal_complement((0, 0, 1))
    assert comp3.gram == ((2, 1), (1, 2))
    comp1, basis1 = l3.orthogonal_complement((1, 0, 0))
    assert comp1.gram == ((6, 0), (0, 2))
    assert basis1 == ((1, -2, 0), (0, 0, 1))
    assert comp1.discriminant_group() == (2, 6)
    assert comp3.discriminant_group() == (3,)


def test_orthogonal_complement_one_equation():
    comp, _ = Lattice([[2, 0], [0, 2]]).orthogonal_complement((1, 1))
    assert comp.gram == ((4,),)


def test_orthogonal_complement_exactness(rng):
    for _ in range(25):
        lat = random_nondegenerate(rng.choice([2, 3, 4]), rng)
        v = tuple(rng.randint(-4, 4) for _ in range(lat.rank))
        if all(x == 0 for x in v):
            continue
        try:
            comp, basis = lat.orthogonal_complement(v)
        except LatticeError:
            continue
        assert comp.rank == lat.rank - 1
        for b in basis:
            assert lat.inner(b, v) == 0
            assert lat.is_primitive(b)
        for i, bi in enumerate(basis):
            for j, bj in enumerate(basis):
                assert lat.inner(bi, bj) == comp.gram[i][j]


def test_invariants_under_basis_change(rng):
    for _ in range(100):
        lat = random_nondegenerate(rng.choice([2, 3]), rng)
        u = random_unimodular(lat.rank, rng)
        other = change_basis(lat, u)
        assert other.signature() == lat.signature()
        assert abs(other.determinant()) == abs(lat.determinant())
        assert other.discriminant_group() == lat.discriminant_group()


@given(st.lists(st.integers(-9, 9), min_size=3, max_size=3))
@settings(max_examples=60, deadline=None)
def test_signature_counts_sum_to_rank(entries):
    a, b, c = entries
    lat = Lattice([[a, b], [b, c]])
    if lat.determinant() == 0:
        return
    pos, neg = lat.signature()
    assert pos + neg == 2
    # a negative determinant means exactly one eigenvalue of each sign
    assert (lat.determinant() > 0) == (pos % 2 == 0)
