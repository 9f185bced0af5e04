import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from k3lat.forms import (BinaryForm, FormError, apply_transform, class_group,
                         compose, det2, dirichlet_class_number, form_to_lattice,
                         is_equivalent, is_fundamental_discriminant,
                         lattice_to_form, reduce_form, verify_principal_genus)
from util import random_unimodular


def brute_force_reduce(f, entry_bound=6):
    """Oracle: scan all determinant-1 transforms in a small box for the
    unique reduced representative."""
    hits = []
    r = range(-entry_bound, entry_bound + 1)
    for p, q, s, t in itertools.product(r, r, r, r):
        if p * t - q * s != 1:
            continue
        g = apply_transform(f, ((p, q), (s, t)))
        if g.is_reduced():
            hits.append(g.as_tuple())
    assert hits, "oracle box too small"
    assert len(set(hits)) == 1
    return BinaryForm(*hits[0])


@pytest.mark.parametrize("form,disc", [
    ((1, 1, 6), -23), ((2, 1, 3), -23), ((1, 0, 1), -4),
])
def test_discriminant(form, disc):
    assert BinaryForm(*form).discriminant() == disc


@pytest.mark.parametrize("form,expected", [
    ((1, 1, 6), (1, 1, 6)),
    ((6, 5, 2), (2, -1, 3)),
    ((4, 3, 2), (2, 1, 3)),
])
def test_reduce_against_bruteforce_oracle(form, expected):
    f = BinaryForm(*form)
    assert brute_force_reduce(f).as_tuple() == expected
    reduced, u = reduce_form(f)
    assert reduced.as_tuple() == expected
    assert det2(u) == 1
    assert apply_transform(f, u) == reduced


def test_reduce_rejects_indefinite():
    with pytest.raises(FormError):
        reduce_form(BinaryForm(1, 5, 1))
    with pytest.raises(FormError):
        reduce_form(BinaryForm(-1, 0, -1))


def test_reduce_idempotent_and_boundary():
    for f in [BinaryForm(2, 2, 3), BinaryForm(3, 3, 3), BinaryForm(2, -1, 2)]:
        r, _ = reduce_form(f)
        assert r.is_reduced()
        assert reduce_form(r)[0] == r
        assert r.b >= 0 or (abs(r.b) < r.a < r.c)


def test_is_equivalent():
    v = is_equivalent(BinaryForm(6, 5, 2), BinaryForm(2, -1, 3))
    assert v is not None and det2(v) == 1
    assert apply_transform(BinaryForm(6, 5, 2), v) == BinaryForm(2, -1, 3)
    assert is_equivalent(BinaryForm(2, 1, 3), BinaryForm(2, -1, 3)) is None
    f = BinaryForm(3, 1, 2)
    assert is_equivalent(f, f) is not None


@pytest.mark.parametrize("disc,forms", [
    (-23, [(1, 1, 6), (2, -1, 3), (2, 1, 3)]),
    (-4, [(1, 0, 1)]),
    (-3, [(1, 1, 1)]),
])
def test_class_group_small(disc, forms):
    cl = class_group(disc)
    assert [f.as_tuple() for f in cl.elements] == forms
    assert cl.order == len(forms)
    assert all(f.is_reduced() and f.is_primitive() for f in cl.elements)


def test_class_group_rejects_bad_discriminant():
    with pytest.raises(FormError):
        class_group(-5)
    with pytest.raises(FormError):
        class_group(23)


@pytest.mark.parametrize("f,g,expected", [
    ((1, 1, 6), (2, 1, 3), (2, 1, 3)),     # identity element
    ((2, 1, 3), (2, -1, 3), (1, 1, 6)),    # inverse pair
    ((2, 1, 3), (2, 1, 3), (2, -1, 3)),    # squaring in the order-3 group
])
def test_compose_examples(f, g, expected):
    assert compose(BinaryForm(*f), BinaryForm(*g)).as_tuple() == expected


def test_compose_rejects():
    with pytest.raises(FormError):
        compose(BinaryForm(1, 1, 6), BinaryForm(1, 0, 1))
    with pytest.raises(FormError):
        compose(BinaryForm(2, 2, 2), BinaryForm(2, 2, 2))


def test_class_group_axioms_sample():
    for disc in (-23, -47, -71, -84, -95):
        cl = class_group(disc)
        elems = list(cl.elements)
        table = {(a, b): compose(a, b) for a in elems for b in elems}
        e = cl.principal()
        assert e in elems
        for a in elems:
            assert table[(a, e)] == a
            assert any(table[(a, b)] == e for b in elems)
        for a in elems:
            for b in elems:
                assert table[(a, b)] == table[(b, a)]
        for a in elems:
            for b in elems:
                for c in elems:
                    assert compose(table[(a, b)], c) == compose(a, table[(b, c)])


def test_verify_principal_genus():
    assert verify_principal_genus(23)
    assert verify_principal_genus(47)
    with pytest.raises(FormError):
        verify_principal_genus(13)
    with pytest.raises(FormError):
        verify_principal_genus(15)


@pytest.mark.parametrize("form,gram", [
    ((1, 1, 6), ((2, 1), (1, 12))),
    ((2, 1, 3), ((4, 1), (1, 6))),
    ((1, 0, 1), ((2, 0), (0, 2))),
])
def test_form_to_lattice(form, gram):
    lat = form_to_lattice(BinaryForm(*form))
    assert lat.gram == gram
    assert lat.determinant() == -BinaryForm(*form).discriminant()
    assert lattice_to_form(lat).as_tuple() == (2 * form[0], 2 * form[1], 2 * form[2])


def test_dirichlet_matches_scan_on_fundamentals():
    for d in range(-499, -3):
        if not is_fundamental_discriminant(d):
            continue
        assert dirichlet_class_number(d) == class_group(d).order, d


@given(st.integers(1, 60), st.integers(-40, 40), st.integers(1, 60))
@settings(max_examples=40, deadline=None)
def test_reduce_is_canonical_under_sl2(a, b, c):
    f = BinaryForm(a, b, c)
    if f.discriminant() >= 0:
        return
    import random
    rng = random.Random(a * 10007 + b * 101 + c)
    r0, _ = reduce_form(f)
    for _ in range(5):
        u = random_unimodular(2, rng, special=True)
        g = apply_transform(f, ((u[0][0], u[0][1]), (u[1][0], u[1][1])))
        assert reduce_form(g)[0] == r0
