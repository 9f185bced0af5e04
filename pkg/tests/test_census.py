import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import nextprime

from k3lat.census import (CensusError, build_unbounded_family,
                          certificate_from_json, certificate_to_json,
                          count_integral_twistor_classes, fm_partner_count,
                          has_minus_two_class, tau, verify_certificate,
                          write_certificate)
from k3lat.enumeration import vectors_of_norm
from k3lat.forms import class_group
from k3lat.lattice import Lattice

A2 = Lattice([[2, 1], [1, 2]])


class TestTauAndFm:
    @pytest.mark.parametrize("d,expected", [(12, 2), (2, 0), (60, 3)])
    def test_tau(self, d, expected):
        assert tau(d) == expected

    @pytest.mark.parametrize("d,expected", [(12, 2), (60, 4), (2, 1)])
    def test_fm_count(self, d, expected):
        assert fm_partner_count(d) == expected

    def test_odd_degree_rejected(self):
        with pytest.raises(CensusError):
            tau(9)
        with pytest.raises(CensusError):
            fm_partner_count(-4)

    @given(st.integers(2, 4000))
    @settings(max_examples=60, deadline=None)
    def test_new_odd_prime_doubles(self, half):
        d = 2 * half
        q = int(nextprime(half + 2))
        while (d // 2) % q == 0:
            q = int(nextprime(q))
        if tau(d) >= 1:
            assert fm_partner_count(d * q) == 2 * fm_partner_count(d)


class TestTwistorCount:
    def test_examples(self):
        assert count_integral_twistor_classes(A2, 2).count == 3
        assert count_integral_twistor_classes(Lattice([[2]]), 2).count == 1
        cube = Lattice([[2, 0, 0], [0, 2, 0], [0, 0, 2]])
        assert count_integral_twistor_classes(cube, 2).count == 3

    def test_pairs_with_vector_count(self):
        for d in (2, 4, 6, 8):
            res = count_integral_twistor_classes(A2, d)
            assert 2 * res.count == len(vectors_of_norm(A2, d))
            for v in res.representatives:
                assert A2.norm(v) == d

    def test_rejects(self):
        with pytest.raises(CensusError):
            count_integral_twistor_classes(Lattice([[0, 1], [1, 0]]), 2)
        with pytest.raises(CensusError):
            count_integral_twistor_classes(A2, 0)


class TestMinusTwo:
    def test_congruence_certifies_any_twist_by_four(self):
        res = has_minus_two_class(A2.twist(-4))
        assert not res.found and res.certified
        res2 = has_minus_two_class(Lattice([[0, 1], [1, 0]]).twist(4))
        assert not res2.found and res2.certified

    def test_hyperbolic_witness(self):
        res = has_minus_two_class(Lattice([[0, 1], [1, 0]]))
        assert res.found and res.certified
        assert Lattice([[0, 1], [1, 0]]).norm(res.witness) == -2

    def test_block_witness(self):
        res = has_minus_two_class(Lattice([[2, 0], [0, -2]]))
        assert res.found and Lattice([[2, 0], [0, -2]]).norm(res.witness) == -2

    def test_bounded_miss_is_uncertified(self):
        res = has_minus_two_class(Lattice([[6, 1], [1, 6]]), search_bound=2)
        assert not res.found and not res.certified


class TestUnboundedFamily:
    def test_p23_full_certificate(self):
        cert = build_unbounded_family(23, 1)
        assert cert.h == 3 and cert.degree == 4
        assert cert.witness_gaps == ()
        assert all(all(row) for row in cert.genus_checks)
        assert len(set(cert.complement_invariants)) == 3
        assert cert.distinct_orbit_lower_bound == 2  # mirror classes merge
        assert cert.minus_two_free
        for alpha in cert.classes:
            assert cert.ns_lattice.norm(alpha) == 4
            assert cert.ns_lattice.is_primitive(alpha)
        assert verify_certificate(cert)

    def test_p7_degenerate_single_class(self):
        cert = build_unbounded_family(7, 1)
        assert cert.h == 1
        assert cert.classes == ((0, 0, 1),)
        assert verify_certificate(cert)

    def test_nontrivial_d0(self):
        cert = build_unbounded_family(23, 3)
        assert cert.degree == 12
        assert all(cert.ns_lattice.norm(a) == 12
                   for a in cert.classes if a is not None)
        assert len(set(cert.complement_invariants)) == cert.h
        assert verify_certificate(cert)

    @pytest.mark.parametrize("p,d0", [(13, 1), (12, 1), (23, 2), (3, 9), (7, 49)])
    def test_preconditions(self, p, d0):
        with pytest.raises(CensusError):
            build_unbounded_family(p, d0)

    def test_roundtrip_and_file(self, tmp_path):
        cert = build_unbounded_family(23, 1)
        doc = json.loads(json.dumps(certificate_to_json(cert)))
        assert verify_certificate(certificate_from_json(doc))
        path = tmp_path / "cert.json"
        write_certificate(cert, path)
        with open(path) as fh:
            reloaded = certificate_from_json(json.load(fh))
        assert reloaded == cert

    def test_tampered_certificate_fails(self, tmp_path):
        cert = build_unbounded_family(23, 1)
        doc = certificate_to_json(cert)
        doc["classes"][0] = [1, 1, 1]
        with pytest.raises(CensusError):
            verify_certificate(certificate_from_json(doc))

    def test_orbit_counts_match_class_numbers(self):
        for p in (7, 11, 23):
            cert = build_unbounded_family(p, 1)
            assert len(set(cert.complement_invariants)) == class_group(-p).order
