"""Degree-d polarization census: unbounded orbit families, twistor class
counting, (-2)-class detection and Fourier-Mukai partner counts.

The centrepiece builds, for a prime p = 3 mod 4 and odd cube-free p*d0, a
certificate that one rank-3 lattice carries h(-p) distinguished vectors of
square 4*d0 whose orthogonal complements realize the h pairwise distinct
oriented form classes of discriminant -p.  The chain: the h form classes lie
in one genus (squares fill the class group), their rank-3 extensions by a
(-d0)-vector are isometric (indefinite ternary, odd cube-free determinant),
and the complements of the distinguished vectors recover the original binary
forms.  Forgetting orientations merges each mirror pair of classes, and the
merged records are what separate full orthogonal-group orbits; certificates
carry both counts.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from sympy import factorint, isprime, primefactors

from .enumeration import (EmbeddingMatrix, OrbitInvariant, identity_embedding,
                          indefinite_isometry_search, orbit_invariant,
                          vectors_of_norm, _bounded_norm_vectors)
from .forms import BinaryForm, class_group, form_to_lattice
from .genus import same_genus
from .lattice import Lattice, Vector

SCHEMA = "k3lat/1"


class CensusError(ValueError):
    """A census precondition failed or a certificate could not be assembled."""


def tau(d: int) -> int:
    """Number of distinct primes dividing d/2, for even d > 0."""
    d = int(d)
    if d <= 0 or d % 2 != 0:
        raise CensusError("d must be a positive even integer")
    return len(primefactors(d // 2))


def fm_partner_count(d: int) -> int:
    """Generic Fourier-Mukai partner count 2^(tau(d)-1) in degree d.

    The formula has no meaning at tau(d) = 0 (degree 2), where the generic
    surface is its own unique partner, so the count is clamped to 1 there.
    """
    t = tau(d)
    return 1 if t == 0 else 2 ** (t - 1)


@dataclass(frozen=True)
class TwistorCount:
    count: int
    representatives: tuple[Vector, ...]


def count_integral_twistor_classes(pos: Lattice, d: int) -> TwistorCount:
    """Number of square-d classes in a definite rank <= 3 lattice, up to sign.

    Antipodal vectors give the same twistor parameter (a class determines the
    fibre only up to complex conjugation), so pairs are counted once.
    """
    d = int(d)
    if d <= 0:
        raise CensusError("d must be positive")
    if pos.rank > 3:
        raise CensusError("rank must be at most 3")
    if not pos.is_positive_definite():
        raise CensusError("lattice must be positive definite")
    vecs = vectors_of_norm(pos, d)
    reps = tuple(v for v in vecs if v > tuple(-x for x in v))
    assert 2 * len(reps) == len(vecs)
    return TwistorCount(len(reps), reps)


@dataclass(frozen=True)
class MinusTwoResult:
    """Outcome of a (-2)-class check.

    certified is True when the answer is proven (by the mod-4 congruence or
    by an explicit witness); a bound-limited miss leaves found False and
    certified False.
    """

    found: bool
    certified: bool
    witness: Vector | None = None


def has_minus_two_class(lat: Lattice, search_bound: int = 6) -> MinusTwoResult:
    """Detect vectors of square -2, certifying absence when norms are 0 mod 4.

    Any twist by a multiple of 4 has every diagonal entry divisible by 4 and
    every off-diagonal entry even, which forces all norms into 4Z, so -2 is
    impossible.
    """
    g = lat.gram
    n = lat.rank
    if (all(g[i][i] % 4 == 0 for i in range(n))
            and all(g[i][j] % 2 == 0 for i in range(n) for j in range(i))):
        return MinusTwoResult(False, True)
    hits = _bounded_norm_vectors(lat, -2, search_bound)
    if hits:
        return MinusTwoResult(True, True, hits[0])
    return MinusTwoResult(False, False)


@dataclass(frozen=True)
class UnboundedFamilyCertificate:
    """Certified degree-4*d0 family with h(-p) distinct oriented complement
    classes inside one rank-3 ambient lattice free of (-2)-classes."""

    p: int
    d0: int
    degree: int
    h: int
    forms: tuple[BinaryForm, ...]
    ternaries: tuple[Lattice, ...]
    genus_checks: tuple[tuple[bool, ...], ...]
    isometry_witnesses: tuple[EmbeddingMatrix | None, ...]
    ns_lattice: Lattice
    classes: tuple[Vector | None, ...]
    complement_invariants: tuple[OrbitInvariant, ...]
    minus_two_free: bool
    height_bound: int

    @property
    def witness_gaps(self) -> tuple[int, ...]:
        return tuple(j for j, w in enumerate(self.isometry_witnesses) if w is None)

    @property
    def genus_only(self) -> bool:
        return bool(self.witness_gaps)

    @property
    def distinct_orbit_lower_bound(self) -> int:
        """Orbit count certified against the full orthogonal group.

        The h signed records realize the h pairwise non-isomorphic oriented
        complement classes; forgetting orientations merges each mirror pair,
        and only the merged records separate full orthogonal-group orbits.
        """
        return len({inv.unoriented() for inv in self.complement_invariants})


def build_unbounded_family(p: int, d0: int = 1,
                           height_bound: int = 10) -> UnboundedFamilyCertificate:
    """Run the full degree-4*d0 orbit pipeline for a prime p = 3 mod 4.

    Requires d0 odd with p*d0 cube free (the ternary classification needs an
    odd determinant not divisible by any cube).  Isometry witnesses between
    the ternaries are searched up to height_bound; pairs without a witness
    are recorded as gaps and their ambient classes omitted, never faked.
    """
    p, d0 = int(p), int(d0)
    if not isprime(p) or p % 4 != 3:
        raise CensusError("p must be a prime congruent to 3 mod 4")
    if d0 <= 0 or d0 % 2 == 0:
        raise CensusError("d0 must be a positive odd integer")
    if any(e >= 3 for e in factorint(p * d0).values()):
        raise CensusError("p*d0 must not be divisible by a cube")

    cl = class_group(-p)
    h = cl.order
    zd0 = Lattice([[-d0]])
    ternaries = tuple(form_to_lattice(f).direct_sum(zd0) for f in cl.elements)

    genus_checks = tuple(
        tuple(same_genus(ternaries[i], ternaries[j]) for j in range(h))
        for i in range(h))
    if not all(all(row) for row in genus_checks):
        raise CensusError("genus check failed; this indicates an implementation bug")

    witnesses: list[EmbeddingMatrix | None] = [identity_embedding(ternaries[0])]
    for j in range(1, h):
        res = indefinite_isometry_search(ternaries[j], ternaries[0], height_bound)
        witnesses.append(res.witness)

    ns = ternaries[0].twist(-4)
    degree = 4 * d0
    classes: list[Vector | None] = []
    invariants: list[OrbitInvariant] = []
    e_last = (0, 0, 1)
    for j in range(h):
        inv = orbit_invariant(ternaries[j].twist(-4), e_last)
        invariants.append(inv)
        w = witnesses[j]
        if w is None:
            classes.append(None)
            continue
        alpha = w.columns[2]
        if ns.norm(alpha) != degree or not ns.is_primitive(alpha):
            raise CensusError("witness image has the wrong square or is imprimitive")
        # a witness may reverse the complement orientation, so compare the
        # orientation-free part of the record
        if orbit_invariant(ns, alpha).unoriented() != inv.unoriented():
            raise CensusError("orbit invariant disagrees across the witness")
        classes.append(alpha)

    if len(set(invariants)) != h:
        raise CensusError("complement invariants are not pairwise distinct")

    m2 = has_minus_two_class(ns)
    if m2.found or not m2.certified:
        raise CensusError("could not certify the absence of (-2)-classes")

    return UnboundedFamilyCertificate(
        p=p, d0=d0, degree=degree, h=h,
        forms=cl.elements, ternaries=ternaries,
        genus_checks=genus_checks,
        isometry_witnesses=tuple(witnesses),
        ns_lattice=ns,
        classes=tuple(classes),
        complement_invariants=tuple(invariants),
        minus_two_free=True,
        height_bound=height_bound,
    )


def _gram_json(lat: Lattice) -> list[list[int]]:
    return [list(row) for row in lat.gram]


def certificate_to_json(cert: UnboundedFamilyCertificate) -> dict:
    return {
        "schema": SCHEMA,
        "kind": "unbounded_family_certificate",
        "p": cert.p,
        "d0": cert.d0,
        "degree": cert.degree,
        "h": cert.h,
        "forms": [list(f.as_tuple()) for f in cert.forms],
        "ternaries": [_gram_json(t) for t in cert.ternaries],
        "genus_checks": [list(row) for row in cert.genus_checks],
        "isometry_witnesses": [
            None if w is None else [list(c) for c in w.columns]
            for w in cert.isometry_witnesses],
        "ns_lattice": _gram_json(cert.ns_lattice),
        "classes": [None if a is None else list(a) for a in cert.classes],
        "complement_invariants": [
            {"norm": i.norm, "ambient_disc": list(i.ambient_disc),
             "complement_disc": list(i.complement_disc),
             "complement_class": list(i.complement_class)}
            for i in cert.complement_invariants],
        "minus_two_free": cert.minus_two_free,
        "witness_gaps": list(cert.witness_gaps),
        "height_bound": cert.height_bound,
    }


def certificate_from_json(doc: dict) -> UnboundedFamilyCertificate:
    if doc.get("schema") != SCHEMA or doc.get("kind") != "unbounded_family_certificate":
        raise CensusError("not an unbounded-family certificate document")
    ternaries = tuple(Lattice(g) for g in doc["ternaries"])
    witnesses = []
    for j, w in enumerate(doc["isometry_witnesses"]):
        if w is None:
            witnesses.append(None)
        else:
            witnesses.append(EmbeddingMatrix(
                ternaries[j], ternaries[0], tuple(tuple(c) for c in w)))
    return UnboundedFamilyCertificate(
        p=doc["p"], d0=doc["d0"], degree=doc["degree"], h=doc["h"],
        forms=tuple(BinaryForm(*f) for f in doc["forms"]),
        ternaries=ternaries,
        genus_checks=tuple(tuple(bool(x) for x in row) for row in doc["genus_checks"]),
        isometry_witnesses=tuple(witnesses),
        ns_lattice=Lattice(doc["ns_lattice"]),
        classes=tuple(None if a is None else tuple(a) for a in doc["classes"]),
        complement_invariants=tuple(
            OrbitInvariant(i["norm"], tuple(i["ambient_disc"]),
                           tuple(i["complement_disc"]),
                           tuple(i["complement_class"]))
            for i in doc["complement_invariants"]),
        minus_two_free=bool(doc["minus_two_free"]),
        height_bound=doc["height_bound"],
    )


def verify_certificate(cert: UnboundedFamilyCertificate) -> bool:
    """Recheck every claim in a certificate from scratch.

    Raises CensusError on the first failed check; returns True otherwise.
    """
    cl = class_group(-cert.p)
    if cl.elements != cert.forms or cl.order != cert.h:
        raise CensusError("form list disagrees with the reduced-form scan")
    zd0 = Lattice([[-cert.d0]])
    for f, t in zip(cert.forms, cert.ternaries):
        if form_to_lattice(f).direct_sum(zd0) != t:
            raise CensusError("ternary lattice was not built from its form")
    for i in range(cert.h):
        for j in range(cert.h):
            if not cert.genus_checks[i][j]:
                raise CensusError("recorded genus check is false")
            if not same_genus(cert.ternaries[i], cert.ternaries[j]):
                raise CensusError("genus check does not reproduce")
    if cert.ns_lattice != cert.ternaries[0].twist(-4):
        raise CensusError("ambient lattice is not the twisted first ternary")
    e_last = (0, 0, 1)
    for j in range(cert.h):
        inv = orbit_invariant(cert.ternaries[j].twist(-4), e_last)
        if inv != cert.complement_invariants[j]:
            raise CensusError("complement invariant does not reproduce")
        w = cert.isometry_witnesses[j]
        alpha = cert.classes[j]
        if w is None:
            if alpha is not None:
                raise CensusError("class present without an isometry witness")
            continue
        # EmbeddingMatrix construction re-verified Gram compatibility already
        if alpha != w.columns[2]:
            raise CensusError("class is not the witness image of the generator")
        if cert.ns_lattice.norm(alpha) != cert.degree:
            raise CensusError("class has the wrong square")
        if not cert.ns_lattice.is_primitive(alpha):
            raise CensusError("class is imprimitive")
        if orbit_invariant(cert.ns_lattice, alpha).unoriented() != inv.unoriented():
            raise CensusError("ambient orbit invariant disagrees")
    if len(set(cert.complement_invariants)) != cert.h:
        raise CensusError("complement invariants are not pairwise distinct")
    m2 = has_minus_two_class(cert.ns_lattice)
    if m2.found or not m2.certified or not cert.minus_two_free:
        raise CensusError("(-2)-class certification failed")
    return True


def write_certificate(cert: UnboundedFamilyCertificate, path) -> None:
    """Serialize a certificate, then reload and re-verify the written file."""
    doc = certificate_to_json(cert)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=1, sort_keys=True)
        fh.write("\n")
    with open(path, "r", encoding="utf-8") as fh:
        verify_certificate(certificate_from_json(json.load(fh)))
