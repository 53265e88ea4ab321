from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from strategies import element_of, families, family_and_vectors, q_element, random_element

from cliffspace.clifford import (
    CliffordElement,
    FamilyError,
    QuadricFamily,
    cohomology,
    ext_table,
    multiplication_matrix,
    section_basis,
    section_dim,
    toric_quadrics,
    universal_family,
    zero_family,
)
from cliffspace.exactla import kernel_basis, rank


def vec(f, *coords):
    return CliffordElement.vector(f, list(coords))


def test_family_validation():
    with pytest.raises(FamilyError):
        QuadricFamily(2, (((1, 1), (0, 0)),))
    with pytest.raises(FamilyError):
        QuadricFamily(2, (((1, 0), (0, 0)), ((2, 0), (0, 0))))
    assert universal_family(3).k == 6
    assert toric_quadrics(4).k == 4


def test_product_of_two_basis_vectors():
    f = universal_family(2)
    e0, e1 = (CliffordElement.vector(f, a) for a in range(2))
    assert e0 * e1 == CliffordElement.blade(f, [0, 1]) + q_element(f, [1, 0], [0, 1])
    assert e0 * e0 == q_element(f, [1, 0], [1, 0])


def test_product_of_three_vectors():
    f = universal_family(3)
    e = [CliffordElement.vector(f, a) for a in range(3)]
    u = [[int(a == b) for b in range(3)] for a in range(3)]
    want = (
        CliffordElement.blade(f, [0, 1, 2])
        + q_element(f, u[1], u[2]) * e[0]
        - q_element(f, u[0], u[2]) * e[1]
        + q_element(f, u[0], u[1]) * e[2]
    )
    assert e[0] * e[1] * e[2] == want


def test_degree_is_additive():
    rng = random.Random(3)
    f = universal_family(3)
    for d1 in range(4):
        for d2 in range(4):
            x, y = random_element(f, d1, rng), random_element(f, d2, rng)
            p = x * y
            assert not p or p.degree == d1 + d2


def test_family_mismatch():
    with pytest.raises(FamilyError):
        CliffordElement.one(universal_family(2)) * CliffordElement.one(toric_quadrics(2))


def test_section_dims_match_basis():
    for f in (universal_family(2), universal_family(3), toric_quadrics(3)):
        for i in range(7):
            assert section_dim(f, i, 0) == len(section_basis(f, i))


def test_section_dim_examples():
    assert section_dim(universal_family(2), 1, 0) == 2
    for n in (2, 3, 4):
        assert section_dim(toric_quadrics(n), -n, n) == 1
        assert section_dim(toric_quadrics(n), -n, 0) == 0
    assert section_dim(universal_family(3), 0, 0) == 1


def test_ext_is_cohomology_of_difference():
    f = toric_quadrics(3)
    t = ext_table(f, -4, 4)
    for (i, j), e in t.items():
        assert e == cohomology(f, j - i)


def test_degree_three_kernel_for_n2():
    m = multiplication_matrix(universal_family(2), 3)
    assert m.cols - rank(m) == 2 == kernel_basis(m).dim


def test_associativity_random_triples():
    rng = random.Random(2024)
    fams = families()
    count = 0
    for _ in range(220):
        f = rng.choice(fams)
        x, y, z = (random_element(f, rng.randint(0, 3), rng) for _ in range(3))
        assert (x * y) * z == x * (y * z)
        count += 1
    assert count >= 200


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_associativity_property(data):
    f = data.draw(st.sampled_from(families()))
    x, y, z = (data.draw(element_of(f, data.draw(st.integers(0, 3)))) for _ in range(3))
    assert (x * y) * z == x * (y * z)


@settings(max_examples=80, deadline=None)
@given(family_and_vectors())
def test_clifford_relation(fv):
    f, (v, w) = fv
    a, b = CliffordElement.vector(f, v), CliffordElement.vector(f, w)
    assert a * b + b * a == q_element(f, v, w) * 2


def _wedge(f, s, t):
    if set(s) & set(t):
        return CliffordElement(f)
    word = list(s) + list(t)
    inv = sum(1 for i in range(len(word)) for j in range(i + 1, len(word)) if word[i] > word[j])
    return CliffordElement.blade(f, word) * (-1) ** inv


def test_wedge_degeneration_at_q_zero():
    for n in (1, 2, 3, 4):
        f = zero_family(n)
        blades = [c for r in range(n + 1) for c in combinations(range(n), r)]
        for s in blades:
            for t in blades:
                assert CliffordElement.blade(f, s) * CliffordElement.blade(f, t) == _wedge(f, s, t)


def test_scalar_multiplication_and_one():
    f = universal_family(2)
    x = vec(f, 1, 2)
    assert CliffordElement.one(f) * x == x == x * CliffordElement.one(f)
    assert x * Fraction(1, 2) == vec(f, Fraction(1, 2), 1)
