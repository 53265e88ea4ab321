from __future__ import annotations

from math import comb

import pytest

from cliffspace.clifford import universal_family
from cliffspace.exactla import subspace_sum
from cliffspace.maximal import (
    build_B,
    dim_B_formula,
    dim_B_n2,
    dim_B_schur,
    dual_table,
    euler_identity_check,
    homological_degree,
    relation_and_syzygy_report,
    resolution_terms,
    skew_kernel,
    suite,
    verify_decomposition,
)
from cliffspace.partitions import enumerate_symmetric_diagrams, schur_dim
from cliffspace.quadalg import HilbertSeries, quotient_table


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_suite_passes(n):
    res = suite(n, 6 if n < 4 else 4)
    assert [c.name for c in res.checks if c.status != "pass"] == []


def test_dimension_routes_agree():
    for n in range(1, 5):
        for i in range(8):
            assert dim_B_formula(n, i) == dim_B_schur(n, i)
    assert [dim_B_n2(i) for i in range(7)] == [1, 2, 4, 6, 9, 12, 16]


def test_basis_change_of_u_keeps_dims():
    f = universal_family(2)
    g = [[1, 1, 0], [0, 1, 2], [1, 0, 1]]
    from cliffspace.clifford import section_table

    assert section_table(f.with_basis_change(g), 5).dims == build_B(2, 5).dims


def test_decomposition_small():
    assert verify_decomposition(3, 6).ok


def test_cubic_relations_are_outer_placement_kernel():
    # the relation space is Ker(Lambda^2 V (x) V -> Lambda^3 V) with Lambda^2 on factors 1 and 3;
    # the other two placements give isomorphic but different subspaces
    for n in (2, 3):
        rep = relation_and_syzygy_report(n, 3)
        cubic = rep.by_degree(3).new
        assert cubic == skew_kernel(n, (0, 2))
        assert cubic != skew_kernel(n, (0, 1))
        assert cubic != skew_kernel(n, (1, 2))


def test_relation_report_n3():
    rep = relation_and_syzygy_report(3, 4)
    assert rep.by_degree(2).kernel_dim == 0
    assert rep.by_degree(3).kernel_dim == 8
    assert rep.by_degree(4).kernel_dim == 42
    assert rep.by_degree(4).new_dim == 0
    assert rep.by_degree(4).overlap_character == {(2, 2): 1}


def test_presentation_by_cubics():
    for n in (2, 3):
        rep = relation_and_syzygy_report(n, 3)
        from cliffspace.quadalg import AlgebraPresentation

        p = AlgebraPresentation(n, ((3, rep.by_degree(3).new),))
        assert quotient_table(p, 6).dims == build_B(n, 6).dims


def test_resolution_terms_and_euler():
    for n in (1, 2, 3):
        assert euler_identity_check(n, 8)
    assert resolution_terms(2).euler_polynomial() == [1, -2, 0, 2, -1]


def test_homological_degree_parity():
    for n in range(1, 6):
        for a in enumerate_symmetric_diagrams(n):
            assert (a.size + sum(1 for t, r in enumerate(a, 1) if r >= t)) % 2 == 0
            homological_degree(a)
    with pytest.raises(ValueError):
        homological_degree((2,))


def test_grassmannian_ranks_use_spinor_dimension():
    t = resolution_terms(3)
    assert t.grassmannian_ranks() == {i: 4 * r for i, r in t.module_ranks().items()}


def test_dual_table_total_dimension():
    # sum over symmetric diagrams of dim Sigma^alpha V, checked against the Euler polynomial at z = 1 in absolute value
    for n in (1, 2, 3):
        tab = dual_table(n)
        assert len(tab) == 2**n
        assert sum(e.dim for e in tab) == sum(schur_dim(a, n) for a in enumerate_symmetric_diagrams(n))


def test_hilbert_series_inverse():
    for n in (1, 2, 3):
        h = HilbertSeries.of([dim_B_formula(n, i) for i in range(9)], 8)
        poly = resolution_terms(n).euler_polynomial()
        assert (HilbertSeries.of(poly, 8) * h).is_one()


def test_n1_is_polynomial_ring_in_one_variable():
    assert build_B(1, 6).dims == tuple(comb(i, i) for i in range(7))
