from __future__ import annotations

from fractions import Fraction
from math import comb

import pytest

from cliffspace.exactla import Subspace
from cliffspace.quadalg import (
    AlgebraPresentation,
    GenerationError,
    HilbertSeries,
    NotFrobeniusShaped,
    dual_presentation,
    frobenius_check,
    index_word,
    koszul_series_check,
    minimal_relations,
    quotient_table,
    subspace_from_words,
    word_index,
)


def commutators(n):
    return subspace_from_words(n, 2, [{(i, j): 1, (j, i): -1} for i in range(n) for j in range(i + 1, n)])


def polynomial_ring(n, weighted=True):
    w = tuple(tuple(int(t == a) for t in range(n)) for a in range(n)) if weighted else None
    return AlgebraPresentation(n, ((2, commutators(n)),), w)


def series_oracle(coeffs_a, coeffs_b, cap):
    """Plain Cauchy product."""
    return [sum(coeffs_a[i] * coeffs_b[d - i] for i in range(d + 1)) for d in range(cap + 1)]


def test_word_index_roundtrip():
    for w in [(0,), (1, 0, 2), (2, 2, 2, 1)]:
        assert index_word(word_index(w, 3), 3, len(w)) == w


def test_free_algebra_dims():
    p = AlgebraPresentation(2, ())
    assert quotient_table(p, 5).dims == tuple(2**d for d in range(6))


@pytest.mark.parametrize("weighted", [True, False])
def test_polynomial_ring_dims(weighted):
    for n in (1, 2, 3, 4):
        t = quotient_table(polynomial_ring(n, weighted), 6)
        assert t.dims == tuple(comb(n + d - 1, d) for d in range(7))


def test_normal_words_are_sorted_monomials():
    t = quotient_table(polynomial_ring(3), 3)
    assert t.labels[2] == [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)]


def test_exterior_algebra_is_frobenius():
    for n in (1, 2, 3, 4):
        ext = quotient_table(dual_presentation(polynomial_ring(n)), n + 2)
        assert ext.dims == tuple(comb(n, d) for d in range(n + 3))
        assert frobenius_check(ext, n)


def test_frobenius_shape_guard():
    with pytest.raises(NotFrobeniusShaped):
        frobenius_check(quotient_table(polynomial_ring(2), 4), 2)


def test_hilbert_series_product_matches_oracle():
    a = HilbertSeries.polynomial_ring(3, 8)
    b = HilbertSeries.exterior(3, 8)
    assert list((a * b).coefficients) == series_oracle(a.coefficients, b.coefficients, 8)
    assert koszul_series_check(a, b)
    assert not koszul_series_check(a, HilbertSeries.of([1, 3, 3, 2], 8))


def test_koszul_cap_mismatch():
    with pytest.raises(ValueError):
        koszul_series_check(HilbertSeries.of([1, 1], 3), HilbertSeries.of([1, 1], 4))


def test_minimal_relations_of_polynomial_ring():
    t = quotient_table(polynomial_ring(3), 4)
    rel = minimal_relations(t, 4)
    assert [r.new_dim for r in rel] == [0, 3, 0, 0]
    # Lambda^2 V, with the Koszul syzygy Lambda^3 V in degree three
    assert rel[1].new_character == {(1, 1): 1}
    assert rel[2].overlap_dim == 1


def test_generation_error():
    # B_1 = V but B_2 is not spanned by products: a table whose right multiplication is zero
    from cliffspace.quadalg import GradedAlgebraTable

    rm = [[[{0: Fraction(1)}]], [[{}]]]
    t = GradedAlgebraTable(1, [1, 1, 1], rm)
    with pytest.raises(GenerationError):
        minimal_relations(t, 2)


def test_quadratic_dual_dimension():
    R = commutators(3)
    dual = dual_presentation(AlgebraPresentation(3, ((2, R),)))
    assert dual.relations[0][1].dim == 9 - R.dim
    assert dual.relations[0][1] == Subspace(9, [{a * 3 + b: 1, b * 3 + a: 1} if a != b else {a * 4: 1}
                                                for a in range(3) for b in range(a, 3)])
