"""Shared generators for random Clifford elements."""

from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import strategies as st

from cliffspace.clifford import CliffordElement, QuadricFamily, section_basis, toric_quadrics, universal_family
from cliffspace.minimal import random_certified_family


def families() -> list[QuadricFamily]:
    out = []
    for n in (1, 2, 3, 4):
        out.append(universal_family(n))
        out.append(toric_quadrics(n))
    out.append(random_certified_family(3, 11))
    return out


def random_element(f: QuadricFamily, degree: int, rng: random.Random, terms: int = 3) -> CliffordElement:
    basis = section_basis(f, degree)
    picks = rng.sample(basis, min(terms, len(basis)))
    return CliffordElement(f, {k: Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for k in picks})


def q_element(f: QuadricFamily, v, w) -> CliffordElement:
    """q(v, w) as a degree-two coefficient element."""
    out = CliffordElement(f)
    for a, va in enumerate(v):
        for b, wb in enumerate(w):
            for c, val in f.pairing[a][b]:
                out = out + CliffordElement.blade(f, [], [int(t == c) for t in range(f.k)]) * (va * wb * val)
    return out


coords = st.integers(-3, 3)


@st.composite
def element_of(draw, f: QuadricFamily, degree: int):
    basis = section_basis(f, degree)
    keys = draw(st.lists(st.sampled_from(basis), min_size=1, max_size=3, unique=True))
    return CliffordElement(f, {k: draw(st.fractions(-4, 4, max_denominator=3)) for k in keys})


@st.composite
def family_and_vectors(draw, count: int = 2):
    f = draw(st.sampled_from(families()))
    vecs = [draw(st.lists(coords, min_size=f.n, max_size=f.n)) for _ in range(count)]
    return f, vecs
