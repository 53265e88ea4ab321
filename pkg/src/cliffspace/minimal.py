"""Minimal spaces of quadrics (dim U = dim V = n with empty base locus).

B_U is a flat deformation of the polynomial ring: its Hilbert series is
(1 - z)^(-n), it is presented by the quadratic relations U^perp, and its
quadratic dual is Frobenius with dimensions C(n, i).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb

from .clifford import (
    FamilyError,
    QuadricFamily,
    ext_table,
    multiplication_matrix,
    section_table,
    toric_quadrics,
)
from .exactla import SparseMatrix, Subspace, annihilator, rank, rank_of, subspace_intersection
from .quadalg import (
    AlgebraPresentation,
    GradedAlgebraTable,
    HilbertSeries,
    dual_presentation,
    frobenius_check,
    koszul_series_check,
    quotient_table,
    subspace_from_words,
    word_index,
)
from .report import INCONCLUSIVE, Check, SuiteResult

EMPTY = "empty-intersection"
INCONCLUSIVE_STATUS = "inconclusive"
COMMON_ZERO = "common-zero-possible"


class WrongFamilyShape(ValueError):
    pass


class NotCertified(RuntimeError):
    pass


class NotApplicable(ValueError):
    pass


def _require_minimal(f: QuadricFamily) -> None:
    if f.k != f.n:
        raise WrongFamilyShape(f"minimal family needs k = n, got k = {f.k}, n = {f.n}")


# ---------------------------------------------------------------------------
# base locus


@dataclass(frozen=True)
class BasepointCertificate:
    family: QuadricFamily
    status: str
    witness_degree: int | None = None
    ranks: tuple[tuple[int, int, int], ...] = ()  # (d, rank, dim Sym^d)

    @property
    def certified(self) -> bool:
        return self.status == EMPTY


def _monomials(n: int, d: int) -> list[tuple[int, ...]]:
    out = []
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for a in combo:
            e[a] += 1
        out.append(tuple(e))
    return out


def quadric_polynomial(m) -> dict[tuple[int, ...], Fraction]:
    """x^T m x as an exponent -> coefficient map."""
    n = len(m)
    out = {}
    for a in range(n):
        for b in range(a, n):
            c = m[a][b] * (1 if a == b else 2)
            if c:
                e = [0] * n
                e[a] += 1
                e[b] += 1
                out[tuple(e)] = c
    return out


def basepoint_check(f: QuadricFamily, dcap: int | None = None) -> BasepointCertificate:
    """Look for a degree d where U * Sym^{d-2} spans all forms of degree d.

    Surjectivity in some degree means the quadrics share no zero over the
    algebraic closure.  Reaching the cap only gives an inconclusive answer.
    """
    _require_minimal(f)
    n = f.n
    dcap = 2 * n + 2 if dcap is None else dcap
    quads = [quadric_polynomial(m) for m in f.basis]
    ranks = []
    for d in range(2, dcap + 1):
        target = {e: i for i, e in enumerate(_monomials(n, d))}
        vecs = []
        for mono in _monomials(n, d - 2):
            for q in quads:
                vecs.append({target[tuple(x + y for x, y in zip(e, mono))]: c for e, c in q.items()})
        r = rank_of(vecs)
        ranks.append((d, r, len(target)))
        if r == len(target):
            return BasepointCertificate(f, EMPTY, d, tuple(ranks))
    return BasepointCertificate(f, INCONCLUSIVE_STATUS, None, tuple(ranks))


def _certify(f: QuadricFamily, override: bool) -> None:
    if override:
        return
    cert = basepoint_check(f)
    if not cert.certified:
        raise NotCertified(f"base locus not certified empty ({cert.status}); pass override=True to proceed")


# ---------------------------------------------------------------------------
# the algebra and its presentation


def build_BU(f: QuadricFamily, cap: int, override: bool = False) -> GradedAlgebraTable:
    _require_minimal(f)
    _certify(f, override)
    return section_table(f, cap)


def binomial_identity(n: int, i: int) -> tuple[int, int]:
    """(sum_s C(n, i-2s) C(n+s-1, s), C(n+i-1, i))."""
    lhs = sum(comb(n, i - 2 * s) * comb(n + s - 1, s) for s in range(i // 2 + 1) if i - 2 * s <= n)
    return lhs, comb(n + i - 1, i)


def sym2_subspace(n: int) -> Subspace:
    """Symmetric tensors inside V (x) V."""
    vecs = []
    for a in range(n):
        for b in range(a, n):
            vecs.append({a * n + b: 1, b * n + a: 1} if a != b else {a * n + a: 1})
    return Subspace(n * n, vecs)


def u_perp(f: QuadricFamily) -> Subspace:
    """Ker(Sym^2 V -> U^dual) inside V (x) V: symmetric tensors killed by every form in U."""
    n = f.n
    gram = Subspace(n * n, ({a * n + b: m[a][b] for a in range(n) for b in range(n) if m[a][b]} for m in f.basis))
    return subspace_intersection(annihilator(gram), sym2_subspace(n))


def family_presentation(f: QuadricFamily) -> AlgebraPresentation:
    return AlgebraPresentation(f.n, ((2, u_perp(f)),), _gen_weights(f))


def _gen_weights(f: QuadricFamily):
    if f.coefficient_weights is None:
        return None
    return tuple(tuple(int(t == a) for t in range(f.n)) for a in range(f.n))


@dataclass
class PresentationMatch:
    u_perp_dim: int
    clifford_dims: tuple[int, ...]
    quotient_dims: tuple[int, ...]
    structure_ok: dict[int, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.clifford_dims == self.quotient_dims and all(self.structure_ok.values())


def presentation_match(f: QuadricFamily, cap: int, override: bool = False) -> PresentationMatch:
    """Compare B_U with T(V)/<U^perp> degree by degree.

    Both are quotients of T(V); they agree as algebras exactly when the word
    maps V^d -> B_d and V^d -> A_d have the same kernel, i.e. when the
    Clifford word matrix factors as P * (quotient word matrix) with P
    invertible.  P is read off from the normal words of the quotient.
    """
    _require_minimal(f)
    _certify(f, override)
    pres = family_presentation(f)
    quot = quotient_table(pres, cap)
    cliff_dims = [1]
    res = PresentationMatch(pres.relations[0][1].dim, (), tuple(quot.dims))
    n = f.n
    for d in range(1, cap + 1):
        mb = multiplication_matrix(f, d)
        cliff_dims.append(mb.rows)
        ma = quot.word_matrix(d)
        normal_cols = [word_index(w, n) for w in quot.labels[d]]
        bcols = mb.column_vectors()
        p = SparseMatrix.from_columns([bcols[c] for c in normal_cols], mb.rows)
        res.structure_ok[d] = p.rows == p.cols and rank(p) == p.rows and p @ ma == mb
    res.clifford_dims = tuple(cliff_dims)
    return res


# ---------------------------------------------------------------------------
# duality, Koszul and helix certificates


def dual_table(f: QuadricFamily, cap: int) -> GradedAlgebraTable:
    """B_U^! = T(V^dual)/<(U^perp)^perp>."""
    return quotient_table(dual_presentation(family_presentation(f)), cap)


def mck_series_check(h: HilbertSeries, n: int) -> bool:
    """(1 - z)^n h(z) == 1 through the cap of h."""
    poly = HilbertSeries.of(((-1) ** i * comb(n, i) for i in range(n + 1)), h.cap)
    return (poly * h).is_one()


def mck_identity(f: QuadricFamily, cap: int, override: bool = False) -> bool:
    return mck_series_check(build_BU(f, cap, override).hilbert(), f.n)


@dataclass
class HelixReport:
    n: int
    serre: dict[int, dict[int, int]]
    forward_violations: list[tuple[int, int, dict[int, int]]]

    @property
    def ok(self) -> bool:
        return not self.forward_violations and all(v == {self.n: 1} for v in self.serre.values())


def helix_ext_check(f: QuadricFamily, lo: int = -4, hi: int = 4) -> HelixReport:
    """Ext(B_i, B_{i-n}) one-dimensional in the top degree; Ext(B_i, B_j), i <= j, only in degree 0.

    The top cohomology is labelled by p = k = dim U, as in the section-dimension formula.
    """
    _require_minimal(f)
    n = f.n
    table = ext_table(f, lo - n, hi)
    serre = {i: table[i, i - n] for i in range(lo, hi + 1)}
    bad = [(i, j, e) for (i, j), e in table.items() if i <= j and set(e) - {0}]
    return HelixReport(n, serre, bad)


# ---------------------------------------------------------------------------
# the toric q-family


@dataclass(frozen=True)
class ToricParameters:
    n: int
    q: Fraction

    def __post_init__(self):
        object.__setattr__(self, "q", Fraction(self.q))


def toric_relations(n: int, q) -> Subspace:
    """span{v_i (x) v_j - q v_j (x) v_i : i < j}."""
    q = Fraction(q)
    vecs = []
    for i in range(n):
        for j in range(i + 1, n):
            vecs.append({(i, j): 1, (j, i): -q})
    return subspace_from_words(n, 2, vecs)


def toric_presentation(p: ToricParameters) -> AlgebraPresentation:
    w = tuple(tuple(int(t == a) for t in range(p.n)) for a in range(p.n))
    return AlgebraPresentation(p.n, ((2, toric_relations(p.n, p.q)),), w)


@dataclass
class ToricFamilyResult:
    presentation: AlgebraPresentation
    hilbert: HilbertSeries
    dual_dims: tuple[int, ...]


def toric_family(p: ToricParameters, cap: int) -> ToricFamilyResult:
    pres = toric_presentation(p)
    table = quotient_table(pres, cap)
    dual = quotient_table(dual_presentation(pres), max(cap, p.n + 1))
    return ToricFamilyResult(pres, table.hilbert(), tuple(dual.dims[: p.n + 2]))


def sorted_monomials(n: int, d: int) -> list[tuple[int, ...]]:
    return [tuple(c) for c in combinations_with_replacement(range(n), d)]


def pbw_check_presentation(pres: AlgebraPresentation, cap: int) -> bool:
    """Sorted monomials v_1^{i_1} ... v_n^{i_n} form a basis of every A_d, d <= cap."""
    table = quotient_table(pres, cap)
    n = pres.ngen
    for d in range(cap + 1):
        mons = sorted_monomials(n, d)
        if len(mons) != comb(n + d - 1, d) or table.dims[d] != len(mons):
            return False
        if rank_of(table.word_image(w) for w in mons) != len(mons):
            return False
    return True


def pbw_check(p: ToricParameters, cap: int) -> bool:
    if p.q == 0:
        raise NotApplicable("q = 0 is outside the PBW family")
    return pbw_check_presentation(toric_presentation(p), cap)


# ---------------------------------------------------------------------------
# random certified families


def random_certified_family(n: int, seed: int, spread: int = 3, attempts: int = 50) -> QuadricFamily:
    """The toric family plus a random symmetric rational perturbation, re-certified."""
    rng = random.Random(seed)
    base = toric_quadrics(n)
    for _ in range(attempts):
        mats = []
        for m in base.basis:
            new = [list(r) for r in m]
            for a in range(n):
                for b in range(a, n):
                    x = Fraction(rng.randint(-spread, spread), rng.randint(1, spread))
                    new[a][b] += x
                    if a != b:
                        new[b][a] += x
            mats.append(new)
        try:
            f = QuadricFamily(n, tuple(mats))
        except FamilyError:
            continue
        if basepoint_check(f).certified:
            return f
    raise RuntimeError(f"no certified perturbation found for n={n}, seed={seed}")


# ---------------------------------------------------------------------------
# suites


def suite(f: QuadricFamily, cap: int = 6, label: str = "minimal") -> SuiteResult:
    res = SuiteResult(label)
    try:
        cert = basepoint_check(f)
    except WrongFamilyShape as exc:
        res.add(Check("family shape k = n", "fail", observed=f.k, expected=f.n, anchor="minimal space of quadrics",
                      note=str(exc)))
        return res
    if not cert.certified:
        res.add(Check("base locus certified empty", INCONCLUSIVE, observed=cert.status, expected=EMPTY,
                      anchor="empty base locus", note="certificate not found up to the degree cap; suite skipped"))
        return res
    n = f.n
    res.add(Check("base locus certified empty", "pass", observed=cert.witness_degree, anchor="empty base locus"))
    table = build_BU(f, cap)
    res.add(Check.compare("h_BU = (1 - z)^(-n)", list(table.dims), list(HilbertSeries.polynomial_ring(n, cap).coefficients),
                          "Hilbert series of B_U"))
    res.add(Check.truth("(1 - z)^n h_BU = 1", mck_series_check(table.hilbert(), n), "linear resolution of k"))
    pm = presentation_match(f, min(cap, 6))
    res.add(Check.compare("dim U^perp", pm.u_perp_dim, n * (n + 1) // 2 - n, "quadratic relations U^perp"))
    res.add(Check.compare("T(V)/<U^perp> dims = B_U dims", list(pm.quotient_dims), list(pm.clifford_dims),
                          "B_U = T(V)/<U^perp>"))
    res.add(Check.truth("structure constants agree", all(pm.structure_ok.values()), "B_U = T(V)/<U^perp>",
                        observed=pm.structure_ok))
    dual = dual_table(f, max(cap, n + 1))
    res.add(Check.compare("dual dims C(n, i)", list(dual.dims[: n + 2]), [comb(n, i) for i in range(n + 2)],
                          "B_U^! Frobenius of index n"))
    res.add(Check.truth("h_BU(z) h_BU!(-z) = 1", koszul_series_check(table.hilbert(), HilbertSeries.of(dual.dims, cap)),
                        "Koszul series identity"))
    res.add(Check.truth("Frobenius pairing", frobenius_check(dual, n), "B_U^! Frobenius of index n"))
    helix = helix_ext_check(f)
    res.add(Check.truth("helix Ext conditions", helix.ok, "geometric helix",
                        observed={"serre": helix.serre, "violations": helix.forward_violations}))
    return res


def toric_suite(n: int, q, cap: int = 6) -> SuiteResult:
    p = ToricParameters(n, q)
    res = SuiteResult(f"toric n={n} q={p.q}")
    fam = toric_family(p, cap)
    res.add(Check.compare("A_{T,q} dims = polynomial dims", list(fam.hilbert.coefficients),
                          list(HilbertSeries.polynomial_ring(n, cap).coefficients), "flat deformation of Sym V"))
    res.add(Check.compare("dual dims C(n, i)", list(fam.dual_dims), [comb(n, i) for i in range(n + 2)],
                          "flat deformation of the exterior algebra"))
    if p.q == 0:
        res.add(Check("PBW basis", "skipped", anchor="PBW basis of sorted monomials", note="q = 0 unsupported"))
    else:
        res.add(Check.truth("PBW basis", pbw_check(p, cap), "PBW basis of sorted monomials"))
        res.add(Check.truth("h(z) h^!(-z) = 1", koszul_series_check(fam.hilbert, HilbertSeries.of(fam.dual_dims, cap)),
                            "Koszul series identity"))
    if p.q == -1:
        res.add(Check.truth("R_{T,-1} = U_T^perp", fam.presentation.relations[0][1] == u_perp(toric_quadrics(n)),
                            "A_{T,-1} = B_{U_T}"))
    if p.q == 1:
        res.add(Check.truth("R_{T,1} = Lambda^2 V", fam.presentation.relations[0][1] == annihilator(sym2_subspace(n)),
                            "A_{T,1} = Sym V"))
    return res
