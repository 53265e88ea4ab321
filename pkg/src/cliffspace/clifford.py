"""Global sections of Clifford bimodules over a linear system of quadrics.

The degree-i piece B_i is spanned by pairs (S, e): a wedge monomial e_S with
S a subset of {0..n-1} and a coefficient monomial y^e in k commuting
variables dual to the chosen basis of U.  Its degree is |S| + 2|e|.

A vector v acts on the left by v . w = v ^ w + sum_i (-1)^i q(v, w_i) (w
with w_i removed), so B is the Clifford algebra of V over k[y] with the
generic form q(e_a, e_b) = sum_c q^(c)_{ab} y_c, written in the wedge
(Chevalley) basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from math import comb
from typing import Iterable, Mapping, Sequence

from .exactla import SparseMatrix, rank_of


class FamilyError(ValueError):
    pass


def _frac_matrix(m) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(Fraction(x) for x in row) for row in m)


@dataclass(frozen=True)
class QuadricFamily:
    """A k-dimensional space of quadratic forms on k^n, given by symmetric Gram matrices."""

    n: int
    basis: tuple[tuple[tuple[Fraction, ...], ...], ...]
    check: bool = field(default=True, compare=False)

    def __post_init__(self):
        basis = tuple(_frac_matrix(m) for m in self.basis)
        object.__setattr__(self, "basis", basis)
        n = self.n
        for idx, m in enumerate(basis):
            if len(m) != n or any(len(r) != n for r in m):
                raise FamilyError(f"matrix {idx} is not {n}x{n}")
            if any(m[a][b] != m[b][a] for a in range(n) for b in range(a)):
                raise FamilyError(f"matrix {idx} is not symmetric")
        if self.check:
            if not 1 <= self.k <= n * (n + 1) // 2:
                raise FamilyError(f"k = {self.k} outside 1..{n * (n + 1) // 2}")
            if rank_of(self.flattening()) != self.k:
                raise FamilyError("basis matrices are linearly dependent")

    @property
    def k(self) -> int:
        return len(self.basis)

    def flattening(self) -> list[dict[int, Fraction]]:
        """Each basis matrix as a vector of its upper-triangular entries."""
        n = self.n
        idx = {(a, b): i for i, (a, b) in enumerate((a, b) for a in range(n) for b in range(a, n))}
        return [{idx[a, b]: m[a][b] for a in range(n) for b in range(a, n) if m[a][b]} for m in self.basis]

    @cached_property
    def pairing(self) -> tuple[tuple[tuple[tuple[int, Fraction], ...], ...], ...]:
        """pairing[a][b] = sparse linear form ((c, q^(c)_ab), ...)."""
        n = self.n
        return tuple(
            tuple(tuple((c, m[a][b]) for c, m in enumerate(self.basis) if m[a][b]) for b in range(n))
            for a in range(n)
        )

    @cached_property
    def coefficient_weights(self) -> tuple[tuple[int, ...], ...] | None:
        """Torus weight of each coefficient variable, or None when the basis is not torus-adapted.

        A basis matrix supported on a single symmetric pair {a, b} spans a weight
        line of Sym^2 V^dual, and the dual variable has weight e_a + e_b.
        """
        out = []
        for m in self.basis:
            support = {(min(a, b), max(a, b)) for a in range(self.n) for b in range(self.n) if m[a][b]}
            if len(support) != 1:
                return None
            a, b = support.pop()
            w = [0] * self.n
            w[a] += 1
            w[b] += 1
            out.append(tuple(w))
        return tuple(out)

    def with_basis_change(self, g: Sequence[Sequence[object]]) -> "QuadricFamily":
        """Same space U with basis q'_j = sum_i g[j][i] q_i (g invertible)."""
        n = self.n
        new = []
        for row in g:
            new.append(
                tuple(
                    tuple(sum(Fraction(c) * m[a][b] for c, m in zip(row, self.basis)) for b in range(n))
                    for a in range(n)
                )
            )
        return QuadricFamily(n, tuple(new), check=self.check)


def universal_family(n: int) -> QuadricFamily:
    """All quadrics: E_ii first, then E_ij + E_ji for i < j in lex order."""
    mats = []
    pairs = [(i, i) for i in range(n)] + [(i, j) for i in range(n) for j in range(i + 1, n)]
    for i, j in pairs:
        m = [[0] * n for _ in range(n)]
        m[i][j] = 1
        m[j][i] = 1
        mats.append(m)
    return QuadricFamily(n, tuple(mats))


def toric_quadrics(n: int) -> QuadricFamily:
    """The torus-invariant family spanned by the squares f_1^2, ..., f_n^2."""
    return QuadricFamily(n, tuple([[int(a == b == i) for b in range(n)] for a in range(n)] for i in range(n)))


def zero_family(n: int, k: int = 1) -> QuadricFamily:
    """All-zero forms; the Clifford product degenerates to the wedge product."""
    return QuadricFamily(n, tuple([[0] * n for _ in range(n)] for _ in range(k)), check=False)


def q_pair(f: QuadricFamily, a: int, b: int) -> tuple[Fraction, ...]:
    """Coordinates of q(e_a, e_b) in the basis of U^dual dual to the family basis (0-based a, b)."""
    return tuple(m[a][b] for m in f.basis)


# ---------------------------------------------------------------------------
# elements

Key = tuple  # (mask: int, exps: tuple[int, ...])


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _bits(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _bump(exps: tuple[int, ...], c: int) -> tuple[int, ...]:
    return exps[:c] + (exps[c] + 1,) + exps[c + 1:]


def _add_exps(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


def _accumulate(out: dict, key, coeff) -> None:
    v = out.get(key, 0) + coeff
    if v:
        out[key] = v
    else:
        out.pop(key, None)


def left_vector_action(f: QuadricFamily, a: int, terms: Mapping[Key, Fraction]) -> dict[Key, Fraction]:
    """e_a . x on raw term dictionaries."""
    out: dict[Key, Fraction] = {}
    bit = 1 << a
    pair = f.pairing[a]
    for (mask, exps), coeff in terms.items():
        if not mask & bit:
            below = _popcount(mask & (bit - 1))
            _accumulate(out, (mask | bit, exps), -coeff if below & 1 else coeff)
        for j, b in enumerate(_bits(mask)):
            form = pair[b]
            if not form:
                continue
            sign = -coeff if j & 1 else coeff
            rest = mask & ~(1 << b)
            for c, val in form:
                _accumulate(out, (rest, _bump(exps, c)), sign * val)
    return out


class CliffordElement:
    """A finite sum of terms coeff * e_S * y^e in the section algebra of a family."""

    __slots__ = ("family", "terms")

    def __init__(self, family: QuadricFamily, terms: Mapping[Key, object] | None = None):
        self.family = family
        store = {}
        for (mask, exps), v in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != family.k or mask >> family.n:
                raise FamilyError(f"term {(mask, exps)} does not fit the family")
            v = Fraction(v)
            if v:
                _accumulate(store, (mask, exps), v)
        self.terms = store

    @classmethod
    def one(cls, f: QuadricFamily) -> "CliffordElement":
        return cls(f, {(0, (0,) * f.k): 1})

    @classmethod
    def vector(cls, f: QuadricFamily, coords: int | Mapping[int, object] | Sequence[object]) -> "CliffordElement":
        """A degree-one element: a basis index, or coordinates on e_0..e_{n-1}."""
        if isinstance(coords, int):
            coords = {coords: 1}
        elif not isinstance(coords, Mapping):
            coords = dict(enumerate(coords))
        return cls(f, {(1 << a, (0,) * f.k): c for a, c in coords.items()})

    @classmethod
    def blade(cls, f: QuadricFamily, subset: Iterable[int], exps: Sequence[int] | None = None) -> "CliffordElement":
        mask = 0
        for a in subset:
            mask |= 1 << a
        return cls(f, {(mask, tuple(exps) if exps else (0,) * f.k): 1})

    @classmethod
    def _raw(cls, f, terms) -> "CliffordElement":
        obj = cls.__new__(cls)
        obj.family = f
        obj.terms = terms
        return obj

    def degrees(self) -> set[int]:
        return {_popcount(m) + 2 * sum(e) for m, e in self.terms}

    @property
    def degree(self) -> int:
        degs = self.degrees()
        if len(degs) != 1:
            raise FamilyError(f"element is not homogeneous (degrees {sorted(degs)})")
        return degs.pop()

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CliffordElement.one(self.family) * other
        if not isinstance(other, CliffordElement):
            return NotImplemented
        return self.family == other.family and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (mask, exps), c in sorted(self.terms.items(), key=lambda kv: (kv[0][0], kv[0][1])):
            wedge = "^".join(f"v{a + 1}" for a in _bits(mask)) or "1"
            coef = "*".join(f"y{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(exps) if e)
            parts.append(f"{c}*{wedge}" + (f"*{coef}" if coef else ""))
        return " + ".join(parts)

    def _same(self, other: "CliffordElement") -> None:
        if self.family != other.family:
            raise FamilyError("elements belong to different quadric families")

    def __add__(self, other: "CliffordElement") -> "CliffordElement":
        self._same(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            _accumulate(out, k, v)
        return CliffordElement._raw(self.family, out)

    def __neg__(self):
        return CliffordElement._raw(self.family, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, CliffordElement):
            return clifford_mul(self, other)
        c = Fraction(other)
        if not c:
            return CliffordElement._raw(self.family, {})
        return CliffordElement._raw(self.family, {k: c * v for k, v in self.terms.items()})

    def __rmul__(self, other):
        return self * other


def clifford_mul(x: CliffordElement, y: CliffordElement) -> CliffordElement:
    x._same(y)
    f = x.family
    memo: dict[int, dict[Key, Fraction]] = {0: dict(y.terms)}

    def blade_times_y(mask: int) -> dict[Key, Fraction]:
        # e_S . y = e_s (e_S' . y) - sum_j (-1)^j q(e_s, e_{S'_j}) e_{S' - S'_j} . y
        hit = memo.get(mask)
        if hit is not None:
            return hit
        bits = _bits(mask)
        s = bits[0]
        rest = mask & ~(1 << s)
        out = left_vector_action(f, s, blade_times_y(rest))
        for j, b in enumerate(bits[1:]):
            form = f.pairing[s][b]
            if not form:
                continue
            sub = blade_times_y(rest & ~(1 << b))
            sign = 1 if j & 1 else -1
            for c, val in form:
                for (m2, e2), v in sub.items():
                    _accumulate(out, (m2, _bump(e2, c)), sign * val * v)
        memo[mask] = out
        return out

    out: dict[Key, Fraction] = {}
    for (mask, exps), c in x.terms.items():
        for (m2, e2), v in blade_times_y(mask).items():
            _accumulate(out, (m2, _add_exps(exps, e2)), c * v)
    return CliffordElement._raw(f, out)


# ---------------------------------------------------------------------------
# graded components


def exponent_vectors(k: int, s: int) -> list[tuple[int, ...]]:
    """Exponent vectors of degree s in k variables, descending lex (graded-lex within the degree)."""
    if k == 0:
        return [()] if s == 0 else []
    out = []
    for first in range(s, -1, -1):
        for rest in exponent_vectors(k - 1, s - first):
            out.append((first,) + rest)
    return out


def section_basis(f: QuadricFamily, i: int) -> list[Key]:
    """Basis of H^0(B_i): coefficient degree s ascending, then exponents, then subsets lex."""
    if i < 0:
        return []
    out = []
    for s in range(i // 2 + 1):
        w = i - 2 * s
        if w > f.n:
            continue
        masks = [sum(1 << a for a in sub) for sub in combinations(range(f.n), w)]
        for exps in exponent_vectors(f.k, s):
            for mask in masks:
                out.append((mask, exps))
    return out


def section_weight(f: QuadricFamily, key: Key) -> tuple[int, ...] | None:
    cw = f.coefficient_weights
    if cw is None:
        return None
    mask, exps = key
    w = [0] * f.n
    for a in _bits(mask):
        w[a] += 1
    for c, e in enumerate(exps):
        if e:
            for t in range(f.n):
                w[t] += e * cw[c][t]
    return tuple(w)


@dataclass(frozen=True)
class GradedComponentIndex:
    i: int
    s: int

    def __post_init__(self):
        if self.i - 2 * self.s < 0:
            raise ValueError("need i - 2s >= 0")


def section_dim(f: QuadricFamily, i: int, p: int) -> int:
    """dim H^p(P(U), B_i) for a family with k = dim U."""
    n, k = f.n, f.k
    if p == 0 and i >= 0:
        return sum(comb(n, i - 2 * s) * comb(k + s - 1, s) for s in range(i // 2 + 1) if 0 <= i - 2 * s <= n)
    if p == k and i <= n - 2 * k:
        total = 0
        s = 0
        while i + 2 * k + 2 * s <= n:
            if i + 2 * k + 2 * s >= 0:
                total += comb(n, i + 2 * k + 2 * s) * comb(k + s - 1, s)
            s += 1
        return total
    return 0


def cohomology(f: QuadricFamily, i: int) -> dict[int, int]:
    """Nonzero cohomology dimensions {p: dim H^p(B_i)}."""
    out = {}
    for p in {0, f.k}:
        d = section_dim(f, i, p)
        if d:
            out[p] = d
    return out


def ext_table(f: QuadricFamily, lo: int, hi: int) -> dict[tuple[int, int], dict[int, int]]:
    """Ext^p(B_i, B_j) = H^p(B_{j-i}) for lo <= i, j <= hi."""
    return {(i, j): cohomology(f, j - i) for i in range(lo, hi + 1) for j in range(lo, hi + 1)}


def words(n: int, d: int) -> list[tuple[int, ...]]:
    """All words of length d over range(n), lex order (word index = base-n value)."""
    return list(product(range(n), repeat=d))


def word_images(f: QuadricFamily, d: int) -> list[dict[Key, Fraction]]:
    """Clifford products e_{a_1} ... e_{a_d} for every word, in lex order."""
    level = [CliffordElement.one(f).terms]
    for _ in range(d):
        # prepend a letter: index(a + w) = a * n^len(w) + index(w)
        level = [left_vector_action(f, a, t) for a in range(f.n) for t in level]
    return level


def multiplication_matrix(f: QuadricFamily, d: int) -> SparseMatrix:
    """V^{tensor d} -> B_d on the section basis; column j is the product over word j."""
    rows = {key: r for r, key in enumerate(section_basis(f, d))}
    cols = [{rows[k]: v for k, v in img.items()} for img in word_images(f, d)]
    return SparseMatrix.from_columns(cols, len(rows))


def section_table(f: QuadricFamily, cap: int):
    """The section algebra through degree ``cap`` as a GradedAlgebraTable on the section bases."""
    from .quadalg import GradedAlgebraTable

    bases = [section_basis(f, d) for d in range(cap + 1)]
    index = [{key: i for i, key in enumerate(b)} for b in bases]
    gens = [CliffordElement.vector(f, a) for a in range(f.n)]
    right_mult = []
    for d in range(cap):
        rows = []
        for key in bases[d]:
            x = CliffordElement._raw(f, {key: Fraction(1)})
            rows.append([{index[d + 1][k]: v for k, v in clifford_mul(x, g).terms.items()} for g in gens])
        right_mult.append(rows)
    weights = None
    gen_weights = None
    if f.coefficient_weights is not None:
        weights = [[section_weight(f, key) for key in b] for b in bases]
        gen_weights = [tuple(int(t == a) for t in range(f.n)) for a in range(f.n)]

    def mul(d1, i, d2, j):
        x = CliffordElement._raw(f, {bases[d1][i]: Fraction(1)})
        y = CliffordElement._raw(f, {bases[d2][j]: Fraction(1)})
        return {index[d1 + d2][k]: v for k, v in clifford_mul(x, y).terms.items()}

    return GradedAlgebraTable(
        f.n, [len(b) for b in bases], right_mult, weights, gen_weights, mul=mul, labels=bases
    )
