"""Graded algebras generated in degree one: quotients of the tensor algebra,
Hilbert series, minimal relations, quadratic duals and numerical Koszul /
Frobenius certificates.

Words of length d over range(n) index the coordinates of V^{tensor d}; the
index of a word is its base-n value, so coordinates follow lex order.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb
from typing import Callable, Iterable, Mapping, Sequence

from .exactla import (
    SparseMatrix,
    Subspace,
    annihilator,
    clean,
    rank_of,
    rref,
)
from .partitions import SchurMultiset, SymmetricPolynomial, decompose_character


class GenerationError(RuntimeError):
    def __init__(self, degree: int, rank: int, dim: int):
        super().__init__(f"not generated in degree one: V^{degree} -> A_{degree} has rank {rank} < {dim}")
        self.degree = degree


class NotFrobeniusShaped(ValueError):
    pass


Weight = tuple  # tuple[int, ...]


def word_index(word: Sequence[int], n: int) -> int:
    idx = 0
    for a in word:
        idx = idx * n + a
    return idx


def index_word(idx: int, n: int, d: int) -> tuple[int, ...]:
    out = []
    for _ in range(d):
        idx, a = divmod(idx, n)
        out.append(a)
    return tuple(reversed(out))


def _add_w(a: Weight, b: Weight) -> Weight:
    return tuple(x + y for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# Hilbert series


@dataclass(frozen=True)
class HilbertSeries:
    coefficients: tuple[int, ...]

    @property
    def cap(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, i: int) -> int:
        return self.coefficients[i] if 0 <= i < len(self.coefficients) else 0

    def __mul__(self, other: "HilbertSeries") -> "HilbertSeries":
        cap = min(self.cap, other.cap)
        return HilbertSeries(tuple(sum(self[j] * other[i - j] for j in range(i + 1)) for i in range(cap + 1)))

    def at_minus_z(self) -> "HilbertSeries":
        return HilbertSeries(tuple(c if i % 2 == 0 else -c for i, c in enumerate(self.coefficients)))

    def truncate(self, cap: int) -> "HilbertSeries":
        return HilbertSeries(tuple(self[i] for i in range(cap + 1)))

    def is_one(self) -> bool:
        return self.coefficients[0] == 1 and not any(self.coefficients[1:])

    @classmethod
    def of(cls, coefficients: Iterable[int], cap: int | None = None) -> "HilbertSeries":
        c = tuple(coefficients)
        if cap is not None:
            c = tuple(c[i] if i < len(c) else 0 for i in range(cap + 1))
        return cls(c)

    @classmethod
    def polynomial_ring(cls, n: int, cap: int) -> "HilbertSeries":
        """(1 - z)^(-n) truncated."""
        return cls(tuple(comb(n + i - 1, i) for i in range(cap + 1)))

    @classmethod
    def exterior(cls, n: int, cap: int) -> "HilbertSeries":
        """(1 + z)^n truncated."""
        return cls(tuple(comb(n, i) for i in range(cap + 1)))


def koszul_series_check(a: HilbertSeries, b: HilbertSeries) -> bool:
    """a(z) * b(-z) == 1 through the common cap."""
    if a.cap != b.cap:
        raise ValueError(f"caps differ: {a.cap} vs {b.cap}")
    return (a * b.at_minus_z()).is_one()


# ---------------------------------------------------------------------------
# presentations


@dataclass(frozen=True)
class AlgebraPresentation:
    """T(V) modulo the two-sided ideal generated by relation subspaces R_d of V^{tensor d}."""

    ngen: int
    relations: tuple[tuple[int, Subspace], ...]
    weights: tuple[Weight, ...] | None = None

    def __post_init__(self):
        rels = tuple((int(d), R) for d, R in self.relations)
        object.__setattr__(self, "relations", rels)
        for d, R in rels:
            if d < 2:
                raise ValueError("relations must have degree >= 2")
            if R.ambient_dim != self.ngen**d:
                raise ValueError(f"relation subspace of degree {d} has ambient {R.ambient_dim}, expected {self.ngen ** d}")
        if self.weights is not None and len(self.weights) != self.ngen:
            raise ValueError("one weight per generator required")


def ideal_component(p: AlgebraPresentation, d: int) -> Subspace:
    """Span of V^a (x) R_e (x) V^b, a + e + b = d, inside V^{tensor d}."""
    n = p.ngen
    vectors = []
    for e, R in p.relations:
        if e > d:
            continue
        for a in range(d - e + 1):
            b = d - e - a
            for left in range(n**a):
                for right in range(n**b):
                    for r in R.basis:
                        vectors.append({(left * n**e + w) * n**b + right: c for w, c in r.items()})
    return Subspace(n**d, vectors)


def ambient_component_dim(p: AlgebraPresentation, d: int) -> int:
    return p.ngen**d - ideal_component(p, d).dim


class GradedAlgebraTable:
    """A graded algebra generated by A_1 = V, known through degree ``cap``.

    ``right_mult[d][b][a]`` is the vector (dict index -> Fraction) of
    basis element b of A_d times generator a, in A_{d+1}.  ``weights[d]``
    holds the torus weight of every basis element when a torus acts.
    """

    def __init__(
        self,
        ngen: int,
        dims: Sequence[int],
        right_mult: Sequence[Sequence[Sequence[dict]]],
        weights: Sequence[Sequence[Weight]] | None = None,
        gen_weights: Sequence[Weight] | None = None,
        mul: Callable[[int, int, int, int], dict] | None = None,
        labels: Sequence[Sequence[object]] | None = None,
    ):
        self.ngen = ngen
        self.dims = tuple(dims)
        self.right_mult = right_mult
        self.weights = weights
        self.gen_weights = tuple(gen_weights) if gen_weights is not None else None
        self._mul = mul
        self.labels = labels

    @property
    def cap(self) -> int:
        return len(self.dims) - 1

    def hilbert(self) -> HilbertSeries:
        return HilbertSeries(self.dims)

    def times_letter(self, d: int, vec: Mapping[int, Fraction], a: int) -> dict:
        out: dict[int, Fraction] = {}
        table = self.right_mult[d]
        for b, c in vec.items():
            for k, v in table[b][a].items():
                out[k] = out.get(k, 0) + c * v
        return clean(out)

    def word_image(self, word: Sequence[int]) -> dict:
        vec = {0: Fraction(1)}
        for d, a in enumerate(word):
            vec = self.times_letter(d, vec, a)
        return vec

    def word_images(self, d: int) -> list[dict]:
        level = [{0: Fraction(1)}]
        for t in range(d):
            level = [self.times_letter(t, v, a) for v in level for a in range(self.ngen)]
        return level

    def word_matrix(self, d: int) -> SparseMatrix:
        return SparseMatrix.from_columns(self.word_images(d), self.dims[d])

    def word_weight(self, word: Sequence[int]) -> Weight | None:
        if self.gen_weights is None:
            return None
        w = (0,) * len(self.gen_weights[0])
        for a in word:
            w = _add_w(w, self.gen_weights[a])
        return w

    def multiply(self, d1: int, i: int, d2: int, j: int) -> dict:
        """Product of basis element i of A_{d1} with basis element j of A_{d2}."""
        if self._mul is None:
            raise NotImplementedError("table has no general product")
        return self._mul(d1, i, d2, j)

    def character(self, d: int) -> SymmetricPolynomial | None:
        if self.weights is None:
            return None
        return SymmetricPolynomial.from_weights(len(self.gen_weights[0]), self.weights[d])


def _weight_blocks(vectors: Iterable[dict], weight_of: Callable[[int], Weight] | None) -> list[list[dict]]:
    vectors = [v for v in vectors if v]
    if weight_of is None:
        return [vectors]
    blocks: dict[Weight, list[dict]] = defaultdict(list)
    for v in vectors:
        ws = {weight_of(k) for k in v}
        if len(ws) != 1:
            # inhomogeneous input: no splitting
            return [vectors]
        blocks[ws.pop()].append(v)
    return list(blocks.values())


def quotient_table(p: AlgebraPresentation, cap: int) -> GradedAlgebraTable:
    """Graded components of T(V)/<R> through degree ``cap``.

    A_d = (A_{d-1} (x) V) / image of A_{d-e} (x) R_e.  The basis of A_d is the
    lex-first set of words complementary to the relations (pivots are taken on
    the lex-last coordinates).
    """
    n = p.ngen
    gw = p.weights
    labels: list[list[tuple[int, ...]]] = [[()]]
    weights: list[list[Weight]] | None = [[(0,) * len(gw[0])]] if gw else None
    right_mult: list[list[list[dict]]] = []
    rels = [(e, R) for e, R in p.relations if R.dim]

    table = GradedAlgebraTable(n, [1], right_mult, weights, gw, labels=labels)

    for d in range(1, cap + 1):
        prev = len(labels[d - 1])
        size = prev * n

        def coord_weight(c, _d=d):
            b, a = divmod(c, n)
            return _add_w(weights[_d - 1][b], gw[a])

        spanning = []
        for e, R in rels:
            if e > d:
                continue
            for b0 in range(len(labels[d - e])):
                for r in R.basis:
                    vec: dict[int, Fraction] = {}
                    for w, c in r.items():
                        word = index_word(w, n, e)
                        x = {b0: Fraction(1)}
                        for t, letter in enumerate(word[:-1]):
                            x = table.times_letter(d - e + t, x, letter)
                        for b, v in x.items():
                            k = b * n + word[-1]
                            vec[k] = vec.get(k, 0) + c * v
                    spanning.append(clean(vec))

        # pivots on the largest coordinates: eliminate in reversed coordinates
        pivot_rows: dict[int, dict[int, Fraction]] = {}
        for block in _weight_blocks(spanning, coord_weight if gw else None):
            for row in rref({size - 1 - k: v for k, v in vec.items()} for vec in block):
                orig = {size - 1 - k: v for k, v in row.items()}
                pivot_rows[max(orig)] = orig
        basis_coords = [c for c in range(size) if c not in pivot_rows]
        new_index = {c: i for i, c in enumerate(basis_coords)}

        mult_d: list[list[dict]] = []
        for b in range(prev):
            row = []
            for a in range(n):
                c = b * n + a
                if c in new_index:
                    row.append({new_index[c]: Fraction(1)})
                else:
                    rel = pivot_rows[c]
                    row.append({new_index[k]: -v for k, v in rel.items() if k != c})
            mult_d.append(row)
        right_mult.append(mult_d)
        labels.append([labels[d - 1][c // n] + (c % n,) for c in basis_coords])
        if weights is not None:
            weights.append([coord_weight(c) for c in basis_coords])
        table.dims = table.dims + (len(basis_coords),)

    def mul(d1, i, d2, j):
        vec = {i: Fraction(1)}
        for t, letter in enumerate(labels[d2][j]):
            vec = table.times_letter(d1 + t, vec, letter)
        return vec

    table._mul = mul
    return table


def component_dim(p: AlgebraPresentation, d: int) -> int:
    return quotient_table(p, d).dims[d]


def hilbert(p: AlgebraPresentation, cap: int) -> HilbertSeries:
    return quotient_table(p, cap).hilbert()


# ---------------------------------------------------------------------------
# relations of a table


def _kernel_vectors(columns: Sequence[dict], weight_of_col: Callable[[int], Weight] | None) -> list[dict]:
    """Kernel of the matrix with the given columns, computed per weight block."""
    if weight_of_col is None:
        groups = {None: list(range(len(columns)))}
    else:
        groups = defaultdict(list)
        for j in range(len(columns)):
            groups[weight_of_col(j)].append(j)
    out = []
    for cols in groups.values():
        rows: dict[int, dict[int, Fraction]] = defaultdict(dict)
        for local, j in enumerate(cols):
            for i, v in columns[j].items():
                rows[i][local] = v
        echelon = rref(rows.values())
        pivots = {min(r) for r in echelon}
        for f in range(len(cols)):
            if f in pivots:
                continue
            vec = {cols[f]: Fraction(1)}
            for r in echelon:
                x = r.get(f)
                if x:
                    vec[cols[min(r)]] = -x
            out.append(vec)
    return out


@dataclass
class RelationDegree:
    degree: int
    kernel: Subspace
    generated: Subspace
    new: Subspace
    kernel_character: SchurMultiset | None = None
    new_character: SchurMultiset | None = None
    overlap_character: SchurMultiset | None = None
    overlap_dim: int = 0

    @property
    def kernel_dim(self) -> int:
        return self.kernel.dim

    @property
    def new_dim(self) -> int:
        return self.new.dim


def _character_of(vectors: Iterable[dict], weight_of: Callable[[int], Weight], nvars: int) -> SchurMultiset:
    return decompose_character(SymmetricPolynomial.from_weights(nvars, (weight_of(min(v)) for v in vectors)))


def minimal_relations(t: GradedAlgebraTable, dmax: int) -> list[RelationDegree]:
    """Per degree d <= dmax: kernel K_d of V^d -> A_d and the new relations K_d / (V K_{d-1} + K_{d-1} V).

    ``overlap`` is (K_{d-1} (x) V) intersect (V (x) K_{d-1}), the first syzygies
    among relations from degree d-1, reported by dimension and character.
    """
    n = t.ngen
    out: list[RelationDegree] = []
    prev: Subspace | None = None
    for d in range(1, dmax + 1):
        cols = t.word_images(d)
        if t.gen_weights is not None:
            def wcol(j, _d=d):
                return t.word_weight(index_word(j, n, _d))
        else:
            wcol = None
        r = rank_of(cols) if wcol is None else sum(rank_of(b) for b in _group(cols, wcol))
        if r < t.dims[d]:
            raise GenerationError(d, r, t.dims[d])
        kernel = Subspace(n**d, _kernel_vectors(cols, wcol))
        right = []
        left = []
        if prev is not None:
            for k in prev.basis:
                for a in range(n):
                    right.append({w * n + a: v for w, v in k.items()})
                    left.append({a * n ** (d - 1) + w: v for w, v in k.items()})
        generated = Subspace(n**d, right + left)
        reduced = [v for v in (generated.reduce(k) for k in kernel.basis) if v]
        new = Subspace(n**d, reduced)
        rec = RelationDegree(d, kernel, generated, new)
        rs, ls = Subspace(n**d, right), Subspace(n**d, left)
        rec.overlap_dim = rs.dim + ls.dim - generated.dim
        if wcol is not None:
            nv = len(t.gen_weights[0])
            rec.kernel_character = _character_of(kernel.basis, wcol, nv)
            rec.new_character = _character_of(new.basis, wcol, nv)
            if prev is not None:
                chars = [
                    SymmetricPolynomial.from_weights(nv, (wcol(min(v)) for v in s.basis)) for s in (rs, ls, generated)
                ]
                rec.overlap_character = decompose_character(chars[0] + chars[1] - chars[2])
        out.append(rec)
        prev = kernel
    return out


def _group(cols: Sequence[dict], wcol: Callable[[int], Weight]) -> list[list[dict]]:
    groups: dict[Weight, list[int]] = defaultdict(list)
    for j in range(len(cols)):
        groups[wcol(j)].append(j)
    out = []
    for js in groups.values():
        rows: dict[int, dict[int, Fraction]] = defaultdict(dict)
        for local, j in enumerate(js):
            for i, v in cols[j].items():
                rows[i][local] = v
        out.append(list(rows.values()))
    return out


def presentation_of_table(t: GradedAlgebraTable, relations: Sequence[RelationDegree]) -> AlgebraPresentation:
    """T(V)/<new relations> for the relation data of a table."""
    rels = tuple((r.degree, r.new) for r in relations if r.new.dim)
    return AlgebraPresentation(t.ngen, rels, t.gen_weights)


# ---------------------------------------------------------------------------
# duality and Frobenius


def quadratic_dual(R: Subspace, n: int) -> Subspace:
    """R^perp in V^dual (x) V^dual under the coordinate pairing of words."""
    if R.ambient_dim != n * n:
        raise ValueError(f"quadratic relations need ambient {n * n}, got {R.ambient_dim}")
    return annihilator(R)


def dual_presentation(p: AlgebraPresentation) -> AlgebraPresentation:
    """A^! = T(V^dual)/<R^perp> for a quadratic presentation; weights are negated."""
    quad = [R for d, R in p.relations if d == 2]
    if len(quad) != len(p.relations):
        raise ValueError("quadratic dual needs a quadratic presentation")
    R = quad[0] if quad else Subspace.zero(p.ngen**2)
    w = tuple(tuple(-x for x in g) for g in p.weights) if p.weights else None
    return AlgebraPresentation(p.ngen, ((2, quadratic_dual(R, p.ngen)),), w)


def frobenius_check(t: GradedAlgebraTable, topdeg: int) -> bool:
    """Perfect pairing A_i x A_{top-i} -> A_top for every i."""
    if topdeg > t.cap or t.dims[topdeg] != 1 or any(t.dims[topdeg + 1:]):
        raise NotFrobeniusShaped(f"dims {t.dims} do not end in a one-dimensional top degree {topdeg}")
    for i in range(topdeg + 1):
        j = topdeg - i
        if t.dims[i] != t.dims[j]:
            return False
        rows = []
        for x in range(t.dims[i]):
            rows.append({y: t.multiply(i, x, j, y).get(0, Fraction(0)) for y in range(t.dims[j])})
        if rank_of(rows) != t.dims[i]:
            return False
    return True


def subspace_from_words(n: int, d: int, vectors: Iterable[Mapping[Sequence[int], object]]) -> Subspace:
    """Subspace of V^{tensor d} from vectors keyed by words."""
    return Subspace(n**d, ({word_index(w, n): Fraction(c) for w, c in v.items()} for v in vectors))


def all_words(n: int, d: int) -> list[tuple[int, ...]]:
    return list(product(range(n), repeat=d))
