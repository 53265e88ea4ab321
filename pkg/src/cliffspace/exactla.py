"""Exact sparse linear algebra over the rationals.

Vectors are plain ``dict[int, Fraction]`` maps from coordinate index to a
nonzero entry.  Elimination runs on primitive integer rows (content divided
out after every step) and only normalizes to reduced echelon form with
``Fraction`` entries at the very end.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping

Rational = Fraction
Vector = dict  # dict[int, Fraction]


class DimensionMismatch(ValueError):
    pass


def _as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def clean(vec: Mapping[int, object]) -> Vector:
    """Copy of ``vec`` with Fraction entries and zeros dropped."""
    out = {}
    for k, v in vec.items():
        v = _as_fraction(v)
        if v:
            out[k] = v
    return out


class SparseMatrix:
    """Immutable sparse rational matrix."""

    __slots__ = ("rows", "cols", "_entries")

    def __init__(self, rows: int, cols: int, entries: Mapping[tuple[int, int], object] | None = None):
        self.rows = rows
        self.cols = cols
        store = {}
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError(f"entry ({i}, {j}) outside {rows}x{cols}")
            v = _as_fraction(v)
            if v:
                store[i, j] = v
        self._entries = store

    @classmethod
    def from_rows(cls, rows: Iterable[Mapping[int, object]], cols: int) -> "SparseMatrix":
        entries = {}
        nrows = 0
        for i, row in enumerate(rows):
            nrows = i + 1
            for j, v in row.items():
                entries[i, j] = v
        return cls(nrows, cols, entries)

    @classmethod
    def from_columns(cls, columns: Iterable[Mapping[int, object]], rows: int) -> "SparseMatrix":
        entries = {}
        ncols = 0
        for j, col in enumerate(columns):
            ncols = j + 1
            for i, v in col.items():
                entries[i, j] = v
        return cls(rows, ncols, entries)

    @classmethod
    def dense(cls, data: list[list[object]]) -> "SparseMatrix":
        cols = len(data[0]) if data else 0
        return cls(len(data), cols, {(i, j): v for i, r in enumerate(data) for j, v in enumerate(r)})

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @property
    def entries(self) -> dict[tuple[int, int], Fraction]:
        return dict(self._entries)

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        return self._entries.get(key, Fraction(0))

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (self.rows, self.cols, self._entries) == (other.rows, other.cols, other._entries)

    def __repr__(self):
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={len(self._entries)})"

    def nnz(self) -> int:
        return len(self._entries)

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self._entries.items()})

    def row_vectors(self) -> list[Vector]:
        out: list[Vector] = [{} for _ in range(self.rows)]
        for (i, j), v in self._entries.items():
            out[i][j] = v
        return out

    def column_vectors(self) -> list[Vector]:
        out: list[Vector] = [{} for _ in range(self.cols)]
        for (i, j), v in self._entries.items():
            out[j][i] = v
        return out

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        by_row = other.row_vectors()
        acc: dict[tuple[int, int], Fraction] = {}
        for (i, k), a in self._entries.items():
            for j, b in by_row[k].items():
                acc[i, j] = acc.get((i, j), 0) + a * b
        return SparseMatrix(self.rows, other.cols, acc)

    def apply(self, vec: Mapping[int, object]) -> Vector:
        """Matrix times a sparse column vector."""
        cols = self.column_vectors()
        out: dict[int, Fraction] = {}
        for j, x in vec.items():
            for i, a in cols[j].items():
                out[i] = out.get(i, 0) + a * x
        return clean(out)


# ---------------------------------------------------------------------------
# integer-row elimination


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g == 1:
        return row
    return {k: v // g for k, v in row.items()}


def _integer_row(vec: Mapping[int, object]) -> dict[int, int]:
    fr = clean(vec)
    if not fr:
        return {}
    den = 1
    for v in fr.values():
        den = lcm(den, v.denominator)
    return _primitive({k: int(v * den) for k, v in fr.items()})


def _combine(row: dict[int, int], piv: dict[int, int], col: int) -> dict[int, int]:
    """Eliminate ``col`` from ``row`` using ``piv`` (both integer rows)."""
    a, b = piv[col], row[col]
    g = gcd(a, b)
    a //= g
    b //= g
    out = {k: a * v for k, v in row.items()} if a != 1 else dict(row)
    for k, v in piv.items():
        nv = out.get(k, 0) - b * v
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
    return _primitive(out) if out else out


def _echelon_integer(vectors: Iterable[Mapping[int, object]]) -> dict[int, dict[int, int]]:
    rows = [r for r in (_integer_row(v) for v in vectors) if r]
    # smallest leading column first, then sparsest row
    rows.sort(key=lambda r: (min(r), len(r)))
    pivots: dict[int, dict[int, int]] = {}
    for row in rows:
        while row:
            c = min(row)
            p = pivots.get(c)
            if p is None:
                pivots[c] = row
                break
            row = _combine(row, p, c)
    return pivots


def _back_substitute(pivots: dict[int, dict[int, int]]) -> list[Vector]:
    cols = sorted(pivots)
    for idx in range(len(cols) - 1, -1, -1):
        c = cols[idx]
        p = pivots[c]
        for c2 in cols[:idx]:
            r = pivots[c2]
            if c in r:
                pivots[c2] = _combine(r, p, c)
    out = []
    for c in cols:
        r = pivots[c]
        lead = r[c]
        out.append({k: Fraction(v, lead) for k, v in sorted(r.items())})
    return out


def rref(vectors: Iterable[Mapping[int, object]]) -> list[Vector]:
    """Reduced echelon basis of the span of ``vectors``; pivots ascending, leading entries 1."""
    return _back_substitute(_echelon_integer(vectors))


def rank_of(vectors: Iterable[Mapping[int, object]]) -> int:
    return len(_echelon_integer(vectors))


def rank(m: SparseMatrix) -> int:
    # eliminate along the shorter side
    if m.rows <= m.cols:
        return rank_of(m.row_vectors())
    return rank_of(m.column_vectors())


# ---------------------------------------------------------------------------
# subspaces


class Subspace:
    """A subspace of Q^ambient_dim held by its reduced echelon basis."""

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim: int, vectors: Iterable[Mapping[int, object]] = (), *, _reduced: bool = False):
        self.ambient_dim = ambient_dim
        vecs = list(vectors)
        for v in vecs:
            for k in v:
                if not 0 <= k < ambient_dim:
                    raise DimensionMismatch(f"coordinate {k} outside ambient dimension {ambient_dim}")
        basis = vecs if _reduced else rref(vecs)
        self.basis: tuple[Vector, ...] = tuple(basis)
        self.pivots: tuple[int, ...] = tuple(min(v) for v in self.basis)

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, (), _reduced=True)

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ({i: Fraction(1)} for i in range(ambient_dim)), _reduced=True)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, tuple(tuple(sorted(v.items())) for v in self.basis)))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def reduce(self, vec: Mapping[int, object]) -> Vector:
        """Remainder of ``vec`` after clearing every pivot coordinate."""
        out = clean(vec)
        for p, b in zip(self.pivots, self.basis):
            c = out.get(p)
            if c:
                for k, v in b.items():
                    nv = out.get(k, 0) - c * v
                    if nv:
                        out[k] = nv
                    else:
                        out.pop(k, None)
        return out

    def __contains__(self, vec) -> bool:
        return not self.reduce(vec)

    def contains_subspace(self, other: "Subspace") -> bool:
        _check_ambient(self, other)
        return all(v in self for v in other.basis)


def _check_ambient(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(f"ambient dimensions differ: {a.ambient_dim} vs {b.ambient_dim}")


def span(ambient_dim: int, vectors: Iterable[Mapping[int, object]]) -> Subspace:
    return Subspace(ambient_dim, vectors)


def kernel_basis(m: SparseMatrix) -> Subspace:
    """Right kernel of ``m`` as a Subspace of Q^cols."""
    echelon = rref(m.row_vectors())
    pivot_set = {min(r) for r in echelon}
    vectors = []
    for f in range(m.cols):
        if f in pivot_set:
            continue
        vec = {f: Fraction(1)}
        for r in echelon:
            x = r.get(f)
            if x:
                vec[min(r)] = -x
        vectors.append(vec)
    return Subspace(m.cols, vectors)


def image_basis(m: SparseMatrix) -> Subspace:
    """Column space of ``m`` as a Subspace of Q^rows."""
    return Subspace(m.rows, m.column_vectors())


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_ambient(a, b)
    return Subspace(a.ambient_dim, a.basis + b.basis)


def annihilator(a: Subspace) -> Subspace:
    """Annihilator in the dual space, pairing by coordinate dot product."""
    return kernel_basis(SparseMatrix.from_rows(a.basis, a.ambient_dim))


def subspace_intersection(a: Subspace, b: Subspace) -> Subspace:
    _check_ambient(a, b)
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(a.ambient_dim)
    return annihilator(subspace_sum(annihilator(a), annihilator(b)))
