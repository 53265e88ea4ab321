"""Young diagrams, Schur polynomials and character decomposition.

GL_n-representations are handled through their torus characters: symmetric
polynomials in n variables, stored in the monomial symmetric basis (one
coefficient per weakly decreasing exponent vector).
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, permutations
from math import prod
from typing import Iterable, Mapping


class InvalidInput(ValueError):
    pass


class YoungDiagram(tuple):
    """A partition: weakly decreasing positive row lengths."""

    def __new__(cls, rows: Iterable[int] = ()):
        rows = tuple(int(r) for r in rows)
        while rows and rows[-1] == 0:
            rows = rows[:-1]
        if any(r <= 0 for r in rows) or any(a < b for a, b in zip(rows, rows[1:])):
            raise InvalidInput(f"not a Young diagram: {rows}")
        return super().__new__(cls, rows)

    def __repr__(self):
        return f"YoungDiagram{tuple(self)}"

    @property
    def size(self) -> int:
        return sum(self)

    def padded(self, n: int) -> tuple[int, ...]:
        return tuple(self) + (0,) * (n - len(self))


def _yd(a) -> YoungDiagram:
    return a if isinstance(a, YoungDiagram) else YoungDiagram(a)


def partitions_of(i: int, max_rows: int | None = None, max_part: int | None = None) -> list[YoungDiagram]:
    """Partitions of ``i`` in descending lexicographic order."""
    max_part = i if max_part is None else max_part
    max_rows = i if max_rows is None else max_rows
    out: list[YoungDiagram] = []

    def rec(rest, cap, acc):
        if rest == 0:
            out.append(YoungDiagram(acc))
            return
        if len(acc) == max_rows:
            return
        for part in range(min(rest, cap), 0, -1):
            rec(rest - part, part, acc + [part])

    rec(i, max_part, [])
    return out


def enumerate_diagrams(n: int, i: int) -> list[YoungDiagram]:
    """All diagrams with ``i`` boxes and at most ``n`` rows."""
    if n < 1 or i < 0:
        raise InvalidInput("need n >= 1 and i >= 0")
    return partitions_of(i, max_rows=n)


def transpose(alpha) -> YoungDiagram:
    alpha = _yd(alpha)
    if not alpha:
        return alpha
    return YoungDiagram(sum(1 for r in alpha if r > c) for c in range(alpha[0]))


def diag_length(alpha) -> int:
    return sum(1 for t, r in enumerate(_yd(alpha), start=1) if r >= t)


def is_symmetric(alpha) -> bool:
    alpha = _yd(alpha)
    return transpose(alpha) == alpha


def enumerate_symmetric_diagrams(n: int) -> list[YoungDiagram]:
    """Symmetric diagrams inside the n x n box, ordered by size then descending lex."""
    if n < 1:
        raise InvalidInput("need n >= 1")
    out = []
    for i in range(n * n + 1):
        for a in partitions_of(i, max_rows=n, max_part=n):
            if is_symmetric(a):
                out.append(a)
    return out


def hooks(alpha) -> list[YoungDiagram]:
    """The diagonal hooks of a symmetric diagram, outermost first."""
    alpha = _yd(alpha)
    if not is_symmetric(alpha):
        raise InvalidInput(f"hooks() needs a symmetric diagram, got {tuple(alpha)}")
    out = []
    for i in range(1, diag_length(alpha) + 1):
        arm = alpha[i - 1] - i
        out.append(YoungDiagram((arm + 1,) + (1,) * arm))
    return out


def halving_bijection(alpha) -> tuple[YoungDiagram, int]:
    """alpha -> (beta, p) with beta_t = floor(alpha_t / 2) and p = |alpha| - 2|beta|."""
    alpha = _yd(alpha)
    beta = YoungDiagram(r // 2 for r in alpha)
    return beta, alpha.size - 2 * beta.size


def double(beta) -> YoungDiagram:
    return YoungDiagram(2 * r for r in _yd(beta))


def schur_dim(alpha, n: int) -> int:
    """dim of the Schur functor applied to k^n (Weyl dimension formula)."""
    alpha = _yd(alpha)
    if len(alpha) > n:
        return 0
    lam = alpha.padded(n)
    num = prod(lam[i] - lam[j] + j - i for i in range(n) for j in range(i + 1, n))
    den = prod(j - i for i in range(n) for j in range(i + 1, n))
    return num // den


# ---------------------------------------------------------------------------
# symmetric polynomials


def _orbit(mu: tuple[int, ...]) -> set[tuple[int, ...]]:
    return set(permutations(mu))


def _dominant(expo: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(expo, reverse=True))


class SymmetricPolynomial:
    """Symmetric polynomial in ``nvars`` variables in the monomial symmetric basis."""

    __slots__ = ("nvars", "terms", "degree_cap")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], int] | None = None, degree_cap: int | None = None):
        self.nvars = nvars
        self.degree_cap = degree_cap
        store: dict[tuple[int, ...], int] = {}
        for mu, c in (terms or {}).items():
            mu = tuple(mu)
            if len(mu) != nvars:
                raise InvalidInput(f"exponent vector {mu} has wrong length for {nvars} variables")
            if list(mu) != sorted(mu, reverse=True):
                raise InvalidInput(f"exponent vector {mu} is not an orbit representative")
            if degree_cap is not None and sum(mu) > degree_cap:
                continue
            if c:
                store[mu] = store.get(mu, 0) + c
        self.terms = {k: v for k, v in store.items() if v}

    @classmethod
    def from_monomials(cls, nvars: int, monomials: Mapping[tuple[int, ...], int], degree_cap: int | None = None):
        """Build from a full monomial expansion, checking permutation invariance."""
        mono = {tuple(k): v for k, v in monomials.items() if v}
        reps: dict[tuple[int, ...], int] = {}
        for expo, c in mono.items():
            for other in _orbit(expo):
                if mono.get(other, 0) != c:
                    raise InvalidInput(f"polynomial is not symmetric: x^{expo} vs x^{other}")
            reps[_dominant(expo)] = c
        return cls(nvars, reps, degree_cap)

    @classmethod
    def monomial(cls, nvars: int, weight: Iterable[int]) -> "SymmetricPolynomial":
        """The orbit sum m_mu of one exponent vector."""
        return cls(nvars, {_dominant(weight): 1})

    @classmethod
    def from_weights(cls, nvars: int, weights: Iterable[Iterable[int]]) -> "SymmetricPolynomial":
        """Character of a space with the given multiset of torus weights."""
        return cls.from_monomials(nvars, Counter(tuple(w) for w in weights))

    def __eq__(self, other):
        if not isinstance(other, SymmetricPolynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __repr__(self):
        return f"SymmetricPolynomial({self.nvars}, {self.terms})"

    def __add__(self, other: "SymmetricPolynomial") -> "SymmetricPolynomial":
        acc = Counter(self.terms)
        acc.update(other.terms)
        return SymmetricPolynomial(self.nvars, acc, _cap(self, other))

    def __neg__(self):
        return SymmetricPolynomial(self.nvars, {k: -v for k, v in self.terms.items()}, self.degree_cap)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: int) -> "SymmetricPolynomial":
        return SymmetricPolynomial(self.nvars, {k: c * v for k, v in self.terms.items()}, self.degree_cap)

    def __mul__(self, other: "SymmetricPolynomial") -> "SymmetricPolynomial":
        if isinstance(other, int):
            return self.scale(other)
        if self.nvars != other.nvars:
            raise InvalidInput("variable counts differ")
        cap = _cap(self, other)
        # coefficient of x^nu (nu dominant) = sum over b in orbits of other of self[sort(nu - b)]
        other_monos = [(b, c) for mu, c in other.terms.items() for b in _orbit(mu)]
        candidates = {_dominant(a + b for a, b in zip(lam, mb)) for lam in self.terms for mb, _ in other_monos}
        out = {}
        for nu in candidates:
            if cap is not None and sum(nu) > cap:
                continue
            total = 0
            for b, c in other_monos:
                diff = tuple(x - y for x, y in zip(nu, b))
                if min(diff) < 0:
                    continue
                total += c * self.terms.get(_dominant(diff), 0)
            if total:
                out[nu] = total
        return SymmetricPolynomial(self.nvars, out, cap)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "SymmetricPolynomial":
        out = SymmetricPolynomial(self.nvars, {(0,) * self.nvars: 1}, self.degree_cap)
        for _ in range(k):
            out = out * self
        return out

    def coefficient(self, expo: Iterable[int]) -> int:
        return self.terms.get(_dominant(expo), 0)

    def evaluate_at_ones(self) -> int:
        """Value at x = (1, ..., 1), i.e. the dimension of the represented space."""
        return sum(c * len(_orbit(mu)) for mu, c in self.terms.items())

    def monomials(self) -> dict[tuple[int, ...], int]:
        return {b: c for mu, c in self.terms.items() for b in _orbit(mu)}


def _cap(a: SymmetricPolynomial, b: SymmetricPolynomial):
    caps = [c for c in (a.degree_cap, b.degree_cap) if c is not None]
    return min(caps) if caps else None


@lru_cache(maxsize=None)
def _kostka(lam: tuple[int, ...], content: tuple[int, ...]) -> int:
    """Number of semistandard tableaux of shape lam with the given content."""
    if not content:
        return 1 if not any(lam) else 0
    last = content[-1]
    total = 0
    # remove a horizontal strip of size ``last``: mu interlaces lam
    n = len(lam)

    def rec(i, acc, removed):
        nonlocal total
        if i == n:
            if removed == last:
                total += _kostka(tuple(acc), content[:-1])
            return
        lower = lam[i + 1] if i + 1 < n else 0
        for m in range(lam[i], lower - 1, -1):
            r = removed + lam[i] - m
            if r > last:
                break
            rec(i + 1, acc + [m], r)

    rec(0, [], 0)
    return total


def schur_polynomial(alpha, n: int, cap: int | None = None) -> SymmetricPolynomial:
    """Schur polynomial s_alpha(x_1..x_n) via Kostka numbers."""
    alpha = _yd(alpha)
    if len(alpha) > n:
        return SymmetricPolynomial(n, {}, cap)
    lam = alpha.padded(n)
    terms = {}
    for mu in partitions_of(alpha.size, max_rows=n):
        k = _kostka(lam, mu.padded(n))
        if k:
            terms[mu.padded(n)] = k
    return SymmetricPolynomial(n, terms, cap)


class SchurMultiset(dict):
    """Map YoungDiagram -> nonzero integer multiplicity."""

    def __init__(self, data: Mapping | Iterable = ()):
        super().__init__()
        items = data.items() if isinstance(data, Mapping) else data
        for k, v in items:
            if v:
                k = _yd(k)
                self[k] = self.get(k, 0) + v
                if not self[k]:
                    del self[k]

    def total_dim(self, n: int) -> int:
        return sum(m * schur_dim(a, n) for a, m in self.items())

    def is_multiplicity_free(self) -> bool:
        return all(m == 1 for m in self.values())

    def character(self, n: int) -> SymmetricPolynomial:
        out = SymmetricPolynomial(n)
        for a, m in self.items():
            out = out + schur_polynomial(a, n).scale(m)
        return out

    def sorted_items(self) -> list[tuple[YoungDiagram, int]]:
        return sorted(self.items(), key=lambda kv: (kv[0].size, tuple(-r for r in kv[0])))

    def __repr__(self):
        return "SchurMultiset({" + ", ".join(f"{tuple(a)}: {m}" for a, m in self.sorted_items()) + "})"


def decompose_character(p: SymmetricPolynomial) -> SchurMultiset:
    """Expand ``p`` in Schur polynomials by peeling off dominance-maximal terms."""
    n = p.nvars
    rest = dict(p.terms)
    out: dict[YoungDiagram, int] = {}
    while rest:
        # the lex-largest exponent is maximal in dominance order
        top = max(rest)
        c = rest[top]
        alpha = YoungDiagram(top)
        out[alpha] = c
        for mu, k in schur_polynomial(alpha, n).terms.items():
            v = rest.get(mu, 0) - c * k
            if v:
                rest[mu] = v
            else:
                rest.pop(mu, None)
    return SchurMultiset(out)


def character_of_tensor_power(n: int, d: int) -> SymmetricPolynomial:
    return schur_polynomial((1,), n) ** d


def pieri(alpha, k: int, n: int) -> SchurMultiset:
    """alpha tensor Lambda^k: add a vertical strip of k boxes within n rows."""
    alpha = _yd(alpha)
    if len(alpha) > n:
        return SchurMultiset()
    lam = alpha.padded(n)
    out = SchurMultiset()
    for rows in combinations(range(n), k):
        new = list(lam)
        for r in rows:
            new[r] += 1
        if all(a >= b for a, b in zip(new, new[1:])):
            out[YoungDiagram(new)] = 1
    return out


def plethysm_sym_sym2(s: int, n: int) -> SchurMultiset:
    """Sym^s(Sym^2 V) = sum of Sigma^{2 beta} V over |beta| = s."""
    return SchurMultiset({double(b): 1 for b in enumerate_diagrams(n, s)})


def plethysm_sym_sym2_character(s: int, n: int) -> SymmetricPolynomial:
    """Character of Sym^s(Sym^2 V) by direct monomial substitution."""
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    mono: Counter = Counter()
    for choice in combinations_with_replacement(pairs, s):
        expo = [0] * n
        for i, j in choice:
            expo[i] += 1
            expo[j] += 1
        mono[tuple(expo)] += 1
    return SymmetricPolynomial.from_monomials(n, mono)


def elementary(n: int, k: int) -> SymmetricPolynomial:
    return SymmetricPolynomial(n, {(1,) * k + (0,) * (n - k): 1}) if 0 <= k <= n else SymmetricPolynomial(n)
