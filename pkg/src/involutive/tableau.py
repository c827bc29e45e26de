"""Tableaux of PDE symbols and their coordinate presentations.

A tableau is a subspace A of W (x) V*, held as a spanning set of r x n
matrices.  In a generic pair of bases its independent generators pack
into a staircase: the first s_1 entries of column 1, the first s_2 of
column 2, and so on, with every remaining entry a fixed linear
combination of the staircase entries.  Those combinations are the
symbol coefficients B^{a,lam}_{i,b}, stored sparsely and 1-indexed to
match the usual index conventions.

Flattening convention: an r x n matrix is flattened column-major, entry
(a, i) at position (i-1)*r + (a-1), so "the first k columns" is a
coordinate prefix.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .linalg import (
    RatMatrix,
    invert,
    kernel_basis,
    random_invertible_rng,
    random_unit_upper_triangular,
    rank,
    rref,
    vstack,
)


class TableauError(Exception):
    pass


class InvalidBasis(TableauError):
    pass


class NonGenericBasis(TableauError):
    pass


class NotInTableau(TableauError):
    pass


@dataclass(frozen=True)
class CartanCharacters:
    """Column-wise generator counts s_1 >= ... >= s_n >= 0."""

    s: tuple[int, ...]

    def __post_init__(self):
        if any(x < 0 for x in self.s):
            raise ValueError("characters must be non-negative")
        object.__setattr__(self, "s", tuple(int(x) for x in self.s))

    @property
    def n(self) -> int:
        return len(self.s)

    @property
    def ell(self) -> int:
        """Index of the last nonzero character (0 when all vanish)."""
        last = 0
        for i, x in enumerate(self.s, start=1):
            if x > 0:
                last = i
        return last

    @property
    def dim(self) -> int:
        return sum(self.s)

    @property
    def cartan_bound(self) -> int:
        return sum(i * x for i, x in enumerate(self.s, start=1))

    def is_weakly_decreasing(self) -> bool:
        return all(a >= b for a, b in zip(self.s, self.s[1:]))

    def require_staircase(self):
        if not self.is_weakly_decreasing():
            raise ValueError(f"characters {self.s} are not weakly decreasing")
        if self.ell and any(x > 0 for x in self.s[self.ell:]):
            raise ValueError("nonzero character after ell")


@dataclass(frozen=True)
class BasisPair:
    """Coordinate change on both sides of W (x) V*.

    An element with matrix pi in the original bases has matrix
    ``w_change @ pi @ v_change`` in the new ones.  A unit
    upper-triangular ``v_change`` is a Borel change of the V* flag.
    """

    w_change: RatMatrix
    v_change: RatMatrix

    def __post_init__(self):
        for m in (self.w_change, self.v_change):
            if m.rows != m.cols:
                raise InvalidBasis("basis change must be square")
            if rank(m) != m.rows:
                raise InvalidBasis("basis change must be invertible")

    @classmethod
    def identity(cls, r: int, n: int) -> "BasisPair":
        return cls(RatMatrix.identity(r), RatMatrix.identity(n))

    def apply(self, pi: RatMatrix) -> RatMatrix:
        return self.w_change @ pi @ self.v_change

    def then_w(self, p: RatMatrix) -> "BasisPair":
        return BasisPair(p @ self.w_change, self.v_change)

    def then_v(self, q: RatMatrix) -> "BasisPair":
        return BasisPair(self.w_change, self.v_change @ q)


@dataclass(frozen=True)
class SymbolPresentation:
    """Staircase presentation of a tableau in a fixed generic basis pair.

    ``coefficients`` maps (a, lam, i, b) -> value, all indices 1-based,
    with lam <= i, b <= s_lam and a > s_i.  Missing keys are zero.
    """

    r: int
    characters: CartanCharacters
    coefficients: dict = field(default_factory=dict)

    def __post_init__(self):
        chars = self.characters
        chars.require_staircase()
        if chars.s and chars.s[0] > self.r:
            raise ValueError("s_1 exceeds dim W")
        clean = {}
        s = chars.s
        for (a, lam, i, b), val in self.coefficients.items():
            val = Fraction(val)
            if val == 0:
                continue
            if not (1 <= lam <= i <= chars.n):
                raise ValueError(f"bad column indices (lam={lam}, i={i})")
            if not (1 <= b <= s[lam - 1]):
                raise ValueError(f"coefficient column b={b} > s_{lam}")
            if not (s[i - 1] < a <= self.r):
                raise ValueError(f"coefficient row a={a} not below s_{i}")
            clean[(a, lam, i, b)] = val
        object.__setattr__(self, "coefficients", clean)

    @property
    def n(self) -> int:
        return self.characters.n

    def coefficient(self, a: int, lam: int, i: int, b: int) -> Fraction:
        return self.coefficients.get((a, lam, i, b), Fraction(0))

    def generator_slots(self) -> list[tuple[int, int]]:
        """Staircase slots (lam, b) in column-then-row order."""
        return [(lam, b)
                for lam in range(1, self.n + 1)
                for b in range(1, self.characters.s[lam - 1] + 1)]

    def generator_matrix(self, lam: int, b: int) -> RatMatrix:
        """Spanning matrix for the generator z^b_lam (all other z zero)."""
        s = self.characters.s
        entries = [[Fraction(0)] * self.n for _ in range(self.r)]
        entries[b - 1][lam - 1] = Fraction(1)
        for i in range(lam, self.n + 1):
            for a in range(s[i - 1] + 1, self.r + 1):
                v = self.coefficient(a, lam, i, b)
                if v:
                    entries[a - 1][i - 1] = v
        return RatMatrix.from_rows(entries)

    def tableau(self) -> "Tableau":
        return tableau_from_coefficients(self)


class Tableau:
    """A subspace of W (x) V*, r x n matrices, held by a spanning set."""

    __slots__ = ("r", "n", "span")

    def __init__(self, r: int, n: int, span):
        span = tuple(span)
        for m in span:
            if m.rows != r or m.cols != n:
                raise ValueError(f"spanning matrix is {m.rows}x{m.cols}, "
                                 f"expected {r}x{n}")
        self.r = r
        self.n = n
        self.span = span

    def __setattr__(self, name, value):
        if hasattr(self, "span"):
            raise AttributeError("Tableau is immutable")
        super().__setattr__(name, value)

    def stacked(self, basis: Optional[BasisPair] = None) -> RatMatrix:
        """Spanning set as rows of flattened (column-major) vectors."""
        if not self.span:
            return RatMatrix.zeros(0, self.r * self.n)
        rows = []
        for m in self.span:
            if basis is not None:
                m = basis.apply(m)
            rows.append([m[a, i] for i in range(self.n) for a in range(self.r)])
        return RatMatrix.from_rows(rows)

    def basis_matrix(self, basis: Optional[BasisPair] = None) -> RatMatrix:
        """dim-A x (r n) matrix whose rows form a basis of the subspace."""
        m = self.stacked(basis)
        red, pivots = rref(m)
        return red.submatrix(range(len(pivots)), range(self.r * self.n))

    @property
    def dim(self) -> int:
        return rank(self.stacked())

    def contains(self, pi: RatMatrix) -> bool:
        flat = RatMatrix.from_rows(
            [[pi[a, i] for i in range(self.n) for a in range(self.r)]])
        m = self.stacked()
        return rank(vstack([m, flat])) == rank(m)

    @classmethod
    def full(cls, r: int, n: int) -> "Tableau":
        span = []
        for a in range(r):
            for i in range(n):
                e = RatMatrix.zeros(r, n).row_list()
                e[a][i] = Fraction(1)
                span.append(RatMatrix.from_rows(e))
        return cls(r, n, span)

    @classmethod
    def zero(cls, r: int, n: int) -> "Tableau":
        return cls(r, n, [])


def _prefix_counts(stacked: RatMatrix, r: int, n: int) -> tuple[int, ...]:
    """Rank increments over column prefixes: s_k = rk(<=k) - rk(<k)."""
    _, pivots = rref(stacked)
    counts = []
    for k in range(1, n + 1):
        counts.append(sum(1 for p in pivots if (k - 1) * r <= p < k * r))
    return tuple(counts)


def characters_in_basis(tab: Tableau, basis: BasisPair) -> CartanCharacters:
    """Characters read off column-prefix ranks in the transformed basis."""
    if basis.w_change.rows != tab.r or basis.v_change.rows != tab.n:
        raise InvalidBasis("basis pair has wrong dimensions")
    return CartanCharacters(_prefix_counts(tab.stacked(basis), tab.r, tab.n))


def _staircase_positions(s: tuple[int, ...], r: int,
                         upto: Optional[int] = None) -> list[int]:
    """Flat positions of staircase slots (b, lam) for lam <= upto."""
    n = len(s)
    if upto is None:
        upto = n
    return [(lam - 1) * r + (b - 1)
            for lam in range(1, upto + 1)
            for b in range(1, s[lam - 1] + 1)]


def _staircase_generic(basis_mat: RatMatrix, s: tuple[int, ...], r: int) -> bool:
    """True when the staircase projection is level-wise bijective.

    Requires, for each k, that the staircase slots of columns <= k span
    the projection of A onto the first k columns (generators packed to
    the top); this is what makes the symbol coefficients well-defined
    with the Fig-style triangular support.
    """
    n = len(s)
    total = 0
    for k in range(1, n + 1):
        total += s[k - 1]
        cols = _staircase_positions(s, r, k)
        sub = basis_mat.select_columns(list(range(0, k * r)))
        proj_rank = rank(sub)
        if proj_rank != total:
            return False
        if rank(basis_mat.select_columns(cols)) != total:
            return False
    return True


def find_generic_basis(tab: Tableau, seed: int = 0,
                       trials: int = 32) -> tuple[BasisPair, CartanCharacters]:
    """Probabilistic search for a generic basis pair.

    Candidates are the identity pair plus ``trials`` seeded random
    invertible pairs (integer entries in [-9, 9]).  The returned pair
    is the first achieving the lexicographically maximal character
    sequence; among those, one passing the staircase-genericity rank
    checks is preferred.  Deterministic per seed.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)
    candidates = [BasisPair.identity(tab.r, tab.n)]
    for _ in range(trials):
        p = random_invertible_rng(tab.r, rng)
        q = random_invertible_rng(tab.n, rng)
        candidates.append(BasisPair(p, q))

    best: Optional[tuple] = None   # (chars, staircase_ok, basis)
    for bp in candidates:
        stacked = tab.stacked(bp)
        chars = _prefix_counts(stacked, tab.r, tab.n)
        if best is not None and chars < best[0]:
            continue
        red, pivots = rref(stacked)
        bm = red.submatrix(range(len(pivots)), range(tab.r * tab.n))
        ok = _staircase_generic(bm, chars, tab.r)
        if best is None or chars > best[0] or (ok and not best[1]):
            best = (chars, ok, bp)
    chars, _, bp = best
    return bp, CartanCharacters(chars)


def extract_symbol_coefficients(tab: Tableau,
                                basis: BasisPair) -> SymbolPresentation:
    """Solve for the staircase coefficients of A in the given basis.

    Raises NonGenericBasis when the staircase slots fail to determine
    the remaining entries (wrong characters, generators not packed to
    the top, or dependence on columns to the right).
    """
    chars = characters_in_basis(tab, basis)
    if not chars.is_weakly_decreasing():
        raise NonGenericBasis(f"characters {chars.s} not weakly decreasing")
    s, r, n = chars.s, tab.r, tab.n
    bm = tab.basis_matrix(basis)
    d = bm.rows
    if d != chars.dim:
        raise NonGenericBasis("dimension mismatch")
    if not _staircase_generic(bm, s, r):
        raise NonGenericBasis("staircase projection is not bijective")
    if d == 0:
        return SymbolPresentation(r, chars, {})

    stair = _staircase_positions(s, r)
    gmat = bm.select_columns(stair)          # d x d, invertible by the check
    adapted = invert(gmat) @ bm              # row g = element with unit slot g
    coeffs = {}
    slots = [(lam, b) for lam in range(1, n + 1)
             for b in range(1, s[lam - 1] + 1)]
    for g, (lam, b) in enumerate(slots):
        row = adapted.row(g)
        for i in range(1, n + 1):
            for a in range(1, r + 1):
                val = row[(i - 1) * r + (a - 1)]
                if val == 0:
                    continue
                if a <= s[i - 1]:
                    if (i, a) != (lam, b):
                        raise NonGenericBasis("unexpected staircase entry")
                    continue
                if i < lam:
                    raise NonGenericBasis(
                        "dependence on columns left of the generator")
                coeffs[(a, lam, i, b)] = val
    return SymbolPresentation(r, chars, coeffs)


def tableau_from_coefficients(p: SymbolPresentation) -> Tableau:
    """Spanning-set tableau generated by the staircase presentation."""
    return Tableau(p.r, p.n,
                   [p.generator_matrix(lam, b)
                    for (lam, b) in p.generator_slots()])


def decompose_element(p: SymbolPresentation, pi: RatMatrix) -> list[RatMatrix]:
    """Split pi in A into its per-column generator parts.

    Returns [z_1, ..., z_n] with z_lam supported on the first s_lam
    coordinates of W, such that pi is the sum of the corresponding
    generator combinations; raises NotInTableau otherwise.
    """
    s = p.characters.s
    zs = []
    recon = RatMatrix.zeros(p.r, p.n)
    for lam in range(1, p.n + 1):
        z = [Fraction(0)] * p.r
        for b in range(1, s[lam - 1] + 1):
            z[b - 1] = pi[b - 1, lam - 1]
            if z[b - 1]:
                recon = recon + p.generator_matrix(lam, b).scale(z[b - 1])
        zs.append(RatMatrix.column(z))
    if recon != pi:
        raise NotInTableau("element is not in the tableau")
    return zs


def restrict_to_U(tab: Tableau, basis: BasisPair, ell: int) -> Tableau:
    """Image of A in W (x) U*: truncate to the first ell columns."""
    span = []
    for m in tab.span:
        t = basis.apply(m)
        span.append(t.select_columns(range(ell)))
    return Tableau(tab.r, ell, span)
