"""Involutivity checks: the prolongation oracle and the quadratic criterion.

Two independent routes decide involutivity:

* the brute-force oracle builds the prolonged-symbol matrix and compares
  the kernel dimension with the bound s_1 + 2 s_2 + ... + n s_n;
* for an endovolutive presentation, the reduced wedge conditions --
  whose leading terms are the block commutators
  B^lam_i B^mu_j - B^lam_j B^mu_i on rows below s_i -- decide the same
  question without prolonging.

Both are exact; ``cartan_test`` runs both and reports everything.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .linalg import RatMatrix, invert, kernel_basis, rank, row_basis
from .tableau import (
    BasisPair,
    CartanCharacters,
    NonGenericBasis,
    SymbolPresentation,
    Tableau,
    characters_in_basis,
    extract_symbol_coefficients,
    find_generic_basis,
    random_unit_upper_triangular,
)

VARIANTS = ("theorem", "proof")


class NotEndovolutive(Exception):
    pass


@dataclass(frozen=True)
class BArray:
    """ell x n grid of r x r symbol endomorphism blocks B^lam_i.

    Diagonal blocks carry the identity on the first s_lam coordinates;
    block (lam, i) with i < lam is zero.
    """

    r: int
    characters: CartanCharacters
    blocks: tuple  # blocks[lam-1][i-1]

    @property
    def n(self) -> int:
        return self.characters.n

    @property
    def ell(self) -> int:
        return self.characters.ell

    def block(self, lam: int, i: int) -> RatMatrix:
        return self.blocks[lam - 1][i - 1]

    def is_endovolutive(self) -> bool:
        """Every block in row lam vanishes outside its s_lam x s_lam corner."""
        s = self.characters.s
        for lam in range(1, self.ell + 1):
            for i in range(1, self.n + 1):
                blk = self.block(lam, i)
                for a in range(self.r):
                    for b in range(self.r):
                        if (a >= s[lam - 1] or b >= s[lam - 1]) and blk[a, b] != 0:
                            return False
        return True


def build_b_array(p: SymbolPresentation) -> BArray:
    """Assemble the B-array, inserting identities on diagonal blocks."""
    s = p.characters.s
    r, n, ell = p.r, p.n, p.characters.ell
    grid = []
    for lam in range(1, ell + 1):
        row = []
        for i in range(1, n + 1):
            entries = [[Fraction(0)] * r for _ in range(r)]
            if lam == i:
                for a in range(s[lam - 1]):
                    entries[a][a] = Fraction(1)
            if lam <= i:
                for a in range(s[i - 1] + 1, r + 1):
                    for b in range(1, s[lam - 1] + 1):
                        v = p.coefficient(a, lam, i, b)
                        if v:
                            entries[a - 1][b - 1] = v
            row.append(RatMatrix.from_rows(entries))
        grid.append(tuple(row))
    return BArray(r, p.characters, tuple(grid))


def is_endovolutive(p: SymbolPresentation):
    """(True, None), or (False, first offending (a, lam, i, b))."""
    s = p.characters.s
    for key in sorted(p.coefficients):
        a, lam, i, b = key
        if a > s[lam - 1]:
            return False, key
    return True, None


@dataclass(frozen=True)
class QuadraticViolation:
    """One nonzero reduced-condition entry from the quadratic criterion.

    (lam, mu) label the free generator, (i, j) the wedge-condition
    column pair (lam < i < j, lam <= mu), and a > s_i the offending row.
    """

    lam: int
    mu: int
    i: int
    j: int
    a: int
    b: int
    value: Fraction

    def as_dict(self) -> dict:
        from .linalg import format_rational
        return {"lambda": self.lam, "mu": self.mu, "i": self.i, "j": self.j,
                "a": self.a, "b": self.b, "value": format_rational(self.value)}


def _partial_identity(r: int, s: int) -> RatMatrix:
    return RatMatrix.from_rows(
        [[Fraction(int(a == b and a < s)) for b in range(r)]
         for a in range(r)])


def _truncate_rows(m: RatMatrix, keep: int) -> RatMatrix:
    """Zero every row with 1-based index > keep."""
    return RatMatrix.from_rows(
        [[m[a, b] if a < keep else Fraction(0) for b in range(m.cols)]
         for a in range(m.rows)])


def reduced_conditions(barr: BArray) -> dict:
    """Exact involutivity conditions per free prolongation generator.

    The wedge condition in columns (i, j), i < j, reduces -- by repeated
    substitution of the lower-column relations -- to a combination of
    the free generators Z_{mu,lam} (lam <= mu <= ell) whose coefficients
    must vanish on rows a > s_i.  The leading term of the coefficient of
    Z_{mu,lam} is the commutator B^lam_i B^mu_j - B^lam_j B^mu_i;
    nested substitutions contribute higher-degree correction products
    (first possible at n >= 4).  Returns a map from (lam, mu, i, j) to
    the r x r coefficient matrix, already restricted to rows a > s_i and
    omitting identically-zero coefficients.
    """
    s = barr.characters.s
    r, n, ell = barr.r, barr.n, barr.ell
    zero = RatMatrix.zeros(r, r)

    def blk(lam, i):
        if lam > ell or i < lam:
            return zero
        return barr.block(lam, i)

    memo: dict[tuple[int, int], dict] = {}

    def accumulate(terms, key, mat):
        cur = terms.get(key)
        terms[key] = mat if cur is None else cur + mat

    def expand(i, j):
        """Raw combination of generators for the (i, j) wedge term."""
        terms: dict[tuple[int, int], RatMatrix] = {}
        for mu in range(i, min(j, ell) + 1):
            if s[mu - 1] > 0:
                accumulate(terms, (mu, i),
                           blk(mu, j) @ _partial_identity(r, s[mu - 1]))
        for lam in range(1, min(i, ell + 1)):
            for key, mat in reduce_z(lam, i).items():
                accumulate(terms, key, blk(lam, j) @ mat)
            for key, mat in reduce_z(lam, j).items():
                accumulate(terms, key, (zero - blk(lam, i)) @ mat)
        return terms

    def reduce_z(i, j):
        """Z_{i,j} (rows a <= s_i) in terms of the free generators."""
        if (i, j) not in memo:
            memo[(i, j)] = {k: _truncate_rows(m, s[i - 1])
                            for k, m in expand(i, j).items()}
        return memo[(i, j)]

    out = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for (mu, lam), mat in expand(i, j).items():
                rows = []
                nonzero = False
                for a in range(r):
                    row = []
                    for b in range(r):
                        # negated so the leading term reads
                        # B^lam_i B^mu_j - B^lam_j B^mu_i
                        v = -mat[a, b] if a >= s[i - 1] else Fraction(0)
                        row.append(v)
                        nonzero = nonzero or v != 0
                    rows.append(row)
                if nonzero:
                    out[(lam, mu, i, j)] = RatMatrix.from_rows(rows)
    return out


def quadratic_criterion(barr: BArray,
                        variant: str = "theorem") -> list[QuadraticViolation]:
    """Nonzero reduced-condition entries; empty output means involutive.

    For each wedge-condition pair i < j, each free generator Z_{mu,lam}
    (lam < i, lam <= mu) carries an exact coefficient matrix whose
    leading term is B^lam_i B^mu_j - B^lam_j B^mu_i; every nonzero
    entry on rows a > s_i is reported.  The variant selects the mu
    range enumerated: "theorem" stops at mu < j, "proof" includes
    mu = j.  Both verdicts match the prolongation oracle on
    presentations whose declared basis is generic.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if not barr.is_endovolutive():
        raise NotEndovolutive("quadratic criterion needs an endovolutive array")
    out = []
    for (lam, mu, i, j), mat in sorted(reduced_conditions(barr).items()):
        if variant == "theorem" and mu >= j:
            continue
        for a in range(1, barr.r + 1):
            for b in range(1, barr.r + 1):
                v = mat[a - 1, b - 1]
                if v != 0:
                    out.append(QuadraticViolation(lam, mu, i, j, a, b, v))
    return out


def prolongation_matrix(tab: Tableau) -> RatMatrix:
    """Matrix of the prolonged symbol A (x) V* -> W (x) Wedge2 V*.

    Domain basis: (basis of A) x u^k; codomain basis: w_a (x) u^i ^ u^j
    with i < j.  Basis-independent quantities only (kernel and cokernel
    dimensions) are consumed downstream.
    """
    r, n = tab.r, tab.n
    elems = row_basis(tab.stacked())
    d = len(elems)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    rows = len(pairs) * r
    cols = d * n
    entries = [[Fraction(0)] * cols for _ in range(rows)]
    for p, e in enumerate(elems):
        flat = e.entries()  # column-major: (a, i) at i*r + a
        for k in range(n):
            c = p * n + k
            for idx, (i, j) in enumerate(pairs):
                for a in range(r):
                    val = Fraction(0)
                    if k == j:
                        val += flat[i * r + a]
                    if k == i:
                        val -= flat[j * r + a]
                    if val:
                        entries[idx * r + a][c] = val
    return RatMatrix(rows, cols, [e for row in entries for e in row])


def prolongation_dimension(tab: Tableau) -> tuple[int, int]:
    """(dim of the prolonged tableau, dim of the degree-2 cokernel)."""
    d = tab.dim
    if d == 0:
        return 0, tab.r * tab.n * (tab.n - 1) // 2
    m = prolongation_matrix(tab)
    rk = rank(m)
    return m.cols - rk, m.rows - rk


def search_endovolutive_basis(tab: Tableau, basis: BasisPair,
                              retries: int = 8, seed: int = 0,
                              ) -> Optional[tuple[BasisPair, SymbolPresentation]]:
    """Look for a W-basis making the presentation endovolutive.

    For each lam, project the elements whose first lam-1 columns vanish
    onto column lam; when these spaces have dimensions s_lam and form a
    nested flag, a W-basis adapted to the flag is the unique candidate.
    On failure the V* basis is perturbed by seeded unit upper-triangular
    (Borel) changes, which preserve genericity, up to ``retries`` times.

    Returns None when inconclusive; that is not a proof of
    non-existence.
    """
    rng = random.Random(seed)
    r, n = tab.r, tab.n
    cur = basis
    for attempt in range(retries + 1):
        result = _try_endovolutive(tab, cur)
        if result is not None:
            return result
        cur = basis.then_v(random_unit_upper_triangular(n, rng))
    return None


def _try_endovolutive(tab, basis):
    try:
        chars = characters_in_basis(tab, basis)
    except NonGenericBasis:
        return None
    if not chars.is_weakly_decreasing():
        return None
    s, r, ell = chars.s, tab.r, chars.ell
    if ell == 0:
        try:
            return basis, extract_symbol_coefficients(tab, basis)
        except NonGenericBasis:
            return None
    bm = tab.basis_matrix(basis)

    # Column-lam projection of the elements vanishing in columns < lam.
    flag = []
    for lam in range(1, ell + 1):
        if lam == 1:
            combos = [RatMatrix.column([Fraction(int(i == p))
                                        for i in range(bm.rows)])
                      for p in range(bm.rows)]
        else:
            prefix = bm.select_columns(range((lam - 1) * r)).transpose()
            combos = kernel_basis(prefix)
        vecs = []
        for c in combos:
            elem = c.transpose() @ bm
            vecs.append([elem[0, (lam - 1) * r + a] for a in range(r)])
        if not vecs:
            return None
        w = RatMatrix.from_rows(vecs)
        wb = row_basis(w)
        if len(wb) != s[lam - 1]:
            return None
        flag.append(wb)

    # Nesting check, then a W-basis with first s_lam vectors spanning
    # the lam-th flag space.
    for lam in range(1, ell):
        stacked = RatMatrix.from_rows(
            [list(v.entries()) for v in flag[lam - 1] + flag[lam]])
        if rank(stacked) != s[lam - 1]:
            return None
    adapted: list[list[Fraction]] = []
    for lam in range(ell, 0, -1):
        for v in flag[lam - 1]:
            cand = adapted + [list(v.entries())]
            if rank(RatMatrix.from_rows(cand)) == len(cand):
                adapted = cand
    for a in range(r):
        if len(adapted) == r:
            break
        unit = [Fraction(int(i == a)) for i in range(r)]
        cand = adapted + [unit]
        if rank(RatMatrix.from_rows(cand)) == len(cand):
            adapted = cand
    w_new = invert(RatMatrix.from_rows(adapted).transpose())
    bp = basis.then_w(w_new)
    try:
        pres = extract_symbol_coefficients(tab, bp)
    except NonGenericBasis:
        return None
    ok, _ = is_endovolutive(pres)
    return (bp, pres) if ok else None


@dataclass
class InvolutivityReport:
    """Everything ``cartan_test`` establishes about one tableau."""

    characters: CartanCharacters
    dim_A: int
    dim_A1: int
    cartan_bound: int
    involutive: bool
    endovolutive: bool
    endovolutive_inconclusive: bool
    violations: list[QuadraticViolation]
    dim_H1: int
    dim_H2: int
    basis: BasisPair
    variant: str
    presentation: Optional[SymbolPresentation] = None
    endo_basis: Optional[BasisPair] = None

    def criterion_involutive(self) -> Optional[bool]:
        """Verdict of the quadratic criterion, None when inconclusive."""
        if self.endovolutive_inconclusive:
            return None
        return not self.violations


def cartan_test(tab: Tableau, seed: int = 0, trials: int = 32,
                variant: str = "theorem", retries: int = 8) -> InvolutivityReport:
    """Full pipeline: generic basis, oracle, endovolutive search, criterion."""
    basis, chars = find_generic_basis(tab, seed=seed, trials=trials)
    dim_a = chars.dim
    dim_a1, dim_h2 = prolongation_dimension(tab)
    bound = chars.cartan_bound
    violations: list[QuadraticViolation] = []
    pres = None
    endo_basis = None
    inconclusive = False
    if dim_a == 0:
        endovolutive = True
    else:
        found = search_endovolutive_basis(tab, basis, retries=retries,
                                          seed=seed + 1)
        if found is None:
            endovolutive = False
            inconclusive = True
        else:
            endo_basis, pres = found
            endovolutive = True
            violations = quadratic_criterion(build_b_array(pres), variant)
    return InvolutivityReport(
        characters=chars,
        dim_A=dim_a,
        dim_A1=dim_a1,
        cartan_bound=bound,
        involutive=dim_a1 == bound,
        endovolutive=endovolutive,
        endovolutive_inconclusive=inconclusive,
        violations=violations,
        dim_H1=tab.r * tab.n - dim_a,
        dim_H2=dim_h2,
        basis=basis,
        variant=variant,
        presentation=pres,
        endo_basis=endo_basis,
    )
