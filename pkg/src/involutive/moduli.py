"""Exploring the space of endovolutive coefficient assignments.

For fixed characters, the free endovolutive coefficient slots are
formal variables; the commutator entries of the quadratic criterion
expand to degree-<=2 polynomials in them.  This module exports those
polynomials as an ideal, samples assignments that land on its variety,
and exhaustively enumerates small censuses, always cross-checking kept
samples against the prolongation oracle.

Polynomials are plain expanded term maps (monomial tuple -> coefficient),
no CAS involved.  Variable naming in exports is ``B[a,lam,i,b]`` with a
stable lexicographic term order, so output is diffable across runs.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .involutivity import build_b_array, prolongation_dimension, quadratic_criterion
from .linalg import format_rational
from .tableau import CartanCharacters, SymbolPresentation, tableau_from_coefficients


class CensusTooLarge(Exception):
    pass


class OracleDisagreement(Exception):
    """The quadratic criterion and the prolongation oracle disagree."""


@dataclass(frozen=True, order=True)
class CoefficientVariable:
    """A free endovolutive coefficient slot B^{a,lam}_{i,b}."""

    a: int
    lam: int
    i: int
    b: int

    def name(self) -> str:
        return f"B[{self.a},{self.lam},{self.i},{self.b}]"

    @property
    def key(self) -> tuple[int, int, int, int]:
        return (self.a, self.lam, self.i, self.b)


def coefficient_variables(chars: CartanCharacters) -> list[CoefficientVariable]:
    """Free slots of the endovolutive staircase: lam < i, b <= s_lam,
    s_i < a <= s_lam."""
    chars.require_staircase()
    s = chars.s
    out = []
    for lam in range(1, chars.ell + 1):
        for i in range(lam + 1, chars.n + 1):
            s_i = s[i - 1]
            for a in range(s_i + 1, s[lam - 1] + 1):
                for b in range(1, s[lam - 1] + 1):
                    out.append(CoefficientVariable(a, lam, i, b))
    return out


# A polynomial is a dict {monomial: Fraction}; a monomial is a sorted
# tuple of CoefficientVariable (empty tuple = constant term).
Poly = dict


def _poly_const(c) -> Poly:
    c = Fraction(c)
    return {(): c} if c else {}


def _poly_var(v: CoefficientVariable) -> Poly:
    return {(v,): Fraction(1)}


def _poly_add(p: Poly, q: Poly) -> Poly:
    out = dict(p)
    for m, c in q.items():
        c2 = out.get(m, Fraction(0)) + c
        if c2:
            out[m] = c2
        else:
            out.pop(m, None)
    return out


def _poly_sub(p: Poly, q: Poly) -> Poly:
    return _poly_add(p, {m: -c for m, c in q.items()})


def _poly_mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = tuple(sorted(m1 + m2))
            c = out.get(m, Fraction(0)) + c1 * c2
            if c:
                out[m] = c
            else:
                out.pop(m, None)
    return out


@dataclass(frozen=True)
class IdealGenerator:
    """One polynomial generator, terms in stable lexicographic order."""

    terms: tuple  # of (monomial, Fraction)

    @classmethod
    def from_poly(cls, p: Poly) -> "IdealGenerator":
        return cls(tuple(sorted(p.items(), key=lambda kv: kv[0])))

    def specialize(self, assignment: dict) -> Fraction:
        total = Fraction(0)
        for mono, c in self.terms:
            v = c
            for var in mono:
                v *= assignment[var]
            total += v
        return total

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for idx, (mono, c) in enumerate(self.terms):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            factors = [v.name() for v in mono]
            if mag != 1 or not factors:
                factors.insert(0, format_rational(mag))
            body = "*".join(factors)
            if idx == 0:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"{sign} {body}")
        return " ".join(parts)


def _symbolic_blocks(chars: CartanCharacters, r: int) -> list[list[list[list[Poly]]]]:
    """grid[lam-1][i-1] is an r x r matrix of polynomials."""
    s = chars.s
    variables = {v.key: v for v in coefficient_variables(chars)}
    grid = []
    for lam in range(1, chars.ell + 1):
        row = []
        for i in range(1, chars.n + 1):
            mat = [[_poly_const(0) for _ in range(r)] for _ in range(r)]
            if lam == i:
                for a in range(s[lam - 1]):
                    mat[a][a] = _poly_const(1)
            elif lam < i:
                for a in range(s[i - 1] + 1, s[lam - 1] + 1):
                    for b in range(1, s[lam - 1] + 1):
                        mat[a - 1][b - 1] = _poly_var(
                            variables[(a, lam, i, b)])
            row.append(mat)
        grid.append(row)
    return grid


def _sym_matmul(x, y, r):
    out = [[_poly_const(0) for _ in range(r)] for _ in range(r)]
    for a in range(r):
        for b in range(r):
            acc: Poly = {}
            for c in range(r):
                if x[a][c] and y[c][b]:
                    acc = _poly_add(acc, _poly_mul(x[a][c], y[c][b]))
            out[a][b] = acc
    return out


def export_ideal(chars: CartanCharacters, variant: str = "theorem",
                 r: Optional[int] = None) -> list[IdealGenerator]:
    """Expand the commutator entries of the quadratic criterion symbolically.

    Returns the distinct nonzero polynomials, deterministic in count and
    content.  ``r`` defaults to s_1, which captures every condition
    (rows past s_1 are identically zero for endovolutive arrays).
    """
    chars.require_staircase()
    if r is None:
        r = chars.s[0] if chars.s else 0
    s, n, ell = chars.s, chars.n, chars.ell
    grid = _symbolic_blocks(chars, r)
    zero = [[_poly_const(0) for _ in range(r)] for _ in range(r)]

    def block(lam, i):
        return grid[lam - 1][i - 1] if i >= lam else zero

    seen = set()
    out = []
    for lam in range(1, ell + 1):
        for i in range(lam + 1, n + 1):
            for j in range(i + 1, n + 1):
                mu_hi = j if variant == "proof" else j - 1
                for mu in range(lam, min(ell, mu_hi) + 1):
                    comm = _poly_mat_sub(
                        _sym_matmul(block(lam, i), block(mu, j), r),
                        _sym_matmul(block(lam, j), block(mu, i), r), r)
                    for a in range(s[i - 1] + 1, r + 1):
                        for b in range(1, r + 1):
                            p = comm[a - 1][b - 1]
                            if not p:
                                continue
                            gen = IdealGenerator.from_poly(p)
                            if gen.terms not in seen:
                                seen.add(gen.terms)
                                out.append(gen)
    return out


def _poly_mat_sub(x, y, r):
    return [[_poly_sub(x[a][b], y[a][b]) for b in range(r)] for a in range(r)]


def presentation_from_assignment(chars: CartanCharacters, assignment: dict,
                                 r: Optional[int] = None) -> SymbolPresentation:
    if r is None:
        r = chars.s[0] if chars.s else 0
    coeffs = {v.key: val for v, val in assignment.items() if val != 0}
    return SymbolPresentation(r, chars, coeffs)


def _verify_with_oracle(pres: SymbolPresentation, criterion_empty: bool):
    tab = tableau_from_coefficients(pres)
    dim_a1, _ = prolongation_dimension(tab)
    oracle = dim_a1 == pres.characters.cartan_bound
    if oracle != criterion_empty:
        raise OracleDisagreement(
            f"criterion says {'involutive' if criterion_empty else 'not'}, "
            f"oracle dim A^(1) = {dim_a1} vs bound "
            f"{pres.characters.cartan_bound}")


def sample_involutive(chars: CartanCharacters, seed: int = 0, count: int = 10,
                      coefficient_set: Sequence = (-1, 0, 1),
                      r: Optional[int] = None,
                      variant: str = "theorem") -> list[SymbolPresentation]:
    """Seeded random assignments kept when the criterion reports involutive.

    Every kept sample is cross-validated against the prolongation
    oracle; a mismatch raises OracleDisagreement.  Returns up to
    ``count`` presentations (one draw per requested sample).
    """
    rng = random.Random(seed)
    variables = coefficient_variables(chars)
    pool = [Fraction(c) for c in coefficient_set]
    kept = []
    for _ in range(count):
        assignment = {v: rng.choice(pool) for v in variables}
        pres = presentation_from_assignment(chars, assignment, r)
        violations = quadratic_criterion(build_b_array(pres), variant)
        if violations:
            continue
        _verify_with_oracle(pres, True)
        kept.append(pres)
    return kept


@dataclass
class CensusRecord:
    """Exhaustive count over all assignments from a finite coefficient set.

    Counts presentations in a fixed basis, not isomorphism classes of
    tableaux; non-Borel basis changes can identify distinct entries.
    """

    characters: CartanCharacters
    r: int
    coefficient_set: tuple
    variable_count: int
    total_assignments: int
    involutive_count: int
    violation_histogram: dict = field(default_factory=dict)

    note = ("counts are over presentations in a fixed basis, "
            "not isomorphism classes of tableaux")


def enumerate_census(chars: CartanCharacters, coefficient_set: Sequence,
                     cap: int, r: Optional[int] = None,
                     variant: str = "theorem") -> CensusRecord:
    """Exhaustive loop with exact filtering; refuses runs larger than cap."""
    variables = coefficient_variables(chars)
    pool = [Fraction(c) for c in coefficient_set]
    total = len(pool) ** len(variables)
    if total > cap:
        raise CensusTooLarge(
            f"{total} assignments exceed the cap of {cap}")
    if r is None:
        r = chars.s[0] if chars.s else 0
    involutive = 0
    histogram: dict[int, int] = {}
    for values in itertools.product(pool, repeat=len(variables)):
        assignment = dict(zip(variables, values))
        pres = presentation_from_assignment(chars, assignment, r)
        violations = quadratic_criterion(build_b_array(pres), variant)
        histogram[len(violations)] = histogram.get(len(violations), 0) + 1
        if not violations:
            involutive += 1
    return CensusRecord(
        characters=chars,
        r=r,
        coefficient_set=tuple(pool),
        variable_count=len(variables),
        total_assignments=total,
        involutive_count=involutive,
        violation_histogram=histogram,
    )
