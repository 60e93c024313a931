"""Degree-truncated quasi-symmetric and symmetric function arithmetic.

Everything is stored in the monomial basis: a :class:`QSym` maps
compositions to exact rationals and carries the truncation degree up to
which its coefficients are meaningful.  Fundamental, peak, and the
symmetric bases (monomial, Schur, Schur-Q) are conversion layers.

Multiplication is the overlapping shuffle of compositions, which agrees
with multiplying the underlying power series.  Schur functions are built
from semistandard-tableau counts, Schur-Q functions from marked shifted
tableau counts; both expansions invert by triangular elimination along
reverse-lexicographic (dominance-compatible) order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from .lincomb import format_scalar, parse_scalar
from .words import (
    Composition,
    Partition,
    comp_complement,
    comp_from_set,
    comp_reverse,
    comp_sort,
    comp_to_set,
    comp_transpose,
    compositions,
    is_peak_composition,
    is_strict_partition,
    multiset_permutations,
    partitions,
    strict_partitions,
)


class QSym:
    """A quasi-symmetric function known up to total degree ``degree``."""

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms: Mapping[Composition, object] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Composition, Fraction] = {}
        for alpha, c in items:
            alpha = tuple(alpha)
            c = Fraction(c)
            if c and sum(alpha) <= degree:
                clean[alpha] = clean.get(alpha, Fraction(0)) + c
                if not clean[alpha]:
                    del clean[alpha]
        self.degree = degree
        self.terms = clean

    def coeff(self, alpha: Composition) -> Fraction:
        return self.terms.get(tuple(alpha), Fraction(0))

    def truncate(self, degree: int) -> "QSym":
        return QSym(min(degree, self.degree), self.terms)

    def homogeneous(self, d: int) -> "QSym":
        return QSym(self.degree, {a: c for a, c in self.terms.items() if sum(a) == d})

    def __add__(self, other: "QSym") -> "QSym":
        degree = min(self.degree, other.degree)
        out = dict(self.terms)
        for alpha, c in other.terms.items():
            out[alpha] = out.get(alpha, Fraction(0)) + c
        return QSym(degree, out)

    def __sub__(self, other: "QSym") -> "QSym":
        return self + other.scale(-1)

    def scale(self, c) -> "QSym":
        c = Fraction(c)
        return QSym(self.degree, {a: c * x for a, x in self.terms.items()})

    def __mul__(self, other: "QSym") -> "QSym":
        degree = min(self.degree, other.degree)
        out: dict[Composition, Fraction] = {}
        for alpha, ca in self.terms.items():
            for beta, cb in other.terms.items():
                if sum(alpha) + sum(beta) > degree:
                    continue
                for gamma, mult in quasi_shuffle(alpha, beta).items():
                    out[gamma] = out.get(gamma, Fraction(0)) + ca * cb * mult
        return QSym(degree, out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QSym):
            return NotImplemented
        d = min(self.degree, other.degree)
        return {a: c for a, c in self.terms.items() if sum(a) <= d} == {
            a: c for a, c in other.terms.items() if sum(a) <= d
        }

    def __repr__(self) -> str:
        if not self.terms:
            return f"QSym<{self.degree}>(0)"
        bits = [f"{format_scalar(c)}*M{a}" for a, c in sorted(self.terms.items())]
        return f"QSym<{self.degree}>(" + " + ".join(bits) + ")"


class SymExpansion:
    """Coefficients of a symmetric function in a named partition basis."""

    __slots__ = ("basis", "degree", "terms")

    def __init__(self, basis: str, degree: int, terms: Mapping[Partition, object] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        self.basis = basis
        self.degree = degree
        self.terms = {
            tuple(lam): Fraction(c) for lam, c in items if Fraction(c)
        }

    def coeff(self, lam: Partition) -> Fraction:
        return self.terms.get(tuple(lam), Fraction(0))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymExpansion):
            return NotImplemented
        return (self.basis, self.terms) == (other.basis, other.terms)

    def __repr__(self) -> str:
        bits = [f"{format_scalar(c)}*{self.basis}{l}" for l, c in sorted(self.terms.items())]
        return f"SymExpansion[{self.basis}]<{self.degree}>(" + (" + ".join(bits) or "0") + ")"


@dataclass(frozen=True)
class PositivityCertificate:
    basis: str
    expansion: SymExpansion
    nonnegative: bool
    negative_terms: tuple


@lru_cache(maxsize=None)
def quasi_shuffle(alpha: Composition, beta: Composition) -> dict:
    """Overlapping shuffle of two compositions, with multiplicities."""
    if not alpha:
        return {beta: 1}
    if not beta:
        return {alpha: 1}
    out: dict[Composition, int] = {}

    def absorb(head: Composition, tail: dict) -> None:
        for gamma, mult in tail.items():
            key = head + gamma
            out[key] = out.get(key, 0) + mult

    absorb((alpha[0],), quasi_shuffle(alpha[1:], beta))
    absorb((beta[0],), quasi_shuffle(alpha, beta[1:]))
    absorb((alpha[0] + beta[0],), quasi_shuffle(alpha[1:], beta[1:]))
    return out


def qs_zero(degree: int) -> QSym:
    return QSym(degree, {})


def qs_one(degree: int) -> QSym:
    return QSym(degree, {(): Fraction(1)})


def monomial(alpha: Composition, degree: int | None = None) -> QSym:
    alpha = tuple(alpha)
    if degree is None:
        degree = sum(alpha)
    if sum(alpha) > degree:
        raise ValueError(f"|{alpha}| exceeds truncation degree {degree}")
    return QSym(degree, {alpha: Fraction(1)})


@lru_cache(maxsize=None)
def _fundamental_terms(alpha: Composition) -> tuple[Composition, ...]:
    n = sum(alpha)
    base = comp_to_set(alpha)
    free = sorted(set(range(1, n)) - base)
    out = []
    for k in range(len(free) + 1):
        for extra in itertools.combinations(free, k):
            out.append(comp_from_set(n, base | set(extra)))
    return tuple(out)


def fundamental_L(alpha: Composition, degree: int | None = None) -> QSym:
    """Sum of ``M_beta`` over refinements ``beta`` of ``alpha``."""
    alpha = tuple(alpha)
    n = sum(alpha)
    if degree is None:
        degree = n
    if n > degree:
        raise ValueError(f"|{alpha}| exceeds truncation degree {degree}")
    return QSym(degree, {beta: Fraction(1) for beta in _fundamental_terms(alpha)})


@lru_cache(maxsize=None)
def _peak_terms(alpha: Composition) -> tuple[tuple[Composition, int], ...]:
    n = sum(alpha)
    cuts = comp_to_set(alpha)
    out = []
    for beta in compositions(n):
        spread = comp_to_set(beta)
        spread = spread | {i + 1 for i in spread}
        if cuts <= spread:
            out.append((beta, 2 ** len(beta)))
    return tuple(out)


def peak_K(alpha: Composition, degree: int | None = None) -> QSym:
    """Peak function: ``sum 2^{l(beta)} M_beta`` over ``beta`` whose cut set,
    thickened by one, covers the cut set of ``alpha``."""
    alpha = tuple(alpha)
    if not is_peak_composition(alpha):
        raise ValueError(f"{alpha} is not a peak composition")
    n = sum(alpha)
    if degree is None:
        degree = n
    if n > degree:
        raise ValueError(f"|{alpha}| exceeds truncation degree {degree}")
    return QSym(degree, {beta: Fraction(c) for beta, c in _peak_terms(alpha)})


def to_fundamental(f: QSym) -> dict[Composition, Fraction]:
    """Coefficients in the fundamental basis, by inclusion-exclusion."""
    out: dict[Composition, Fraction] = {}
    for alpha, coeff in f.terms.items():
        n = sum(alpha)
        base = comp_to_set(alpha)
        free = sorted(set(range(1, n)) - base)
        for k in range(len(free) + 1):
            for extra in itertools.combinations(free, k):
                beta = comp_from_set(n, base | set(extra))
                acc = out.get(beta, Fraction(0)) + coeff * (-1) ** k
                if acc:
                    out[beta] = acc
                else:
                    out.pop(beta, None)
    return out


def from_fundamental(coeffs: Mapping[Composition, Fraction], degree: int) -> QSym:
    out: dict[Composition, Fraction] = {}
    for alpha, c in coeffs.items():
        if sum(alpha) > degree:
            continue
        for beta in _fundamental_terms(tuple(alpha)):
            out[beta] = out.get(beta, Fraction(0)) + c
    return QSym(degree, out)


@lru_cache(maxsize=None)
def _rearrangements(lam: Partition) -> tuple[Composition, ...]:
    return tuple(multiset_permutations(lam))


def is_symmetric(f: QSym) -> bool:
    """Monomial coefficients must be constant on sorting fibers, degree-wise."""
    seen: set[Partition] = set()
    for alpha, coeff in f.terms.items():
        lam = comp_sort(alpha)
        if lam in seen:
            continue
        seen.add(lam)
        if any(f.coeff(beta) != coeff for beta in _rearrangements(lam)):
            return False
    return True


def to_monomial_sym(f: QSym) -> SymExpansion:
    if not is_symmetric(f):
        raise ValueError("not a symmetric function within the truncation")
    terms = {a: c for a, c in f.terms.items() if tuple(a) == comp_sort(a)}
    return SymExpansion("m", f.degree, terms)


def monomial_sym(lam: Partition, degree: int | None = None) -> QSym:
    lam = tuple(lam)
    if degree is None:
        degree = sum(lam)
    return QSym(degree, {beta: Fraction(1) for beta in _rearrangements(lam)})


def homogeneous_h(n: int, degree: int | None = None) -> QSym:
    return fundamental_L((n,) if n else (), degree)


# --- Schur functions ----------------------------------------------------


@lru_cache(maxsize=None)
def kostka(lam: Partition, content: Composition) -> int:
    """Number of semistandard tableaux of shape ``lam`` and given content,
    by peeling horizontal strips of the largest letter."""
    if sum(lam) != sum(content):
        return 0
    if not content:
        return 1 if not lam else 0
    size = content[-1]
    return sum(
        kostka(mu, content[:-1]) for mu in _horizontal_strip_removals(lam, size)
    )


@lru_cache(maxsize=None)
def _horizontal_strip_removals(lam: Partition, size: int) -> tuple[Partition, ...]:
    """Shapes ``mu`` with ``lam/mu`` a horizontal strip of ``size`` cells."""
    rows = len(lam)
    out = []

    def rec(i: int, remaining: int, acc: list[int]):
        if i == rows:
            if remaining == 0:
                out.append(tuple(a for a in acc if a))
            return
        lower = lam[i + 1] if i + 1 < rows else 0
        for new in range(max(lower, lam[i] - remaining), lam[i] + 1):
            acc.append(new)
            rec(i + 1, remaining - (lam[i] - new), acc)
            acc.pop()

    rec(0, size, [])
    return tuple(out)


def schur(lam: Partition, degree: int | None = None) -> QSym:
    """Schur function in the monomial basis via Kostka numbers."""
    lam = tuple(lam)
    n = sum(lam)
    if degree is None:
        degree = n
    terms = {}
    for alpha in compositions(n):
        k = kostka(lam, comp_sort(alpha))
        if k:
            terms[alpha] = Fraction(k)
    return QSym(degree, terms)


def _triangular_solve(f, index, pivot_coeff, basis_in_m, basis_tag):
    """Solve ``f = sum c_lam B_lam`` along reverse-lexicographic order."""
    expansion = to_monomial_sym(f)
    residual = dict(expansion.terms)
    coeffs: dict[Partition, Fraction] = {}
    for lam in sorted(index, reverse=True):
        c = residual.get(lam, Fraction(0))
        if not c:
            continue
        c = c / pivot_coeff(lam)
        coeffs[lam] = c
        for mu, x in basis_in_m(lam).items():
            acc = residual.get(mu, Fraction(0)) - c * x
            if acc:
                residual[mu] = acc
            else:
                residual.pop(mu, None)
    if residual:
        raise ValueError(
            f"element is not in the span of the {basis_tag} basis; residual at "
            f"{sorted(residual)[:3]}"
        )
    return SymExpansion(basis_tag, f.degree, coeffs)


@lru_cache(maxsize=None)
def _schur_in_m(lam: Partition) -> dict[Partition, Fraction]:
    return {
        mu: Fraction(kostka(lam, mu))
        for mu in partitions(sum(lam))
        if kostka(lam, mu)
    }


def schur_expand(f: QSym) -> SymExpansion:
    index = [lam for d in range(f.degree + 1) for lam in partitions(d)]
    return _triangular_solve(f, index, lambda lam: Fraction(1), _schur_in_m, "s")


def schur_positive(f: QSym) -> PositivityCertificate:
    expansion = schur_expand(f)
    negative = tuple((lam, c) for lam, c in sorted(expansion.terms.items()) if c < 0)
    return PositivityCertificate("s", expansion, not negative, negative)


# --- Schur Q-functions ---------------------------------------------------


def _shifted_diagram(lam: Partition) -> tuple[tuple[int, int], ...]:
    return tuple((i, i + j) for i, part in enumerate(lam) for j in range(part))


@lru_cache(maxsize=None)
def marked_shifted_count(lam: Partition, content: Composition) -> int:
    """Number of marked shifted tableaux of strict shape ``lam`` with the
    given content (primed and unprimed copies counted together).

    Entries come from the ordered alphabet 1' < 1 < 2' < 2 < ...; rows and
    columns weakly increase, no primed letter repeats in a row, no unprimed
    letter repeats in a column.
    """
    if not is_strict_partition(lam):
        raise ValueError(f"{lam} is not strict")
    if sum(content) != sum(lam):
        return 0
    cells = _shifted_diagram(lam)
    remaining = list(content)
    filling: dict[tuple[int, int], tuple[int, int]] = {}
    count = 0

    def key(value: tuple[int, int]) -> int:
        return 2 * value[0] - value[1]

    def rec(idx: int) -> None:
        nonlocal count
        if idx == len(cells):
            count += 1
            return
        r, c = cells[idx]
        left = filling.get((r, c - 1))
        up = filling.get((r - 1, c))
        for k in range(1, len(remaining) + 1):
            if not remaining[k - 1]:
                continue
            for primed in (1, 0):
                value = (k, primed)
                if left is not None:
                    if key(value) < key(left) or (primed and left == value):
                        continue
                if up is not None:
                    if key(value) < key(up) or (not primed and up == value):
                        continue
                remaining[k - 1] -= 1
                filling[(r, c)] = value
                rec(idx + 1)
                del filling[(r, c)]
                remaining[k - 1] += 1

    rec(0)
    return count


def q_function(n: int, degree: int | None = None) -> QSym:
    """The doubled homogeneous generator: ``sum 2^{l(a)} M_a`` over ``a`` of ``n``."""
    if n == 0:
        return qs_one(degree if degree is not None else 0)
    return peak_K((n,), degree)


def schur_q(lam: Partition, degree: int | None = None) -> QSym:
    """Schur Q-function of a strict partition, in the monomial basis."""
    lam = tuple(lam)
    if not is_strict_partition(lam):
        raise ValueError(f"{lam} is not a strict partition")
    n = sum(lam)
    if degree is None:
        degree = n
    terms = {}
    for alpha in compositions(n):
        c = marked_shifted_count(lam, comp_sort(alpha))
        if c:
            terms[alpha] = Fraction(c)
    return QSym(degree, terms)


@lru_cache(maxsize=None)
def _schur_q_in_m(lam: Partition) -> dict[Partition, Fraction]:
    return {
        mu: Fraction(marked_shifted_count(lam, mu))
        for mu in partitions(sum(lam))
        if marked_shifted_count(lam, mu)
    }


def schur_q_expand(f: QSym) -> SymExpansion:
    index = [lam for d in range(f.degree + 1) for lam in strict_partitions(d)]
    return _triangular_solve(
        f, index, lambda lam: Fraction(2 ** len(lam)), _schur_q_in_m, "Q"
    )


def schur_q_positive(f: QSym) -> PositivityCertificate:
    expansion = schur_q_expand(f)
    negative = tuple((lam, c) for lam, c in sorted(expansion.terms.items()) if c < 0)
    return PositivityCertificate("Q", expansion, not negative, negative)


# --- involutions and substitution ----------------------------------------


def _map_fundamental(f: QSym, comp_map) -> QSym:
    coeffs = to_fundamental(f)
    return from_fundamental(
        {comp_map(alpha): c for alpha, c in coeffs.items()}, f.degree
    )


def omega_L(f: QSym) -> QSym:
    """The involution sending each fundamental to its transpose index."""
    return _map_fundamental(f, comp_transpose)


def reverse_L(f: QSym) -> QSym:
    return _map_fundamental(f, comp_reverse)


def complement_L(f: QSym) -> QSym:
    return _map_fundamental(f, comp_complement)


def substitute_geometric(f: QSym) -> QSym:
    """Substitute ``x_i -> x_i + x_i^2 + ...`` in every variable.

    Sends ``M_alpha`` to ``sum prod_j C(b_j - 1, a_j - 1) M_beta`` over
    same-length compositions ``beta >= alpha`` componentwise, truncated at
    the ambient degree.
    """
    out: dict[Composition, Fraction] = {}
    degree = f.degree
    for alpha, coeff in f.terms.items():
        for beta in _componentwise_dominating(alpha, degree):
            mult = 1
            for a, b in zip(alpha, beta):
                mult *= _binomial(b - 1, a - 1)
            acc = out.get(beta, Fraction(0)) + coeff * mult
            if acc:
                out[beta] = acc
            else:
                out.pop(beta, None)
    return QSym(degree, out)


def _binomial(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


def _componentwise_dominating(alpha: Composition, degree: int):
    slack = degree - sum(alpha)
    if slack < 0:
        return
    parts = len(alpha)

    def rec(i: int, budget: int, acc: list[int]):
        if i == parts:
            yield tuple(acc)
            return
        for extra in range(budget + 1):
            acc.append(alpha[i] + extra)
            yield from rec(i + 1, budget - extra, acc)
            acc.pop()

    yield from rec(0, slack, [])


# --- coproduct and the canonical character --------------------------------


def coproduct_terms(f: QSym) -> dict[tuple[Composition, Composition], Fraction]:
    """Deconcatenation coproduct of compositions, extended linearly."""
    out: dict[tuple[Composition, Composition], Fraction] = {}
    for alpha, c in f.terms.items():
        for i in range(len(alpha) + 1):
            key = (alpha[:i], alpha[i:])
            out[key] = out.get(key, Fraction(0)) + c
    return {k: v for k, v in out.items() if v}


def canonical_character(f: QSym) -> dict[int, Fraction]:
    """Set ``x_1 = t`` and all other variables to zero; coefficients by degree."""
    out: dict[int, Fraction] = {}
    for alpha, c in f.terms.items():
        if len(alpha) <= 1:
            d = sum(alpha)
            out[d] = out.get(d, Fraction(0)) + c
    return {d: c for d, c in out.items() if c}


# --- peak-basis solve -----------------------------------------------------


def peak_compositions(n: int) -> list[Composition]:
    return [alpha for alpha in compositions(n) if is_peak_composition(alpha)]


def peak_expand(f: QSym) -> dict[Composition, Fraction]:
    """Expand in the peak basis by exact Gaussian elimination, degree-wise."""
    out: dict[Composition, Fraction] = {}
    by_degree: dict[int, dict[Composition, Fraction]] = {}
    for alpha, c in f.terms.items():
        by_degree.setdefault(sum(alpha), {})[alpha] = c
    for d, component in sorted(by_degree.items()):
        basis = peak_compositions(d)
        columns = [dict(_peak_terms(alpha)) for alpha in basis]
        targets = sorted(compositions(d))
        rows = [
            [Fraction(col.get(beta, 0)) for col in columns]
            + [component.get(beta, Fraction(0))]
            for beta in targets
        ]
        solution = _solve_exact(rows, len(basis))
        if solution is None:
            raise ValueError(f"degree-{d} component is not in the peak span")
        for alpha, c in zip(basis, solution):
            if c:
                out[alpha] = c
    return out


def _solve_exact(rows: list[list[Fraction]], ncols: int) -> list[Fraction] | None:
    """Solve an overdetermined exact linear system; None when inconsistent."""
    rows = [list(r) for r in rows]
    pivots: list[tuple[int, int]] = []
    row = 0
    for col in range(ncols):
        pivot = next((r for r in range(row, len(rows)) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[row], rows[pivot] = rows[pivot], rows[row]
        pv = rows[row][col]
        rows[row] = [x / pv for x in rows[row]]
        for r in range(len(rows)):
            if r != row and rows[r][col]:
                factor = rows[r][col]
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[row])]
        pivots.append((row, col))
        row += 1
    solution = [Fraction(0)] * ncols
    for r, c in pivots:
        solution[c] = rows[r][-1]
    for r in range(len(rows)):
        if any(rows[r][:ncols]):
            continue
        if rows[r][-1]:
            return None
    return solution


# --- serialization --------------------------------------------------------


def qsym_to_json(f: QSym) -> dict:
    return {
        "degree": f.degree,
        "terms": [
            {"comp": list(alpha), "coeff": format_scalar(c)}
            for alpha, c in sorted(f.terms.items())
        ],
    }


def qsym_from_json(data: dict) -> QSym:
    return QSym(
        data["degree"],
        {tuple(t["comp"]): parse_scalar(t["coeff"]) for t in data["terms"]},
    )


def sym_expansion_to_json(e: SymExpansion) -> dict:
    return {
        "basis": e.basis,
        "degree": e.degree,
        "terms": [
            {"partition": list(lam), "coeff": format_scalar(c)}
            for lam, c in sorted(e.terms.items())
        ],
    }
