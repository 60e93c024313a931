"""Structure maps for the anchored-word bialgebra and the packed-word
Hopf algebra, together with brute-force verifiers of the bimonoid axioms
and of the duality pairing with the concatenation/alphabet-split maps.

Anchored words multiply by shifted shuffling (the second factor's letters
are raised past the first factor's anchor) and comultiply by summing all
two-block cuts.  Packed words use the same maps composed with flattening.
The dual maps act on truncations of the completed space: concatenation
when anchors agree, and the alphabet-threshold split coproduct.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Callable

from .lincomb import LinComb
from .words import (
    Anchored,
    Word,
    all_words,
    anchored,
    flatten,
    is_packed,
    packed_words,
    restrict,
    shift,
    word_max,
)


def shuffle(u: Word, v: Word) -> LinComb:
    """Shuffle product of two words, with multiplicities."""
    m, n = len(u), len(v)
    out: dict[Word, Fraction] = {}
    for positions in itertools.combinations(range(m + n), m):
        word = [0] * (m + n)
        taken = set(positions)
        it_u = iter(u)
        it_v = iter(v)
        for i in range(m + n):
            word[i] = next(it_u) if i in taken else next(it_v)
        key = tuple(word)
        out[key] = out.get(key, 0) + 1
    result = LinComb.zero()
    result._terms = {k: Fraction(c) for k, c in out.items()}
    return result


def shifted_shuffle(a: Anchored, b: Anchored) -> LinComb:
    """Product on anchored words: shuffle ``a.word`` with ``b.word`` raised
    past ``a.anchor``; the result is multiplicity-free."""
    m, n = a.anchor, b.anchor
    raised = shift(b.word, m)
    return shuffle(a.word, raised).apply(
        lambda w: LinComb.basis(Anchored(w, m + n))
    )


def shuffle_unit() -> LinComb:
    return LinComb.basis(Anchored((), 0))


def deconcat_coproduct(a: Anchored) -> LinComb:
    """Sum of all two-block cuts of the word, same anchor on both sides."""
    w, n = a
    return LinComb(
        [((Anchored(w[:i], n), Anchored(w[i:], n)), 1) for i in range(len(w) + 1)]
    )


def deconcat_counit(a: Anchored) -> Fraction:
    return Fraction(1 if not a.word else 0)


def packed_product(u: Word, v: Word) -> LinComb:
    """Product on packed words: shuffle with the second factor raised."""
    if not (is_packed(u) and is_packed(v)):
        raise ValueError("packed_product requires packed words")
    return shuffle(u, shift(v, word_max(u)))


def packed_coproduct(w: Word) -> LinComb:
    """Deconcatenation with both blocks flattened."""
    if not is_packed(w):
        raise ValueError("packed_coproduct requires a packed word")
    return LinComb(
        [((flatten(w[:i]), flatten(w[i:])), 1) for i in range(len(w) + 1)]
    )


def packed_counit(w: Word) -> Fraction:
    return Fraction(1 if not w else 0)


def concat_product(a: Anchored, b: Anchored) -> LinComb:
    """Concatenation when anchors match, zero otherwise."""
    if a.anchor != b.anchor:
        return LinComb.zero()
    return LinComb.basis(Anchored(a.word + b.word, a.anchor))


def alphabet_coproduct(a: Anchored) -> LinComb:
    """Split by every alphabet threshold, down-shifting the second block."""
    w, n = a
    terms = []
    for m in range(n + 1):
        low = restrict(w, range(1, m + 1))
        high = shift(restrict(w, range(m + 1, n + 1)), -m)
        terms.append(((Anchored(low, m), Anchored(high, n - m)), 1))
    return LinComb(terms)


def alphabet_counit(a: Anchored) -> Fraction:
    return Fraction(1 if a.anchor == 0 else 0)


def concat_unit_truncated(max_anchor: int) -> LinComb:
    """Truncation of the formal unit: empty words at every anchor up to the bound."""
    return LinComb([(Anchored((), n), 1) for n in range(max_anchor + 1)])


# --- axiom verification --------------------------------------------------


def anchored_basis(max_degree: int, max_anchor: int) -> list[Anchored]:
    out = []
    for n in range(max_anchor + 1):
        for w in all_words(n, max_degree):
            out.append(anchored(w, n))
    return out


def packed_basis(max_degree: int) -> list[Word]:
    out: list[Word] = []
    for length in range(max_degree + 1):
        out.extend(packed_words(length))
    return out


def _lift2(f: Callable) -> Callable[[LinComb], LinComb]:
    """Extend a basis-pair map to tensors (keys are ordered pairs)."""

    def lifted(x: LinComb) -> LinComb:
        return x.apply(lambda key: f(key[0], key[1]))

    return lifted


def _pick_structure(structure: str, product, coproduct, counit, unit):
    if structure == "anchored":
        product = product or shifted_shuffle
        coproduct = coproduct or deconcat_coproduct
        counit = counit or deconcat_counit
        unit = unit if unit is not None else shuffle_unit()
        degree = lambda key: len(key.word)
    elif structure == "packed":
        product = product or packed_product
        coproduct = coproduct or packed_coproduct
        counit = counit or packed_counit
        unit = unit if unit is not None else LinComb.basis(())
        degree = lambda key: len(key)
    else:
        raise ValueError(f"unknown structure {structure!r}")
    return product, coproduct, counit, unit, degree


def verify_bialgebra_axioms(
    structure: str = "anchored",
    max_degree: int = 4,
    max_anchor: int = 2,
    product=None,
    coproduct=None,
    counit=None,
    unit=None,
) -> list[dict]:
    """Exhaustively check the bimonoid axioms on all basis tuples whose
    degrees sum to at most ``max_degree``.

    Returns one report per axiom: ``{"axiom", "bounds", "status", "checked",
    "witness"?}``.  The first counterexample, if any, is recorded.
    """
    product, coproduct, counit, unit, degree = _pick_structure(
        structure, product, coproduct, counit, unit
    )
    if structure == "anchored":
        basis = anchored_basis(max_degree, max_anchor)
    else:
        basis = packed_basis(max_degree)
    bounds = {"max_degree": max_degree}
    if structure == "anchored":
        bounds["max_anchor"] = max_anchor

    prod2 = _lift2(product)
    coprod_lift = lambda x: x.apply(coproduct)
    reports = []

    def run(axiom: str, cases, check) -> None:
        checked = 0
        witness = None
        for case in cases:
            checked += 1
            if not check(case):
                witness = repr(case)
                break
        reports.append(
            {
                "axiom": axiom,
                "bounds": bounds,
                "status": "pass" if witness is None else "fail",
                "checked": checked,
                **({"witness": witness} if witness is not None else {}),
            }
        )

    def pairs():
        return (
            (a, b)
            for a in basis
            for b in basis
            if degree(a) + degree(b) <= max_degree
        )

    def triples():
        return (
            (a, b, c)
            for a in basis
            for b in basis
            if degree(a) + degree(b) <= max_degree
            for c in basis
            if degree(a) + degree(b) + degree(c) <= max_degree
        )

    run(
        "unit-law",
        basis,
        lambda a: unit.apply(lambda u: product(u, a)) == LinComb.basis(a)
        and unit.apply(lambda u: product(a, u)) == LinComb.basis(a),
    )
    run(
        "associativity",
        triples(),
        lambda abc: product(abc[0], abc[1]).apply(lambda x: product(x, abc[2]))
        == product(abc[1], abc[2]).apply(lambda x: product(abc[0], x)),
    )
    run(
        "counit-law",
        basis,
        lambda a: LinComb(
            [(k2, c * counit(k1)) for (k1, k2), c in coproduct(a).items()]
        )
        == LinComb.basis(a)
        and LinComb([(k1, c * counit(k2)) for (k1, k2), c in coproduct(a).items()])
        == LinComb.basis(a),
    )
    run(
        "coassociativity",
        basis,
        lambda a: coproduct(a).apply(
            lambda kk: coproduct(kk[0]).apply(
                lambda jj: LinComb.basis((jj[0], jj[1], kk[1]))
            )
        )
        == coproduct(a).apply(
            lambda kk: coproduct(kk[1]).apply(
                lambda jj: LinComb.basis((kk[0], jj[0], jj[1]))
            )
        ),
    )

    def compat(ab) -> bool:
        a, b = ab
        left = coprod_lift(product(a, b))
        right = LinComb.zero()
        for (a1, a2), c1 in coproduct(a).items():
            for (b1, b2), c2 in coproduct(b).items():
                right = right + product(a1, b1).tensor(product(a2, b2)).scale(c1 * c2)
        return left == right

    run("product-coproduct-compatibility", pairs(), compat)
    run(
        "counit-multiplicativity",
        pairs(),
        lambda ab: sum(
            (c * counit(k) for k, c in product(ab[0], ab[1]).items()),
            Fraction(0),
        )
        == counit(ab[0]) * counit(ab[1]),
    )
    run(
        "unit-comultiplicativity",
        [unit],
        lambda u: u.apply(coproduct) == u.tensor(u)
        and sum((c * counit(k) for k, c in u.items()), Fraction(0)) == 1,
    )
    return reports


def duality_pairing_check(max_degree: int = 4, max_anchor: int = 3) -> dict:
    """Check that the concatenation/alphabet-split maps are adjoint to the
    cut coproduct/shifted shuffle under the coefficientwise pairing."""
    basis = anchored_basis(max_degree, max_anchor)
    basis_set = set(basis)
    witness = None
    checked = 0

    # <shifted_shuffle(a (x) b), c> == <a (x) b, alphabet_coproduct(c)>
    split: dict[tuple[Anchored, Anchored], dict[Anchored, Fraction]] = {}
    for c in basis:
        for key, coeff in alphabet_coproduct(c).items():
            split.setdefault(key, {})[c] = coeff
    for a in basis:
        for b in basis:
            if len(a.word) + len(b.word) > max_degree or a.anchor + b.anchor > max_anchor:
                continue
            checked += 1
            lhs = {
                k: c for k, c in shifted_shuffle(a, b).items() if k in basis_set
            }
            rhs = split.get((a, b), {})
            if lhs != rhs:
                witness = repr((a, b))
                break
        if witness:
            break

    # <deconcat_coproduct(a), b (x) c> == <a, concat_product(b (x) c)>
    if witness is None:
        cuts: dict[tuple[Anchored, Anchored], dict[Anchored, Fraction]] = {}
        for a in basis:
            for key, coeff in deconcat_coproduct(a).items():
                cuts.setdefault(key, {})[a] = coeff
        for b in basis:
            for c in basis:
                if len(b.word) + len(c.word) > max_degree:
                    continue
                checked += 1
                lhs = {
                    k: x for k, x in concat_product(b, c).items() if k in basis_set
                }
                rhs = cuts.get((b, c), {})
                if lhs != rhs:
                    witness = repr((b, c))
                    break
            if witness:
                break

    return {
        "axiom": "duality-pairing",
        "bounds": {"max_degree": max_degree, "max_anchor": max_anchor},
        "status": "pass" if witness is None else "fail",
        "checked": checked,
        **({"witness": witness} if witness is not None else {}),
    }
