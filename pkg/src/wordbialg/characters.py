"""Characters on words and the canonical morphisms into truncated QSym.

A character is one of the four monotonicity kinds (``le``, ``ge``, ``lt``,
``gt``), sending a word to ``t^len`` when the whole word satisfies the
comparison and to zero otherwise, or a convolution pair such as
``('gt', 'le')`` built from the cut coproduct.

The induced morphism sends a word to the sum over compositions of its
length of the character's block coefficients times monomial functions.
For the four basic kinds this collapses to a single fundamental function
indexed by the violation set; for the four peak-style convolutions it
collapses to a peak function.  Class images sum member images, truncated
by degree; their correctness rests on the relation engine's headroom
stability certificate.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .lincomb import LinComb
from .qsym import QSym, fundamental_L, omega_L, peak_K, qs_zero
from .words import (
    Anchored,
    Composition,
    Partition,
    Permutation,
    Word,
    all_reduced_words,
    ascents,
    comp_flat,
    comp_from_set,
    descent_letters,
    descents,
    grassmannian_permutation,
    identity_permutation,
    peaks,
    permutation_length,
    swap_values,
    valleys,
    weak_ascents,
    weak_descents,
)

BASIC_KINDS = ("le", "ge", "lt", "gt")

_COMPARE = {
    "le": lambda a, b: a <= b,
    "ge": lambda a, b: a >= b,
    "lt": lambda a, b: a < b,
    "gt": lambda a, b: a > b,
}

# positions where a block may NOT be cut-free, per kind
_VIOLATIONS = {
    "le": descents,
    "ge": ascents,
    "lt": weak_descents,
    "gt": weak_ascents,
}

Character = str | tuple[str, str]


def parse_character(spec: str) -> Character:
    spec = spec.strip()
    if "-" in spec:
        a, _, b = spec.partition("-")
        if a in BASIC_KINDS and b in BASIC_KINDS:
            return (a, b)
    if spec in BASIC_KINDS:
        return spec
    raise ValueError(f"unknown character {spec!r}")


def format_character(char: Character) -> str:
    return char if isinstance(char, str) else f"{char[0]}-{char[1]}"


def _as_word(x) -> Word:
    if isinstance(x, Anchored):
        return x.word
    return tuple(x)


def is_monotone(w: Word, kind: str) -> bool:
    cmp = _COMPARE[kind]
    return all(cmp(w[i], w[i + 1]) for i in range(len(w) - 1))


def character_poly(char: Character, x) -> dict[int, Fraction]:
    """The image of a word under the character, as ``{degree: coeff}``.

    Convolutions are evaluated through the cut coproduct: the sum over
    two-block cuts of the product of the factors' values."""
    w = _as_word(x)
    if isinstance(char, str):
        return {len(w): Fraction(1)} if is_monotone(w, char) else {}
    first, second = char
    count = sum(
        1
        for i in range(len(w) + 1)
        if is_monotone(w[:i], first) and is_monotone(w[i:], second)
    )
    return {len(w): Fraction(count)} if count else {}


def character_on_lincomb(char: Character, x: LinComb) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    for key, coeff in x.items():
        for d, c in character_poly(char, key).items():
            out[d] = out.get(d, Fraction(0)) + coeff * c
    return {d: c for d, c in out.items() if c}


def character_coefficient(char: Character, x, alpha: Composition) -> Fraction:
    """Coefficient of ``t^{a_1} (x) ... (x) t^{a_l}`` after iterating the cut
    coproduct and applying the character in every slot.

    Since each block contributes only in its own length, only the cut of
    the word into consecutive blocks of lengths ``alpha`` survives."""
    alpha = tuple(alpha)
    if isinstance(x, LinComb):
        return sum(
            (c * character_coefficient(char, k, alpha) for k, c in x.items()),
            Fraction(0),
        )
    w = _as_word(x)
    if sum(alpha) != len(w):
        return Fraction(0)
    out = Fraction(1)
    pos = 0
    for part in alpha:
        block = w[pos : pos + part]
        pos += part
        value = character_poly(char, block).get(part, Fraction(0))
        if not value:
            return Fraction(0)
        out *= value
    return out


def word_image(w: Word, char: Character, degree: int | None = None) -> QSym:
    """The morphism image of a single (packed or anchored) word."""
    w = _as_word(w)
    n = len(w)
    if degree is None:
        degree = n
    if n > degree:
        return qs_zero(degree)
    if isinstance(char, str):
        return fundamental_L(
            comp_from_set(n, _VIOLATIONS[char](w)), degree
        )
    terms = {}
    for alpha in _compositions_of(n):
        c = character_coefficient(char, w, alpha)
        if c:
            terms[alpha] = c
    return QSym(degree, terms)


@lru_cache(maxsize=None)
def _compositions_of(n: int) -> tuple[Composition, ...]:
    from .words import compositions

    return tuple(compositions(n))


_PEAK_CLOSED_FORMS = {
    ("gt", "le"): peaks,
    ("lt", "ge"): valleys,
}
_PEAK_REVERSED_FORMS = {
    ("ge", "lt"): peaks,
    ("le", "gt"): valleys,
}


def peak_image_closed_form(w: Word, char: tuple[str, str], degree: int | None = None) -> QSym:
    """Closed form for the four peak-style convolutions: a single peak
    function whose index is read off the peak or valley set of the word
    (of its reversal for the two reversed kinds)."""
    w = _as_word(w)
    n = len(w)
    if degree is None:
        degree = n
    if char in _PEAK_CLOSED_FORMS:
        alpha = comp_from_set(n, _PEAK_CLOSED_FORMS[char](w))
        return peak_K(alpha, degree)
    if char in _PEAK_REVERSED_FORMS:
        alpha = comp_from_set(n, _PEAK_REVERSED_FORMS[char](w[::-1]))
        return peak_K(comp_flat(alpha), degree)
    raise ValueError(f"no closed form for {char}")


def class_image(
    members: Iterable[Word], char: Character, degree: int
) -> QSym:
    """Sum of member images, truncated: members longer than the degree
    bound contribute nothing."""
    out = qs_zero(degree)
    for w in members:
        if len(_as_word(w)) <= degree:
            out = out + word_image(w, char, degree)
    return out


def lincomb_image(x: LinComb, char: Character, degree: int) -> QSym:
    out = qs_zero(degree)
    for key, coeff in x.items():
        w = _as_word(key)
        if len(w) <= degree:
            out = out + word_image(w, char, degree).scale(coeff)
    return out


def to_qsym(x, char: Character, degree: int | None = None) -> QSym:
    """Morphism image of a word, anchored word, linear combination, or an
    iterable of class members."""
    if isinstance(x, LinComb):
        if degree is None:
            raise ValueError("a degree bound is required for linear combinations")
        return lincomb_image(x, char, degree)
    if isinstance(x, (tuple, Anchored)) and (
        isinstance(x, Anchored) or all(isinstance(a, int) for a in x)
    ):
        return word_image(x, char, degree)
    if degree is None:
        raise ValueError("a degree bound is required for class images")
    return class_image(x, char, degree)


# --- multi-fundamental functions ------------------------------------------


def multi_fundamental(alpha: Composition, degree: int) -> QSym:
    """Truncation of the chain-indexed fundamental analogue.

    Chains of nonempty variable sets weakly ordered slotwise (strictly at
    the cut set) contribute their exponent patterns; with exact contents
    the sets are forced to be intervals tiling an initial variable range,
    sharing at most endpoints across weak boundaries.  Enumeration runs
    over those tilings.
    """
    alpha = tuple(alpha)
    n = sum(alpha)  # number of chain slots
    strict_after = set(_comp_cut_positions(alpha))
    terms: dict[Composition, int] = {}
    if n == 0:
        return QSym(degree, {(): 1})

    def rec(slot: int, beta: list[int], total: int) -> None:
        if slot == n:
            terms[tuple(beta)] = terms.get(tuple(beta), 0) + 1
            return
        may_share = slot > 0 and slot not in strict_after
        for share in ((False, True) if may_share else (False,)):
            base_total = total
            if share:
                beta[-1] += 1
                base_total += 1
                if base_total > degree:
                    beta[-1] -= 1
                    continue
                min_new = 0
            else:
                min_new = 1
            for new in range(min_new, degree - base_total + 1):
                beta.extend([1] * new)
                rec(slot + 1, beta, base_total + new)
                del beta[len(beta) - new :]
            if share:
                beta[-1] -= 1

    rec(0, [], 0)
    return QSym(degree, {b: Fraction(c) for b, c in terms.items()})


def _comp_cut_positions(alpha: Composition) -> list[int]:
    out, total = [], 0
    for part in alpha[:-1]:
        total += part
        out.append(total)
    return out


def multi_fundamental_brute(alpha: Composition, degree: int, nvars: int) -> QSym:
    """Reference enumeration over explicit subset chains of ``[nvars]``."""
    import itertools

    alpha = tuple(alpha)
    n = sum(alpha)  # number of chain slots
    cuts = set(_comp_cut_positions(alpha))
    subsets = [
        frozenset(s)
        for k in range(1, nvars + 1)
        for s in itertools.combinations(range(1, nvars + 1), k)
    ]
    terms: dict[Composition, Fraction] = {}
    if n == 0:
        return QSym(degree, {(): 1})

    def rec(slot: int, prev: frozenset | None, usage: dict[int, int]) -> None:
        if slot == n:
            top = max(usage)
            if sorted(usage) != list(range(1, top + 1)):
                return
            beta = tuple(usage[i] for i in range(1, top + 1))
            if sum(beta) <= degree:
                terms[beta] = terms.get(beta, Fraction(0)) + 1
            return
        for s in subsets:
            if prev is not None:
                if slot in cuts:
                    if not max(prev) < min(s):
                        continue
                elif not max(prev) <= min(s):
                    continue
            new_usage = dict(usage)
            for i in s:
                new_usage[i] = new_usage.get(i, 0) + 1
            if sum(new_usage.values()) <= degree:
                rec(slot + 1, s, new_usage)

    rec(0, None, {})
    return QSym(degree, terms)


# --- Hecke words and the stable family -------------------------------------


@lru_cache(maxsize=None)
def hecke_words(pi: Permutation, length: int) -> tuple[Word, ...]:
    """All words of the given length whose bounded-transposition product
    is ``pi``, by peeling the last (last-acting) letter."""
    if length == 0:
        return ((),) if pi == identity_permutation(len(pi)) else ()
    out = []
    for a in descent_letters(pi):
        shorter = swap_values(pi, a)
        for prefix in hecke_words(pi, length - 1):
            out.append(prefix + (a,))
        for prefix in hecke_words(shorter, length - 1):
            out.append(prefix + (a,))
    return tuple(out)


def grothendieck_family(pi: Permutation, degree: int) -> dict[str, QSym]:
    """The three stable series attached to a permutation's Hecke class.

    ``K`` is the image under the strictly-decreasing character, ``J`` under
    the weakly-increasing one, and ``G`` twists ``K`` by a sign per degree
    above the permutation length.  ``J = omega(K)`` is asserted.
    """
    ell = permutation_length(pi)
    k_image = qs_zero(degree)
    j_image = qs_zero(degree)
    for d in range(ell, degree + 1):
        for w in hecke_words(pi, d):
            k_image = k_image + word_image(w, "gt", degree)
            j_image = j_image + word_image(w, "le", degree)
    if j_image != omega_L(k_image):
        raise AssertionError("weak and signless stable images are not omega-related")
    g_terms = {
        alpha: c * (-1) ** (ell + sum(alpha)) for alpha, c in k_image.terms.items()
    }
    return {"K": k_image, "J": j_image, "G": QSym(degree, g_terms)}


def grassmannian_stable_family(lam: Partition, degree: int) -> dict[str, QSym]:
    return grothendieck_family(grassmannian_permutation(lam), degree)


def stanley_symmetric_bottom(pi: Permutation) -> QSym:
    """Degree-``length`` part of the stable family from reduced words only."""
    out = qs_zero(permutation_length(pi))
    for w in all_reduced_words(pi):
        out = out + word_image(w, "gt")
    return out


# --- identities used as cross-checks ---------------------------------------


def nsym_generator_image(n: int, char: Character, degree: int | None = None) -> QSym:
    """Image of the one-letter-repeated packed word of length ``n``."""
    return word_image((1,) * n, char, degree)
