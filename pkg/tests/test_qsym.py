import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wordbialg.qsym import (
    QSym,
    canonical_character,
    complement_L,
    coproduct_terms,
    fundamental_L,
    from_fundamental,
    homogeneous_h,
    is_symmetric,
    kostka,
    marked_shifted_count,
    monomial,
    monomial_sym,
    omega_L,
    peak_K,
    peak_compositions,
    peak_expand,
    q_function,
    qs_one,
    qsym_from_json,
    qsym_to_json,
    quasi_shuffle,
    reverse_L,
    schur,
    schur_expand,
    schur_positive,
    schur_q,
    schur_q_expand,
    schur_q_positive,
    substitute_geometric,
    to_fundamental,
    to_monomial_sym,
)
from wordbialg.words import compositions, partitions

compositions_st = st.lists(st.integers(1, 3), min_size=0, max_size=4).map(tuple)
qsym_st = st.dictionaries(compositions_st, st.integers(-4, 4), max_size=4).map(
    lambda d: QSym(8, d)
)


# --- polynomial oracle -----------------------------------------------------


def expand_polynomial(f: QSym, nvars: int) -> dict:
    """Exact expansion into monomial exponent vectors over x_1..x_nvars."""
    out: dict[tuple, Fraction] = {}
    for alpha, c in f.terms.items():
        if len(alpha) > nvars:
            continue
        for support in itertools.combinations(range(nvars), len(alpha)):
            expo = [0] * nvars
            for pos, part in zip(support, alpha):
                expo[pos] = part
            key = tuple(expo)
            out[key] = out.get(key, Fraction(0)) + c
    return {k: v for k, v in out.items() if v}


def multiply_polynomials(p: dict, q: dict, degree: int) -> dict:
    out: dict[tuple, Fraction] = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            if sum(e) > degree:
                continue
            out[e] = out.get(e, Fraction(0)) + c1 * c2
    return {k: v for k, v in out.items() if v}


# --- bases ------------------------------------------------------------------


def test_fundamental_examples():
    n = 4
    assert fundamental_L((n,)) == QSym(n, {a: 1 for a in compositions(n)})
    assert fundamental_L((1, 1)) == monomial((1, 1))
    assert peak_K((4,)) == QSym(4, {a: 2 ** len(a) for a in compositions(4)})
    with pytest.raises(ValueError):
        peak_K((1, 2))


@given(qsym_st)
@settings(max_examples=40)
def test_fundamental_round_trip(f):
    assert from_fundamental(to_fundamental(f), f.degree) == f


def test_monomial_in_fundamentals_alternating():
    coeffs = to_fundamental(monomial((3,)))
    # expanding back must recover the monomial (inclusion-exclusion check)
    assert from_fundamental(coeffs, 3) == monomial((3,))
    assert to_fundamental(QSym(5, {})) == {}
    assert to_fundamental(fundamental_L((2, 1))) == {(2, 1): Fraction(1)}


def test_is_symmetric():
    assert is_symmetric(monomial_sym((2, 1)))
    assert not is_symmetric(monomial((1, 2)))
    assert to_monomial_sym(monomial_sym((2, 1))).terms == {(2, 1): Fraction(1)}
    with pytest.raises(ValueError):
        to_monomial_sym(monomial((1, 2)))


def test_h_is_sum_of_monomial_syms():
    n = 5
    h = homogeneous_h(n)
    assert to_monomial_sym(h).terms == {lam: Fraction(1) for lam in partitions(n)}


# --- Schur ------------------------------------------------------------------


def brute_force_ssyt_count(lam, content):
    """Direct filling enumeration, independent of the strip recursion."""
    cells = [(i, j) for i, row in enumerate(lam) for j in range(row)]
    letters = []
    for value, mult in enumerate(content, start=1):
        letters.extend([value] * mult)
    count = 0
    filling = {}

    def rec(k):
        nonlocal count
        if k == len(cells):
            count += 1
            return
        i, j = cells[k]
        for v in sorted(set(letters)):
            if letters.count(v) - sum(1 for x in filling.values() if x == v) <= 0:
                continue
            if j and filling[(i, j - 1)] > v:
                continue
            if i and filling[(i - 1, j)] >= v:
                continue
            filling[(i, j)] = v
            rec(k + 1)
            del filling[(i, j)]

    rec(0)
    return count


@pytest.mark.parametrize(
    "lam,content,expected",
    [((2, 1), (1, 1, 1), 2), ((2, 1), (2, 1), 1), ((2, 2), (2, 1, 1), 1)],
)
def test_kostka_frozen(lam, content, expected):
    assert kostka(lam, content) == expected
    assert brute_force_ssyt_count(lam, content) == expected


def test_kostka_vs_brute_force():
    for n in range(1, 6):
        for lam in partitions(n):
            for mu in partitions(n):
                assert kostka(lam, mu) == brute_force_ssyt_count(lam, mu)


def test_schur_examples():
    n = 4
    assert schur((1,) * n) == monomial_sym((1,) * n)
    assert schur((n,)) == homogeneous_h(n)
    assert schur((2, 1)) == monomial_sym((2, 1)) + monomial_sym((1, 1, 1)).scale(2)


def test_schur_symmetric_and_expansion_round_trip():
    for n in range(1, 9):
        for lam in partitions(n):
            s = schur(lam)
            assert is_symmetric(s)
            assert dict(schur_expand(s).terms) == {lam: Fraction(1)}
            cert = schur_positive(s)
            assert cert.nonnegative and not cert.negative_terms


def test_schur_expand_rebuild_identity():
    import random

    rng = random.Random(3)
    for _ in range(10):
        degree = 8
        f = QSym(degree, {})
        for _ in range(4):
            n = rng.randint(0, 6)
            lam = rng.choice(partitions(n))
            f = f + schur(lam, degree).scale(rng.randint(-3, 3))
        expansion = schur_expand(f)
        rebuilt = QSym(degree, {})
        for lam, c in expansion.terms.items():
            rebuilt = rebuilt + schur(lam, degree).scale(c)
        assert rebuilt == f


def test_schur_expand_rejects_non_span():
    # a non-symmetric element cannot be expanded
    with pytest.raises(ValueError):
        schur_expand(monomial((1, 2)))


# --- Schur Q ------------------------------------------------------------------


def test_marked_shifted_frozen_values():
    # shape (2,1): 4 tableaux of content (2,1), 8 of content (1,1,1),
    # enumerated by hand and frozen
    assert marked_shifted_count((2, 1), (2, 1)) == 4
    assert marked_shifted_count((2, 1), (1, 1, 1)) == 8
    assert schur_q((2, 1)) == monomial_sym((2, 1)).scale(4) + monomial_sym(
        (1, 1, 1)
    ).scale(8)
    with pytest.raises(ValueError):
        schur_q((2, 2))


def test_q_functions():
    for n in range(1, 7):
        qn = q_function(n)
        assert qn == QSym(n, {a: 2 ** len(a) for a in compositions(n)})
        assert to_monomial_sym(qn).terms == {
            lam: Fraction(2 ** len(lam)) for lam in partitions(n)
        }
        assert schur_q((n,)) == qn


def test_schur_q_product_identity():
    # Q_(2,1) = q_2 q_1 - 2 q_3, an independent algebraic cross-check
    lhs = schur_q((2, 1), 3)
    rhs = q_function(2, 3) * q_function(1, 3) - q_function(3, 3).scale(2)
    assert lhs == rhs


def test_schur_q_expansion():
    for n in range(1, 8):
        from wordbialg.words import strict_partitions

        for lam in strict_partitions(n):
            qq = schur_q(lam)
            assert is_symmetric(qq)
            assert dict(schur_q_expand(qq).terms) == {lam: Fraction(1)}
            assert schur_q_positive(qq).nonnegative
    # h_2 is symmetric but not in the Q-span
    with pytest.raises(ValueError):
        schur_q_expand(homogeneous_h(2))


# --- involutions ---------------------------------------------------------------


def test_omega():
    n = 5
    assert omega_L(homogeneous_h(n)) == fundamental_L((1,) * n)
    # elementary symmetric function: transpose of the one-row Schur function
    assert omega_L(schur((3, 1))) == schur((2, 1, 1))


@given(qsym_st)
@settings(max_examples=25)
def test_involutions_square_to_identity(f):
    assert omega_L(omega_L(f)) == f
    assert reverse_L(reverse_L(f)) == f
    assert complement_L(complement_L(f)) == f


def test_reverse_fixes_symmetric():
    for n in range(1, 7):
        for lam in partitions(n):
            m = monomial_sym(lam)
            assert reverse_L(m) == m


# --- product -------------------------------------------------------------------


def test_quasi_shuffle_table():
    assert quasi_shuffle((1,), (1,)) == {(1, 1): 2, (2,): 1}


@given(compositions_st, compositions_st)
@settings(max_examples=30)
def test_product_matches_polynomial_multiplication(alpha, beta):
    degree = 12
    f, g = monomial(alpha, degree), monomial(beta, degree)
    product = f * g
    nvars = 6
    expected = multiply_polynomials(
        expand_polynomial(f, nvars), expand_polynomial(g, nvars), degree
    )
    assert expand_polynomial(product, nvars) == expected


def test_h_product_monomial_positive():
    for a in range(1, 5):
        for b in range(1, 9 - a):
            product = homogeneous_h(a, a + b) * homogeneous_h(b, a + b)
            assert is_symmetric(product)
            assert all(c > 0 for c in to_monomial_sym(product).terms.values())


# --- geometric substitution -----------------------------------------------------


def test_substitute_geometric_examples():
    D = 5
    assert substitute_geometric(monomial((1,), D)) == QSym(
        D, {(k,): 1 for k in range(1, D + 1)}
    )
    assert substitute_geometric(monomial((1, 1), D)) == QSym(
        D, {(a, b): 1 for a in range(1, D) for b in range(1, D) if a + b <= D}
    )


def test_substitute_geometric_against_series_oracle():
    # substitute x -> x + x^2 + ... directly in a truncated polynomial ring
    degree, nvars = 6, 6
    geom = {}
    for i in range(nvars):
        for k in range(1, degree + 1):
            e = [0] * nvars
            e[i] = k
            geom.setdefault(i, {})[tuple(e)] = Fraction(1)

    def substitute(poly):
        out = {}
        for expo, coeff in poly.items():
            acc = {tuple([0] * nvars): coeff}
            for i, power in enumerate(expo):
                for _ in range(power):
                    acc = multiply_polynomials(acc, geom[i], degree)
            for k, v in acc.items():
                out[k] = out.get(k, Fraction(0)) + v
        return {k: v for k, v in out.items() if v}

    for alpha in [(1,), (2,), (1, 1), (2, 1), (3,), (1, 1, 1), (2, 2)]:
        f = monomial(alpha, degree)
        got = expand_polynomial(substitute_geometric(f), nvars)
        want = substitute(expand_polynomial(f, nvars))
        assert got == want, alpha


@given(qsym_st)
@settings(max_examples=20)
def test_substitute_geometric_additive(f):
    g = fundamental_L((2,), 8)
    assert substitute_geometric(f + g) == substitute_geometric(
        f
    ) + substitute_geometric(g)


def test_substitute_geometric_truncates():
    f = monomial((1,), 3)
    assert max(sum(a) for a in substitute_geometric(f).terms) == 3


# --- peak span and coproduct ------------------------------------------------------


def test_peak_expand():
    for n in range(0, 7):
        for alpha in peak_compositions(n):
            coeffs = peak_expand(peak_K(alpha))
            assert coeffs == {alpha: Fraction(1)}
    with pytest.raises(ValueError):
        peak_expand(monomial((1, 1)))


def test_coproduct_terms():
    out = coproduct_terms(monomial((2, 1)))
    assert out == {
        ((), (2, 1)): Fraction(1),
        ((2,), (1,)): Fraction(1),
        ((2, 1), ()): Fraction(1),
    }


def test_canonical_character():
    assert canonical_character(qs_one(3)) == {0: Fraction(1)}
    assert canonical_character(monomial((3,))) == {3: Fraction(1)}
    assert canonical_character(monomial((1, 2))) == {}


def test_json_round_trip():
    f = schur((2, 1), 5)
    assert qsym_from_json(qsym_to_json(f)) == f
