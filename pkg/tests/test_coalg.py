"""Carry-free arithmetic and the coproduct, checked against independent
oracles: big-integer factorials for the coefficients and a symbol-level
primitive expansion for the coproduct itself."""

import itertools
import math

import pytest

from modchar.coalg import (
    CarryProfile,
    coproduct,
    counit,
    gaussian_binomial,
    iterated_coproduct,
    lucas_binomial,
    multinomial_mod_p,
    no_carry,
)
from modchar.mono import (
    CohClass,
    Monomial,
    NotInvariant,
    degree,
    enumerate_invariant_basis,
    is_invariant,
)

# -- oracles -----------------------------------------------------------------


def naive_coproduct(p, r, mono):
    """Independent expansion: write the monomial as a word of primitive
    generator symbols, distribute each symbol left or right, track the
    sign by counting moves of odd symbols past the right word, and
    collect equal (left, right) exponent pairs.  Finally filter by the
    weight-divisibility condition."""
    symbols = []
    for k, a in enumerate(mono.ext):
        if a:
            symbols.append(("x", k))
    for k, b in enumerate(mono.pows):
        symbols.extend([("y", k)] * b)
    terms = {}
    for choice in itertools.product((0, 1), repeat=len(symbols)):
        sign = 1
        right_odd = 0  # odd-degree symbols accumulated on the right
        left_ext = [0] * r
        left_pows = [0] * r
        right_ext = [0] * r
        right_pows = [0] * r
        for sym, side in zip(symbols, choice):
            kind, k = sym
            odd = kind == "x" and p != 2
            if side == 0:
                if odd and right_odd % 2:
                    sign = -sign
                if kind == "x":
                    left_ext[k] += 1
                else:
                    left_pows[k] += 1
            else:
                if odd:
                    right_odd += 1
                if kind == "x":
                    right_ext[k] += 1
                else:
                    right_pows[k] += 1
        key = (
            Monomial(tuple(left_ext), tuple(left_pows)),
            Monomial(tuple(right_ext), tuple(right_pows)),
        )
        terms[key] = (terms.get(key, 0) + sign) % p
    out = {}
    for (left, right), c in terms.items():
        if c and is_invariant(left, p) and is_invariant(right, p):
            out[(left, right)] = c
    return out


def factorial_multinomial(parts):
    total = math.factorial(sum(parts))
    for x in parts:
        total //= math.factorial(x)
    return total


# -- binomials ---------------------------------------------------------------


def test_lucas_frozen_examples():
    assert lucas_binomial(2, 3, 1) == 1  # C(3,1) = 3
    assert lucas_binomial(3, 4, 2) == 0  # C(4,2) = 6
    assert lucas_binomial(7, 100, 0) == 1
    assert lucas_binomial(5, 3, 4) == 0  # k > m


def test_lucas_against_factorial_oracle():
    for p in (2, 3, 5, 7):
        for m in range(0, 120):
            for k in range(0, m + 1):
                assert lucas_binomial(p, m, k) == math.comb(m, k) % p


def test_no_carry_frozen_examples():
    assert no_carry(3, (2, 6))  # 02 + 20 in base 3
    assert not no_carry(2, (1, 1))
    assert no_carry(5, (17,))
    assert CarryProfile(3, (2, 6)).carry_free()


def test_multinomial_frozen_examples():
    assert multinomial_mod_p(3, (2, 6)) == 1  # C(8,2) = 28
    assert multinomial_mod_p(2, (1, 2)) == 1  # C(3,1) = 3
    assert multinomial_mod_p(7, (9,)) == 1


def test_multinomial_against_factorial_oracle():
    for p in (2, 3, 5):
        for parts in itertools.product(range(9), repeat=3):
            got = multinomial_mod_p(p, parts)
            assert got == factorial_multinomial(parts) % p
            assert (got != 0) == no_carry(p, parts)


def test_digit_sum_additivity_equivalence():
    def s(p, m):
        return sum(int(d) for d in _digits(p, m))

    def _digits(p, m):
        out = []
        while m:
            out.append(m % p)
            m //= p
        return out

    for p in (2, 3, 5):
        for a in range(60):
            for b in range(60):
                assert no_carry(p, (a, b)) == (s(p, a + b) == s(p, a) + s(p, b))


def test_gaussian_binomial_values_and_congruence():
    # Grassmannian point counts over F_2: lines in F_2^2, F_2^3, planes in F_2^4
    assert gaussian_binomial(2, 1, 2) == 3
    assert gaussian_binomial(3, 1, 2) == 7
    assert gaussian_binomial(4, 2, 2) == 35
    assert gaussian_binomial(4, 2, 3) == 130
    for q in (2, 3, 4, 5, 8, 9):
        for a in range(0, 9):
            for b in range(0, a + 1):
                assert gaussian_binomial(a, b, q) % q == 1 % q


def test_gaussian_binomial_pascal_recurrence():
    for q in (2, 3, 4):
        for a in range(1, 9):
            for b in range(1, a):
                assert gaussian_binomial(a, b, q) == gaussian_binomial(
                    a - 1, b - 1, q
                ) + q**b * gaussian_binomial(a - 1, b, q)


# -- coproduct ---------------------------------------------------------------


def test_coproduct_frozen_p2_examples():
    y = lambda k: Monomial((0,), (k,))  # noqa: E731
    d3 = coproduct(2, 1, y(3))
    assert d3 == {
        (y(3), y(0)): 1,
        (y(2), y(1)): 1,
        (y(1), y(2)): 1,
        (y(0), y(3)): 1,
    }
    d2 = coproduct(2, 1, y(2))
    assert d2 == {(y(2), y(0)): 1, (y(0), y(2)): 1}


def test_coproduct_frozen_q4_example():
    m = Monomial((0, 0), (1, 1))
    unit = Monomial.unit(2)
    assert coproduct(2, 2, m) == {(m, unit): 1, (unit, m): 1}


def test_coproduct_koszul_sign_frozen_q9_example():
    # splitting x0 x1 y0^5 y1^5 across factors picks up the shuffle sign
    alpha = Monomial((1, 1), (5, 5))
    d = coproduct(3, 2, alpha)
    left = Monomial((0, 1), (5, 0))
    right = Monomial((1, 0), (0, 5))
    assert d[(left, right)] == 2  # -1 mod 3
    assert d[(right, left)] == 1


def test_coproduct_rejects_non_invariant():
    with pytest.raises(NotInvariant):
        coproduct(3, 1, Monomial((0,), (1,)))


@pytest.mark.parametrize("p,r", [(2, 1), (3, 1), (2, 2), (5, 1), (3, 2)])
def test_coproduct_matches_naive_expansion(p, r):
    monomials = []
    for d in range(0, 9):
        monomials.extend(enumerate_invariant_basis(p, r, d))
    # keep the word expansion tractable
    monomials = [m for m in monomials if sum(m.ext) + sum(m.pows) <= 8]
    assert monomials
    for m in monomials:
        assert coproduct(p, r, m) == naive_coproduct(p, r, m)


def test_coproduct_deep_sign_case_matches_naive():
    alpha = Monomial((1, 1), (5, 5))
    assert coproduct(3, 2, alpha) == naive_coproduct(3, 2, alpha)


def test_iterated_coproduct_base_cases():
    m = Monomial((0,), (3,))
    assert iterated_coproduct(2, 1, m, 1) == {(m,): 1}
    two = iterated_coproduct(2, 1, m, 2)
    assert two == {k: v for k, v in coproduct(2, 1, m).items()}


def test_iterated_coproduct_y3_all_carry_free_compositions():
    # ternary splittings of y^3 over F_2: all 9 carry-free compositions
    m = Monomial((0,), (3,))
    got = iterated_coproduct(2, 1, m, 3)
    expected = {}
    for parts in itertools.product(range(4), repeat=3):
        if sum(parts) != 3:
            continue
        coeff = factorial_multinomial(parts) % 2
        if coeff:
            key = tuple(Monomial((0,), (b,)) for b in parts)
            expected[key] = coeff
    assert len(expected) == 9
    assert got == expected


def test_iterated_coproduct_left_right_nesting_agree():
    # coassociativity makes the nesting order immaterial
    p, r = 3, 1
    m = Monomial((1,), (5,))
    left = iterated_coproduct(p, r, m, 3)
    right = {}
    for (a, b), c in coproduct(p, r, m).items():
        for (b1, b2), c2 in coproduct(p, r, b).items():
            key = (a, b1, b2)
            right[key] = (right.get(key, 0) + c * c2) % p
    right = {k: v for k, v in right.items() if v}
    assert left == right


def test_counit():
    p, r = 5, 1
    unit = Monomial.unit(1)
    c = CohClass(p, r, {unit: 3, Monomial((0,), (1,)): 1})
    assert counit(c) == 3
    assert counit(CohClass.from_monomial(p, r, Monomial((0,), (4,)))) == 0
    assert counit(CohClass.from_monomial(p, r, unit)) == 1


def test_every_factor_was_kept_invariant():
    for p, r in [(2, 2), (3, 2)]:
        for d in range(0, 9):
            for m in enumerate_invariant_basis(p, r, d):
                for (a, b), c in coproduct(p, r, m).items():
                    assert is_invariant(a, p) and is_invariant(b, p)
                    assert degree(a, p) + degree(b, p) == degree(m, p)
