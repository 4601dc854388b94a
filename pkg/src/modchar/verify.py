"""Cross-check suites: every exact identity the library promises, run on
fixed grids with independent oracles (big-integer combinatorics, power
sums, brute-force minima, dual filtration routes)."""

from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass

from . import chi as chi_mod
from . import coalg, dickson, reps
from .chi import (
    KIND_MIXED,
    KIND_Y_POWER,
    STATUS_NONNILPOTENT,
    STATUS_NONZERO,
    STATUS_UNDEFINED,
    chi_basic,
    is_chi_nonzero,
    min_m_for_digit_sum,
    r1_predicate,
    wedge_split_check,
    witness_alpha,
    witness_degree,
    witness_splitting,
)
from .ff import FieldCtx, MatrixFF
from .mono import Monomial, degree, enumerate_invariant_basis, is_invariant, weight

ORACLE_GRID = ((2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (5, 2))
Q_GRID = ((2, 1), (3, 1), (2, 2), (5, 1), (2, 3), (3, 2))  # q in {2,3,4,5,8,9}


@dataclass
class SuiteResult:
    name: str
    ok: bool
    detail: str
    seconds: float


def _fail(name, start, detail):
    return SuiteResult(name, False, detail, time.perf_counter() - start)


def _pass(name, start, detail=""):
    return SuiteResult(name, True, detail, time.perf_counter() - start)


def suite_oracle_equivalence(profile="quick") -> SuiteResult:
    """Criterion 1: the splitting formula and the power-sum route give
    the same polynomial for every y^k class on the oracle grid."""
    name = "oracle-equivalence"
    start = time.perf_counter()
    checked = 0
    for p, n in ORACLE_GRID:
        for k in range(1, 2 * (p**n - 1) + 2 * p + 1):
            alpha = Monomial((0,), (k,))
            if not is_invariant(alpha, p):
                continue
            lhs = dickson.tensor_to_poly(chi_basic(p, 1, alpha, n))
            rhs = dickson.power_sum(p, n, k).neg()
            if lhs != rhs:
                return _fail(name, start, f"mismatch at p={p}, n={n}, k={k}")
            checked += 1
    return _pass(name, start, f"{checked} classes matched")


def suite_digit_criterion(profile="quick") -> SuiteResult:
    """Criterion 2: the digit-sum classification agrees with the
    splitting search for m <= 300, kinds y and xy, undefineds included."""
    name = "digit-criterion"
    start = time.perf_counter()
    for p, n in ORACLE_GRID:
        kinds = ("y",) if p == 2 else ("y", "xy")
        for kind in kinds:
            for m in range(0, 301):
                status = r1_predicate(p, kind, m, n)
                ext = (0,) if kind == "y" else (1,)
                alpha = Monomial(ext, (m,))
                if status == STATUS_UNDEFINED:
                    if is_invariant(alpha, p):
                        return _fail(
                            name,
                            start,
                            f"undefined but invariant: p={p} {kind} m={m}",
                        )
                    continue
                if not is_invariant(alpha, p):
                    return _fail(
                        name, start, f"defined but not invariant: p={p} {kind} m={m}"
                    )
                nonzero = is_chi_nonzero(p, 1, alpha, n)
                expected = status in (STATUS_NONNILPOTENT, STATUS_NONZERO)
                if nonzero != expected:
                    return _fail(
                        name,
                        start,
                        f"predicate {status} vs search {nonzero}: "
                        f"p={p} n={n} {kind} m={m}",
                    )
    return _pass(name, start)


def suite_lowest_degrees(profile="quick") -> SuiteResult:
    """Criterion 3: minimal nonzero degrees match the closed forms."""
    name = "lowest-degrees"
    start = time.perf_counter()
    for p, n in ORACLE_GRID:
        if p == 2:
            m = min_m_for_digit_sum(2, n)
            if m != 2**n - 1:
                return _fail(name, start, f"p=2 n={n}: min m {m}")
            lowest = _lowest_nonzero_degree(p, n, "y")
            if lowest != 2**n - 1:
                return _fail(name, start, f"p=2 n={n}: scan found degree {lowest}")
        else:
            m = min_m_for_digit_sum(p, n * (p - 1))
            if m != p**n - 1 or 2 * m != 2 * p**n - 2:
                return _fail(name, start, f"p={p} n={n}: min m {m} for kind y")
            if _lowest_nonzero_degree(p, n, "y") != 2 * p**n - 2:
                return _fail(name, start, f"p={p} n={n}: y scan mismatch")
            m = min_m_for_digit_sum(p, n * (p - 1) - 1)
            if 2 * m + 1 != 2 * p**n - 2 * p ** (n - 1) - 1:
                return _fail(name, start, f"p={p} n={n}: min m {m} for kind xy")
            if _lowest_nonzero_degree(p, n, "xy") != 2 * p**n - 2 * p ** (n - 1) - 1:
                return _fail(name, start, f"p={p} n={n}: xy scan mismatch")
    return _pass(name, start)


def _lowest_nonzero_degree(p, n, kind):
    bound = 2 * p**n
    for m in range(1, bound + 1):
        status = r1_predicate(p, kind, m, n)
        if status in (STATUS_NONNILPOTENT, STATUS_NONZERO):
            return m if p == 2 else (2 * m if kind == "y" else 2 * m + 1)
    return None


def suite_coalgebra_laws(profile="quick") -> SuiteResult:
    """Criterion 4: coassociativity, graded cocommutativity, counit,
    weight additivity and invariance closure, degree <= 12 on the q
    grid."""
    name = "coalgebra-laws"
    start = time.perf_counter()
    for p, r in Q_GRID:
        monomials = []
        for d in range(0, 13):
            monomials.extend(enumerate_invariant_basis(p, r, d))
        for m in monomials:
            delta = coalg.coproduct(p, r, m)
            left = {}
            for (m1, m2), c in delta.items():
                for (a, b), c2 in coalg.coproduct(p, r, m1).items():
                    key = (a, b, m2)
                    left[key] = (left.get(key, 0) + c * c2) % p
            right = {}
            for (m1, m2), c in delta.items():
                for (a, b), c2 in coalg.coproduct(p, r, m2).items():
                    key = (m1, a, b)
                    right[key] = (right.get(key, 0) + c * c2) % p
            left = {k: v for k, v in left.items() if v}
            right = {k: v for k, v in right.items() if v}
            if left != right:
                return _fail(name, start, f"coassociativity fails at q={p**r}, {m}")
            flipped = {}
            for (m1, m2), c in delta.items():
                sign = (-1) ** (degree(m1, p) * degree(m2, p))
                flipped[(m2, m1)] = sign * c % p
            if flipped != delta:
                return _fail(name, start, f"cocommutativity fails at q={p**r}, {m}")
            unit = Monomial.unit(r)
            left_counit = {}
            for (m1, m2), c in delta.items():
                if m1 == unit:
                    left_counit[m2] = c
            right_counit = {}
            for (m1, m2), c in delta.items():
                if m2 == unit:
                    right_counit[m1] = c
            if left_counit != {m: 1} or right_counit != {m: 1}:
                return _fail(name, start, f"counit fails at q={p**r}, {m}")
            w = weight(m, p)
            for (m1, m2), _ in delta.items():
                if weight(m1, p) + weight(m2, p) != w:
                    return _fail(name, start, f"weight split fails at q={p**r}, {m}")
                if not (is_invariant(m1, p) and is_invariant(m2, p)):
                    return _fail(name, start, f"invariance fails at q={p**r}, {m}")
    return _pass(name, start)


def suite_wedge(profile="quick") -> SuiteResult:
    """Criterion 5: rank splitting through the coproduct, a+b <= 4,
    q in {2,3,4}, degree <= 10."""
    name = "wedge-consistency"
    start = time.perf_counter()
    for p, r in ((2, 1), (3, 1), (2, 2)):
        monomials = []
        for d in range(1, 11):
            monomials.extend(enumerate_invariant_basis(p, r, d))
        for m in monomials:
            for a in range(1, 4):
                for b in range(1, 5 - a):
                    if not wedge_split_check(p, r, m, a, b):
                        return _fail(
                            name, start, f"q={p**r}, alpha={m}, a={a}, b={b}"
                        )
    return _pass(name, start)


def suite_dickson(profile="quick") -> SuiteResult:
    """Criterion 6: sparsity of the total symmetric class, Newton's
    identity, the series-inverse route, the product identities with the
    exhaustive companion scan, and algebraic independence at n = 2."""
    name = "dickson-identities"
    start = time.perf_counter()
    grid = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (5, 2)]
    if profile == "full":
        grid.append((3, 3))
    for p, n in grid:
        q = p**n
        total = dickson.dickson_total(p, n)
        allowed = {q - p**i for i in range(n + 1)} | {0}
        for d in total.components:
            if d not in allowed:
                return _fail(name, start, f"spurious symmetric degree {d} at {p},{n}")
        top = total.component(q - 1)
        prod = None
        for coeffs in itertools.product(range(p), repeat=n):
            if not any(coeffs):
                continue
            form = dickson.MultiPoly.linear_form(p, coeffs)
            prod = form if prod is None else prod.mul(form)
        if prod != top:
            return _fail(name, start, f"top invariant != product of forms at {p},{n}")
        dmax = 3 * (q - 1)
        if not dickson.newton_check(p, n, dmax):
            return _fail(name, start, f"newton fails at p={p}, n={n}")
        if dickson.chi_total_from_inverse(p, n, dmax) != dickson.alternating_chi_total(
            p, n, dmax
        ):
            return _fail(name, start, f"series inverse fails at p={p}, n={n}")
        special = set()
        for i in range(n + 1):
            dickson.product_identity_check(p, n, i)
            special.add(2 * q - p**i - 1)
        extras = [k for k in dickson.nonzero_chi_degrees(p, n) if k not in special]
        if extras:
            return _fail(name, start, f"unexpected nonzero chi at k={extras}, {p},{n}")
    for p in (2, 3):
        if not dickson.algebraic_independence_check(p, 2):
            return _fail(name, start, f"algebraic independence fails at p={p}")
    return _pass(name, start, f"grid {grid}")


def suite_filtration(profile="quick") -> SuiteResult:
    """Criterion 7: dual filtration routes on 200 random reps, the
    conjugation of the second socle stage of the big rep onto the basic
    rep, socle balance of tensor squares, strictness and saturation."""
    name = "filtration"
    start = time.perf_counter()
    rng = random.Random(20260809)
    contexts = [FieldCtx(2, 1), FieldCtx(3, 1), FieldCtx(2, 2)]
    for i in range(200):
        rep = random_valid_rep(rng, contexts[i % len(contexts)])
        bad = reps.validate(rep)
        if bad:
            return _fail(name, start, f"random rep {i} invalid: {bad}")
        quot = reps.socle_filtration_by_quotients(rep)
        ann = reps.socle_filtration_by_annihilators(rep)
        if quot != ann:
            return _fail(name, start, f"filtration routes disagree on random rep {i}")
        dims = [s.dim for s in quot]
        if any(b <= a for a, b in zip(dims, dims[1:])) or quot[-1].dim != rep.dim:
            return _fail(name, start, f"filtration not strict/saturating on rep {i}")
    for p, r, nmax in ((2, 1, 3), (3, 1, 2), (2, 2, 2), (5, 1, 1)):
        for n in range(1, nmax + 1):
            big = reps.big_rep(p, r, n)
            stages = reps.socle_filtration(big)
            j1 = stages[min(1, len(stages) - 1)]
            restricted = reps.restrict(big, j1)
            t = reps.iso_to_basic(restricted)
            target = reps.basic_rep(p, r, n)
            t_inv = t.inverse()
            for g, bgen in zip(restricted.generators, target.rep.generators):
                if t.mul(g).mul(t_inv) != bgen:
                    return _fail(name, start, f"conjugation fails at ({p},{r},{n})")
    for p, r in ((2, 1), (3, 1), (2, 2)):
        xi = reps.sym_power_rep(p, r)
        prod_dim = xi.dim**2
        for i in range(prod_dim):
            if not reps.socle_tensor_check(xi, xi, i):
                return _fail(name, start, f"tensor socle fails at q={p**r}, i={i}")
    return _pass(name, start)


def suite_classification(profile="quick") -> SuiteResult:
    """Criterion 8: direct sums vanish, the regular representation
    computes like the basic one, and pullbacks along redundant
    generators recover the projection."""
    name = "classification"
    start = time.perf_counter()
    for p, r in ((2, 1), (3, 1), (2, 2)):
        basic1 = reps.basic_rep(p, r, 1)
        summed = reps.direct_sum(basic1.rep, basic1.rep)
        if reps.classify(summed).verdict != "zero":
            return _fail(name, start, f"direct sum not zero at q={p**r}")
        if p**r <= 4:
            trivial = reps.Rep(
                basic1.rep.ctx,
                1,
                tuple(
                    MatrixFF.identity(basic1.rep.ctx, 1)
                    for _ in range(basic1.rep.rank)
                ),
            )
            padded = reps.direct_sum(basic1.rep, trivial)
            if reps.classify(padded).verdict != "zero":
                return _fail(name, start, f"trivial pad not zero at q={p**r}")
    for p in (2, 3):
        for n in (1, 2):
            reg = reps.regular_rep(p, n)
            for k in range(1, 2 * (p**n - 1) + 1):
                got = reps.chi_of_rep(reg, k)
                want = dickson.chi_via_power_sum(p, n, k)
                if got != want:
                    return _fail(
                        name, start, f"regular rep chi differs at p={p}, n={n}, k={k}"
                    )
    surjection = [[1, 0, 0], [0, 1, 1]]
    pulled = reps.pullback(reps.basic_rep(2, 1, 2).rep, surjection)
    red = reps.classify(pulled)
    if red.verdict != "reduced" or red.quotient_rank != 2:
        return _fail(name, start, "pullback did not reduce to rank 2")
    if [list(row) for row in red.projection] != surjection:
        return _fail(name, start, f"recovered projection {red.projection}")
    for k in (1, 2, 3):
        got = reps.chi_of_rep(pulled, k)
        want = dickson.chi_via_power_sum(2, 2, k).substitute(surjection, 3)
        if got != want:
            return _fail(name, start, f"pullback chi differs at k={k}")
    surjection3 = [[1, 0, 2], [0, 1, 1]]
    pulled3 = reps.pullback(reps.basic_rep(3, 1, 2).rep, surjection3)
    red3 = reps.classify(pulled3)
    if red3.verdict != "reduced" or red3.quotient_rank != 2:
        return _fail(name, start, "odd-p pullback did not reduce to rank 2")
    for k in (4, 8):
        got = reps.chi_of_rep(pulled3, k)
        want = dickson.chi_via_power_sum(3, 2, k).substitute(surjection3, 3)
        if got != want:
            return _fail(name, start, f"odd-p pullback chi differs at k={k}")
    for p, r, a, b in ((2, 1, 1, 2), (3, 1, 1, 1), (2, 2, 1, 1)):
        wedge = reps.wedge_sum(reps.basic_rep(p, r, a), reps.basic_rep(p, r, b))
        red = reps.classify(wedge.rep)
        if red.verdict != "reduced" or red.quotient_rank != r * (a + b):
            return _fail(name, start, f"wedge rank wrong at ({p},{r},{a},{b})")
    return _pass(name, start)


def suite_arithmetic(profile="quick") -> SuiteResult:
    """Criterion 9: digit-wise binomials and multinomials against
    factorial oracles, minimal digit-sum witnesses against a digit DP,
    and the Grassmannian point-count congruence."""
    name = "arithmetic"
    start = time.perf_counter()
    for p in (2, 3, 5, 7):
        for m in range(0, 301):
            for k in range(0, m + 1):
                if coalg.lucas_binomial(p, m, k) != math.comb(m, k) % p:
                    return _fail(name, start, f"binomial p={p} C({m},{k})")
    rng = random.Random(97)
    samples = []
    for x in range(0, 101, 1):
        for y in range(0, 101, 7):
            samples.append((x, y))
    for _ in range(4000):
        samples.append(tuple(rng.randrange(0, 101) for _ in range(3)))
    for _ in range(4000):
        samples.append(tuple(rng.randrange(0, 101) for _ in range(4)))
    for p in (2, 3, 5, 7):
        for parts in samples:
            got = coalg.multinomial_mod_p(p, parts)
            total = sum(parts)
            oracle = math.factorial(total)
            for x in parts:
                oracle //= math.factorial(x)
            if got != oracle % p:
                return _fail(name, start, f"multinomial p={p} parts={parts}")
            if (got != 0) != coalg.no_carry(p, parts):
                return _fail(name, start, f"carry criterion p={p} parts={parts}")
    for p in (2, 3, 5, 7):
        for s in range(0, 41):
            if min_m_for_digit_sum(p, s) != _min_digit_sum_dp(p, s):
                return _fail(name, start, f"digit-sum minimum p={p} s={s}")
    for q in (2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27):
        for a in range(0, 9):
            for b in range(0, a + 1):
                g = coalg.gaussian_binomial(a, b, q)
                if g % q != 1 % q:
                    return _fail(name, start, f"q-binomial ({a},{b})_{q} = {g}")
    return _pass(name, start)


def _min_digit_sum_dp(p, s):
    """Independent minimum: smallest value of any base-p digit vector
    with digit sum s, by dynamic programming over digit positions."""
    positions = max(1, -(-s // (p - 1)))
    best = {0: 0}
    for pos in range(positions):
        new = {}
        scale = p**pos
        for acc, val in best.items():
            for d in range(p):
                nacc = acc + d
                if nacc > s:
                    break
                nval = val + d * scale
                if nacc not in new or nval < new[nacc]:
                    new[nacc] = nval
        best = new
    return best[s]


def suite_witnesses(profile="quick") -> SuiteResult:
    """Criterion 10: the explicit splittings behind the witness classes
    are admissible nonzero terms, and table degrees match the closed
    forms."""
    name = "witnesses"
    start = time.perf_counter()
    for p in (2, 3, 5):
        for r in (1, 2, 3):
            for n in (1, 2, 3):
                kinds = [KIND_Y_POWER] if p == 2 else [KIND_Y_POWER, KIND_MIXED]
                for kind in kinds:
                    alpha = witness_alpha(p, r, n, kind)
                    if not is_invariant(alpha, p):
                        return _fail(
                            name, start, f"witness not invariant ({p},{r},{n},{kind})"
                        )
                    factors = witness_splitting(p, r, n, kind)
                    if len(factors) != n:
                        return _fail(name, start, f"splitting arity ({p},{r},{n})")
                    if not chi_mod.splitting_is_admissible(p, r, alpha, factors):
                        return _fail(
                            name,
                            start,
                            f"splitting inadmissible ({p},{r},{n},{kind})",
                        )
                    if degree(alpha, p) != witness_degree(p, r, n, kind):
                        return _fail(
                            name, start, f"degree formula ({p},{r},{n},{kind})"
                        )
                if r == 1 and n <= 2 and p <= 3:
                    for kind in kinds:
                        alpha = witness_alpha(p, r, n, kind)
                        if not is_chi_nonzero(p, r, alpha, n):
                            return _fail(
                                name, start, f"search misses witness ({p},{n},{kind})"
                            )
                        tc = chi_basic(p, r, alpha, n)
                        key = tuple(witness_splitting(p, r, n, kind))
                        if tc.coefficient(key) == 0:
                            return _fail(
                                name,
                                start,
                                f"expanded class misses the splitting ({p},{n},{kind})",
                            )
    return _pass(name, start)


# -- random representations ---------------------------------------------------


def random_valid_rep(rng: random.Random, ctx: FieldCtx, dim_cap=8, max_gens=3) -> reps.Rep:
    """Random valid rep built compositionally (sums, tensors, socle
    restrictions, quotients, duals of the stock constructions), pulled
    back along a random exponent matrix and conjugated by a random
    invertible matrix."""
    p, r = ctx.p, ctx.r

    def atom():
        roll = rng.randrange(4)
        if roll == 0:
            return reps.basic_rep(p, r, 1, ctx.modulus).rep
        if roll == 1 and 2 * r + 1 <= dim_cap:
            return reps.basic_rep(p, r, 2, ctx.modulus).rep
        if roll == 2 and p <= dim_cap:
            return reps.sym_power_rep(p, r, ctx.modulus)
        if roll == 3 and r == 1 and p**2 <= dim_cap and rng.random() < 0.5:
            return reps.regular_rep(p, 2)
        return reps.basic_rep(p, r, 1, ctx.modulus).rep

    rep = atom()
    for _ in range(rng.randrange(3)):
        other = atom()
        choice = rng.randrange(3)
        if choice == 0 and rep.dim + other.dim <= dim_cap:
            rep = reps.direct_sum(rep, other)
        elif choice == 1 and rep.dim * other.dim <= dim_cap:
            rep = reps.tensor_rep(rep, other)
        elif choice == 2:
            stages = reps.socle_filtration(rep)
            if len(stages) > 1 and rng.random() < 0.5:
                rep = reps.restrict(rep, stages[rng.randrange(1, len(stages))])
            elif stages[0].dim < rep.dim:
                rep = reps.quotient(rep, stages[0])
    if rng.random() < 0.3:
        rep = reps.dual_rep(rep)
    if rep.dim < 1:
        rep = reps.basic_rep(p, r, 1, ctx.modulus).rep
    s_new = rng.randrange(1, max_gens + 1)
    exponents = [
        [rng.randrange(p) for _ in range(s_new)] for _ in range(rep.rank)
    ]
    rep = reps.pullback(rep, exponents)
    while True:
        cand = [
            [ctx.from_coeffs([rng.randrange(p) for _ in range(r)]) for _ in range(rep.dim)]
            for _ in range(rep.dim)
        ]
        mat = MatrixFF(ctx, cand)
        if mat.rank() == rep.dim:
            break
    inv = mat.inverse()
    gens = tuple(mat.mul(g).mul(inv) for g in rep.generators)
    return reps.Rep(ctx, rep.dim, gens)


ALL_SUITES = {
    "arithmetic": suite_arithmetic,
    "coalgebra": suite_coalgebra_laws,
    "oracle": suite_oracle_equivalence,
    "digit": suite_digit_criterion,
    "lowest-degrees": suite_lowest_degrees,
    "wedge": suite_wedge,
    "dickson": suite_dickson,
    "filtration": suite_filtration,
    "classification": suite_classification,
    "witnesses": suite_witnesses,
}


def run(profile: str = "quick", names=None) -> list[SuiteResult]:
    if profile not in ("quick", "full"):
        raise ValueError(f"unknown profile {profile!r}")
    selected = names or list(ALL_SUITES)
    results = []
    for key in selected:
        results.append(ALL_SUITES[key](profile))
    return results
