"""Matrix representations of elementary abelian p-groups over GF(p^r):
constructions, the socle filtration by augmentation-ideal annihilators,
and the reduction of class computations to a basic representation.

The abstract group is always F_p^s on the listed generators, even over
an extension field; redundant generators are allowed and absorbed by the
kernel computation in classify.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from . import ff
from .dickson import MultiPoly, chi_via_power_sum
from .ff import FieldCtx, MatrixFF, Subspace


class RepValidationError(ValueError):
    """A matrix family violating the elementary abelian contract."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class ReductionError(ValueError):
    """Preconditions of a basic-model reduction fail."""


@dataclass(frozen=True)
class Rep:
    """dim-dimensional representation of F_p^s given by s commuting
    invertible matrices of order p over the field of ctx."""

    ctx: FieldCtx
    dim: int
    generators: tuple

    def __post_init__(self):
        for g in self.generators:
            if g.ctx != self.ctx:
                raise ff.DimensionError("generator over a different field")
            if g.nrows != self.dim or g.ncols != self.dim:
                raise ff.DimensionError("generator shape != dim x dim")

    @property
    def rank(self) -> int:
        """Rank s of the acting elementary abelian group."""
        return len(self.generators)

    def element(self, exponents) -> MatrixFF:
        """Matrix of the group element with the given exponent vector."""
        if len(exponents) != self.rank:
            raise ff.DimensionError("exponent vector length != generator count")
        out = MatrixFF.identity(self.ctx, self.dim)
        for g, e in zip(self.generators, exponents):
            e %= self.ctx.p
            if e:
                out = out.mul(g.pow_int(e))
        return out


@dataclass(frozen=True)
class PointedRep:
    """Representation with a chosen nonzero fixed vector."""

    rep: Rep
    basepoint: tuple

    def __post_init__(self):
        ctx = self.rep.ctx
        if len(self.basepoint) != self.rep.dim:
            raise ff.DimensionError("basepoint length != dim")
        if all(e == ctx.zero for e in self.basepoint):
            raise RepValidationError(["basepoint is zero"])
        for i, g in enumerate(self.rep.generators):
            if g.matvec(self.basepoint) != self.basepoint:
                raise RepValidationError([f"generator {i} moves the basepoint"])


def validate(rep: Rep) -> list[str]:
    """Violation report; empty when the rep satisfies the contract."""
    out = []
    p = rep.ctx.p
    ident = MatrixFF.identity(rep.ctx, rep.dim)
    for i, g in enumerate(rep.generators):
        if g.rank() != rep.dim:
            out.append(f"generator {i} is singular")
            continue
        if g.pow_int(p) != ident:
            out.append(f"generator {i} does not have order dividing {p}")
    for i, j in itertools.combinations(range(rep.rank), 2):
        gi, gj = rep.generators[i], rep.generators[j]
        if gi.mul(gj) != gj.mul(gi):
            out.append(f"generators {i} and {j} do not commute")
    return out


def require_valid(rep: Rep) -> None:
    violations = validate(rep)
    if violations:
        raise RepValidationError(violations)


def fixed_space(rep: Rep) -> Subspace:
    """Common fixed vectors of all generators."""
    space = Subspace.full(rep.ctx, rep.dim)
    ident = MatrixFF.identity(rep.ctx, rep.dim)
    for g in rep.generators:
        space = ff.intersect(space, ff.kernel(g.sub(ident)))
    return space


def socle_filtration(rep: Rep) -> list[Subspace]:
    """Ascending chain J_0 <= J_1 <= ... ending at the full space, J_i
    the vectors killed by the (i+1)-st power of the augmentation ideal.

    Computed by quotient iteration (J_i pulls back the fixed space of
    the quotient by J_{i-1}) and independently by annihilators of
    generator-difference products; the two must agree."""
    by_quotient = socle_filtration_by_quotients(rep)
    by_annihilator = socle_filtration_by_annihilators(rep)
    if by_quotient != by_annihilator:
        raise AssertionError(
            "socle filtration mismatch between quotient iteration and "
            "augmentation-ideal annihilators"
        )
    full = Subspace.full(rep.ctx, rep.dim)
    for prev, cur in zip(by_quotient, by_quotient[1:]):
        if prev.dim >= cur.dim:
            raise AssertionError("socle filtration failed to grow strictly")
    if by_quotient[-1] != full:
        raise AssertionError("socle filtration did not reach the full space")
    return by_quotient


def socle_filtration_by_quotients(rep: Rep) -> list[Subspace]:
    ctx = rep.ctx
    ident = MatrixFF.identity(ctx, rep.dim)
    diffs = [g.sub(ident) for g in rep.generators]
    full = Subspace.full(ctx, rep.dim)
    stages = [fixed_space(rep)]
    while stages[-1] != full:
        prev = stages[-1]
        cur = full
        for d in diffs:
            cur = ff.intersect(cur, ff.preimage(d, prev))
        if cur.dim <= prev.dim:
            raise AssertionError(
                "socle filtration stalled (is the action unipotent?)"
            )
        stages.append(cur)
    return stages


def socle_filtration_by_annihilators(rep: Rep) -> list[Subspace]:
    ctx = rep.ctx
    ident = MatrixFF.identity(ctx, rep.dim)
    diffs = [g.sub(ident) for g in rep.generators]
    full = Subspace.full(ctx, rep.dim)
    stages = []
    # products of generator differences over multisets of growing size
    # (differences commute, so multisets exhaust the ideal powers)
    products = [(ident, 0)]
    while True:
        new_products = []
        for mat, start in products:
            for j in range(start, len(diffs)):
                new_products.append((mat.mul(diffs[j]), j))
        products = new_products
        stage = full
        for mat, _ in products:
            stage = ff.intersect(stage, ff.kernel(mat))
        stages.append(stage)
        if stage == full:
            return stages
        if len(stages) > rep.dim:
            raise AssertionError(
                "socle filtration stalled (is the action unipotent?)"
            )


def restrict(rep: Rep, space: Subspace) -> Rep:
    """Induced action on an invariant subspace, in its echelon basis."""
    ctx = rep.ctx
    pivots = space.pivot_columns()
    gens = []
    for idx, g in enumerate(rep.generators):
        rows = []
        images = []
        for v in space.basis:
            w = g.matvec(v)
            if not space.contains(w):
                raise ff.DimensionError(f"subspace not invariant under generator {idx}")
            images.append(w)
        # coordinates in the echelon basis read off at the pivot columns
        for c in pivots:
            rows.append([w[c] for w in images])
        gens.append(MatrixFF(ctx, rows))
    return Rep(ctx, space.dim, tuple(gens))


def quotient(rep: Rep, space: Subspace) -> Rep:
    """Induced action on the quotient, in the coset basis of the
    standard vectors at non-pivot coordinates."""
    ctx = rep.ctx
    ident = MatrixFF.identity(ctx, rep.dim)
    for idx, g in enumerate(rep.generators):
        for v in space.basis:
            if not space.contains(g.matvec(v)):
                raise ff.DimensionError(f"subspace not invariant under generator {idx}")
    pivot_set = set(space.pivot_columns())
    coset = [j for j in range(rep.dim) if j not in pivot_set]
    gens = []
    for g in rep.generators:
        cols = []
        for j in coset:
            w = space.reduce(g.matvec(ident.rows[j]))
            cols.append([w[c] for c in coset])
        gens.append(MatrixFF(ctx, list(zip(*cols))))
    return Rep(ctx, len(coset), tuple(gens))


def quotient_vector(space: Subspace, v) -> tuple:
    """Coordinates of v + space in the coset basis used by quotient()."""
    pivot_set = set(space.pivot_columns())
    coset = [j for j in range(space.ambient_dim) if j not in pivot_set]
    w = space.reduce(v)
    return tuple(w[c] for c in coset)


# -- constructions -----------------------------------------------------------


def basic_rep(p: int, r: int, n: int, modulus=None) -> PointedRep:
    """The (n+1)-dimensional representation of GF(p^r)^n where the group
    vector adds its pairing against the tail coordinates into the head;
    emitted with r*n generators indexed by the field basis t^j in each of
    the n slots, so the abstract group is F_p^(r n)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    ctx = FieldCtx(p, r, modulus)
    gens = []
    for i in range(1, n + 1):
        for j in range(r):
            rows = [list(row) for row in MatrixFF.identity(ctx, n + 1).rows]
            rows[0][i] = ctx.pow(ctx.gen(), j) if r > 1 else ctx.one
            gens.append(MatrixFF(ctx, rows))
    basepoint = (ctx.one,) + (ctx.zero,) * n
    return PointedRep(Rep(ctx, n + 1, tuple(gens)), basepoint)


def sym_power_rep(p: int, r: int, modulus=None) -> Rep:
    """(p-1)-st symmetric power of the standard 2-dimensional unipotent
    action of GF(p^r): on the basis e1^(p-1-j) e2^j the field element a
    maps column j to sum_l C(j, l) a^(j-l) at row l."""
    ctx = FieldCtx(p, r, modulus)
    gens = []
    for jj in range(r):
        a = ctx.pow(ctx.gen(), jj) if r > 1 else ctx.one
        a_pows = [ctx.one]
        for _ in range(p - 1):
            a_pows.append(ctx.mul(a_pows[-1], a))
        rows = []
        for l in range(p):
            row = []
            for j in range(p):
                if l > j:
                    row.append(ctx.zero)
                else:
                    row.append(ctx.smul(math.comb(j, l), a_pows[j - l]))
            rows.append(row)
        gens.append(MatrixFF(ctx, rows))
    return Rep(ctx, p, tuple(gens))


def tensor_rep(r1: Rep, r2: Rep) -> Rep:
    """External tensor product: generator lists concatenate with
    Kronecker factors against identities."""
    if r1.ctx != r2.ctx:
        raise ff.DimensionError("field context mismatch")
    ctx = r1.ctx
    id1 = MatrixFF.identity(ctx, r1.dim)
    id2 = MatrixFF.identity(ctx, r2.dim)
    gens = [g.kron(id2) for g in r1.generators]
    gens += [id1.kron(h) for h in r2.generators]
    return Rep(ctx, r1.dim * r2.dim, tuple(gens))


def big_rep(p: int, r: int, n: int, modulus=None) -> Rep:
    """n-fold external tensor power of the symmetric-power block: a
    p^n-dimensional representation whose second socle stage carries the
    rank-n basic representation."""
    if n < 1:
        raise ValueError("n must be >= 1")
    out = sym_power_rep(p, r, modulus)
    for _ in range(n - 1):
        out = tensor_rep(out, sym_power_rep(p, r, modulus))
    return out


def direct_sum(r1: Rep, r2: Rep) -> Rep:
    """External direct sum: block-diagonal generators, concatenated."""
    if r1.ctx != r2.ctx:
        raise ff.DimensionError("field context mismatch")
    ctx = r1.ctx
    id1 = MatrixFF.identity(ctx, r1.dim)
    id2 = MatrixFF.identity(ctx, r2.dim)
    gens = [g.block_diag(id2) for g in r1.generators]
    gens += [id1.block_diag(h) for h in r2.generators]
    return Rep(ctx, r1.dim + r2.dim, tuple(gens))


def wedge_sum(p1: PointedRep, p2: PointedRep) -> PointedRep:
    """Quotient of the direct sum identifying the two basepoints; the
    common image becomes the new basepoint."""
    if p1.rep.ctx != p2.rep.ctx:
        raise ff.DimensionError("field context mismatch")
    ctx = p1.rep.ctx
    total = direct_sum(p1.rep, p2.rep)
    glue_vec = tuple(p1.basepoint) + tuple(ctx.neg(e) for e in p2.basepoint)
    glue = Subspace.from_vectors(ctx, total.dim, [glue_vec])
    quo = quotient(total, glue)
    base = quotient_vector(glue, tuple(p1.basepoint) + (ctx.zero,) * p2.rep.dim)
    return PointedRep(quo, base)


def dual_rep(rep: Rep) -> Rep:
    """Inverse-transpose on every generator."""
    return Rep(
        rep.ctx,
        rep.dim,
        tuple(g.inverse().transpose() for g in rep.generators),
    )


def regular_rep(p: int, n: int) -> Rep:
    """Translation action of F_p^n on itself by permutation matrices
    (prime field only)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    ctx = FieldCtx(p, 1)
    vectors = list(itertools.product(range(p), repeat=n))
    index = {v: i for i, v in enumerate(vectors)}
    gens = []
    for i in range(n):
        rows = [[ctx.zero] * len(vectors) for _ in vectors]
        for v, col in index.items():
            shifted = tuple(
                (c + (1 if j == i else 0)) % p for j, c in enumerate(v)
            )
            rows[index[shifted]][col] = ctx.one
        gens.append(MatrixFF(ctx, rows))
    return Rep(ctx, len(vectors), tuple(gens))


def pullback(rep: Rep, exponent_matrix) -> Rep:
    """Precompose with the homomorphism F_p^s' -> F_p^s whose matrix has
    the given integer columns: new generator l is the element with
    exponent vector column l."""
    cols = len(exponent_matrix[0]) if exponent_matrix else 0
    gens = []
    for l in range(cols):
        gens.append(rep.element([row[l] for row in exponent_matrix]))
    return Rep(rep.ctx, rep.dim, tuple(gens))


# -- classification ----------------------------------------------------------


@dataclass(frozen=True)
class Reduction:
    """Outcome of reducing a representation's classes to a basic model.

    verdict 'zero' means every class vanishes (fixed space too large);
    'reduced' carries the quotient rank m, the projection F_p^s -> F_p^m
    (rows of integer residues), and, when available, the rank-m basic
    representation the classes pull back from."""

    verdict: str
    quotient_rank: int | None = None
    projection: tuple | None = None
    basic_model: PointedRep | None = None


def _trivial_subgroup(rep: Rep, space: Subspace) -> Subspace:
    """Exponent vectors (over F_p) of group elements acting as the
    identity on the invariant subspace: since squared generator
    differences kill it, elements act there by identity plus the linear
    combination of generator differences, so the condition is F_p-linear."""
    sub = restrict(rep, space)
    ident = MatrixFF.identity(rep.ctx, space.dim)
    diffs = [g.sub(ident) for g in sub.generators]
    pctx = FieldCtx(rep.ctx.p, 1)
    rows = []
    for u in range(space.dim):
        for v in range(space.dim):
            for w in range(rep.ctx.r):
                rows.append([pctx.scalar(d.rows[u][v][w]) for d in diffs])
    if not rows:
        rows = [[pctx.zero] * rep.rank]
    return ff.kernel(MatrixFF(pctx, rows))


def classify(rep: Rep) -> Reduction:
    """Zero verdict when the fixed space has dimension >= 2 (or the rep
    is too small to carry classes); otherwise find the subgroup acting
    trivially on the second socle stage, and return the projection to
    the quotient together with the basic model of that rank."""
    require_valid(rep)
    if rep.dim < 2:
        return Reduction("zero")
    stages = socle_filtration(rep)
    if stages[0].dim != 1:
        return Reduction("zero")
    j1 = stages[1] if len(stages) > 1 else stages[0]
    kernel_group = _trivial_subgroup(rep, j1)
    s = rep.rank
    m = s - kernel_group.dim
    pctx = kernel_group.ctx
    pivot_set = set(kernel_group.pivot_columns())
    coset = [j for j in range(s) if j not in pivot_set]
    cols = []
    for j in range(s):
        e = tuple(pctx.one if t == j else pctx.zero for t in range(s))
        w = kernel_group.reduce(e)
        cols.append([w[c][0] for c in coset])
    projection = tuple(tuple(col[i] for col in cols) for i in range(m))
    model = _basic_model(rep, j1, coset, m)
    return Reduction("reduced", m, projection, model)


def _basic_model(rep: Rep, j1: Subspace, coset, m: int) -> PointedRep | None:
    """Basic representation matching the faithful quotient action on the
    second socle stage, verified by explicit conjugation.  Over the
    prime field it always exists; over extension fields it requires
    r | m and the generators to align with a field structure, else
    None."""
    r = rep.ctx.r
    if m < 1 or m % r:
        return None
    restricted = restrict(rep, j1)
    faithful = Rep(rep.ctx, j1.dim, tuple(restricted.generators[c] for c in coset))
    if r == 1:
        iso_to_basic(faithful)
    else:
        try:
            iso_to_basic(faithful)
        except ReductionError:
            return None
    return basic_rep(rep.ctx.p, r, m // r, rep.ctx.modulus)


def iso_to_basic(rep: Rep) -> MatrixFF:
    """Change of basis T with T g T^-1 the basic-representation matrix of
    every generator, for a faithful rep killed by squared augmentation
    with a one-dimensional fixed space.

    The pairing sending (generator l, complement vector v) to the fixed
    line coefficient of (g_l - 1)v must be perfect and, over extension
    fields, scale by t^j along each slot's generator block."""
    require_valid(rep)
    ctx = rep.ctx
    if rep.dim < 2:
        raise ReductionError("basic models need dimension >= 2")
    stages = socle_filtration(rep)
    problems = []
    if stages[0].dim != 1:
        problems.append(f"fixed space has dimension {stages[0].dim}, need 1")
    if len(stages) > 2:
        problems.append("second socle stage is a proper subspace")
    n = rep.dim - 1
    if rep.rank != ctx.r * n:
        problems.append(
            f"group rank {rep.rank} != r * (dim - 1) = {ctx.r * n}"
        )
    if problems:
        raise ReductionError("; ".join(problems))
    j0 = stages[0]
    w0 = j0.basis[0]
    pivot = j0.pivot_columns()[0]
    coords = [j for j in range(rep.dim) if j != pivot]
    ident = MatrixFF.identity(ctx, rep.dim)
    pairing = []
    for g in rep.generators:
        diff = g.sub(ident)
        row = []
        for c in coords:
            image = diff.matvec(ident.rows[c])
            coeff = image[pivot]
            if tuple(ctx.mul(coeff, e) for e in w0) != image:
                raise ReductionError(
                    "generator difference does not land on the fixed line"
                )
            row.append(coeff)
        pairing.append(row)
    # one basis slot per generator block; powers of t must scale in step
    base = [pairing[i * ctx.r] for i in range(n)]
    if ctx.r > 1:
        t = ctx.gen()
        for i in range(n):
            for j in range(1, ctx.r):
                tj = ctx.pow(t, j)
                expected = [ctx.mul(tj, e) for e in base[i]]
                if pairing[i * ctx.r + j] != expected:
                    raise ReductionError(
                        "generators are not aligned with the field structure "
                        f"(slot {i}, power {j})"
                    )
    pairing_matrix = MatrixFF(ctx, base)
    if pairing_matrix.rank() != n:
        raise ReductionError("pairing against the fixed line is degenerate")
    # build T = V U^-1 with U the (fixed, complement) basis and V mapping
    # it onto the basic layout
    u_cols = [list(w0)] + [
        [ctx.one if t == c else ctx.zero for t in range(rep.dim)] for c in coords
    ]
    u_matrix = MatrixFF(ctx, list(zip(*u_cols)))
    v_rows = [[ctx.zero] * rep.dim for _ in range(rep.dim)]
    v_rows[0][0] = ctx.one
    for i in range(n):
        for c_idx in range(n):
            v_rows[1 + i][1 + c_idx] = pairing_matrix.rows[i][c_idx]
    v_matrix = MatrixFF(ctx, v_rows)
    t_matrix = v_matrix.mul(u_matrix.inverse())
    target = basic_rep(ctx.p, ctx.r, n, ctx.modulus)
    t_inv = t_matrix.inverse()
    for g, b in zip(rep.generators, target.rep.generators):
        if t_matrix.mul(g).mul(t_inv) != b:
            raise ReductionError("conjugation does not reach the basic matrices")
    return t_matrix


def chi_of_rep(rep: Rep, k: int) -> MultiPoly:
    """The y^k class of an arbitrary prime-field rep, as a polynomial in
    one variable per generator: zero verdict gives 0, otherwise the
    basic answer for the quotient rank pulled back along the projection."""
    if rep.ctx.r != 1:
        raise ValueError("polynomial classes of arbitrary reps need r = 1")
    if k < 1:
        raise ValueError("k must be >= 1")
    p = rep.ctx.p
    red = classify(rep)
    if red.verdict == "zero":
        return MultiPoly.zero(p, rep.rank)
    base = chi_via_power_sum(p, red.quotient_rank, k)
    return base.substitute([list(row) for row in red.projection], rep.rank)


def socle_tensor_check(r1: Rep, r2: Rep, i: int) -> bool:
    """Stage i of the tensor product's socle filtration must equal the
    sum of J_a tensor J_b over a + b = i."""
    product = tensor_rep(r1, r2)
    stages = socle_filtration(product)
    lhs = stages[min(i, len(stages) - 1)]
    f1 = socle_filtration(r1)
    f2 = socle_filtration(r2)
    ctx = product.ctx
    rhs = Subspace.zero_space(ctx, product.dim)
    for a in range(i + 1):
        b = i - a
        s1 = f1[min(a, len(f1) - 1)]
        s2 = f2[min(b, len(f2) - 1)]
        vecs = []
        for u in s1.basis:
            for v in s2.basis:
                vecs.append(tuple(ctx.mul(x, y) for x in u for y in v))
        rhs = rhs.sum(Subspace.from_vectors(ctx, product.dim, vecs))
    return lhs == rhs


# -- serialization -----------------------------------------------------------


def _entry_to_json(ctx: FieldCtx, e):
    return e[0] if ctx.r == 1 else list(e)


def rep_to_dict(rep: Rep, basepoint=None) -> dict:
    ctx = rep.ctx
    out = {
        "p": ctx.p,
        "r": ctx.r,
        "modulus": list(ctx.modulus),
        "dim": rep.dim,
        "generators": [
            [[_entry_to_json(ctx, e) for e in row] for row in g.rows]
            for g in rep.generators
        ],
    }
    if basepoint is not None:
        out["basepoint"] = [_entry_to_json(ctx, e) for e in basepoint]
    return out


def rep_from_dict(obj: dict) -> tuple[Rep, tuple | None]:
    """Parse the JSON representation file shape; returns the rep and the
    optional basepoint.  Raises ValueError with field context on bad
    input."""
    try:
        p = int(obj["p"])
        r = int(obj.get("r", 1))
        dim = int(obj["dim"])
        gen_entries = obj["generators"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"representation file missing or bad field: {exc}") from exc
    modulus = obj.get("modulus")
    ctx = FieldCtx(p, r, tuple(modulus) if modulus is not None else None)
    gens = []
    for gi, mat in enumerate(gen_entries):
        if len(mat) != dim or any(len(row) != dim for row in mat):
            raise ValueError(f"generator {gi} is not {dim}x{dim}")
        try:
            gens.append(MatrixFF.from_ints(ctx, mat))
        except (ff.FieldError, TypeError) as exc:
            raise ValueError(f"generator {gi}: {exc}") from exc
    rep = Rep(ctx, dim, tuple(gens))
    basepoint = None
    if "basepoint" in obj:
        raw = obj["basepoint"]
        if len(raw) != dim:
            raise ValueError("basepoint length != dim")
        basepoint = tuple(
            ctx.scalar(e) if isinstance(e, int) else ctx.from_coeffs(e) for e in raw
        )
    return rep, basepoint
