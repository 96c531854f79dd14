"""The staged decision procedure for link-homotopy of 4- and 5-component links.

Two links are link-homotopic exactly when their invariant vectors lie in one
orbit of the simplified partial-conjugation generators.  Every generator
moves a coordinate by a polynomial in strictly lower-degree coordinates, so
the orbit problem splits into stages: the linking numbers must match
outright; the degree-2 difference must be an integer combination of the
generators' degree-2 increment columns; the stabilizer of the degree-2 data
(homogeneous solutions plus the commutator family) provides the columns for
degree 3; and, for five components, the degree-3 stabilizer plus the nested
commutators settle degree 4.  On a fixed lower-degree fiber each stage
generator translates its block by a constant column, so every stage is an
exact linear Diophantine system and the stage solutions concatenate into a
witness word whose replay maps one vector onto the other, exactly.

`decide` runs the stages and returns a `Verdict`; `normal_form` canonicalizes
a vector by Hermite residue reduction over the same stage lattices; and
`orbit_bfs` is the deliberately naive bounded orbit enumeration the test
suite uses as an independent oracle.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Optional

from . import action, intlattice
from .errors import SchemeError
from .intlattice import IntMatrix, _xgcd
from .model import (
    Commutator,
    GeneratorId,
    GeneratorWord,
    InvariantVector,
    load_scheme,
    load_shipped_table,
)

# The frozen generator orders of the 8- and 15-relation presentations.  The
# erased columns (x̄'_i4-style products that multiply to the identity) are
# omitted; everything downstream — stage matrices, witness words, orbit
# moves — uses exactly these generators in exactly this order.
GENERATOR_ORDER = {
    4: ("12", "13", "21", "23", "31", "32", "41", "42"),
    5: ("12", "13", "14", "21", "23", "24", "31", "32", "34",
        "41", "42", "43", "51", "52", "53"),
}


@dataclass(frozen=True)
class Verdict:
    """Outcome of `decide`: witness present iff equivalent, stage iff not."""

    equivalent: bool
    witness: Optional[GeneratorWord] = None
    failed_stage: Optional[int] = None

    def __post_init__(self):
        if self.equivalent and (self.witness is None or self.failed_stage is not None):
            raise ValueError("an equivalent verdict carries a witness and no stage")
        if not self.equivalent and (self.witness is not None or self.failed_stage is None):
            raise ValueError("a negative verdict carries a failed stage and no witness")


# ---------------------------------------------------------------------------
# factor maps and word replay
# ---------------------------------------------------------------------------

_SHIPPED_BY_FAMILY = {"raw": "partial_conj", "simplified": "simplified", "conj": "conjugations"}
_FACTOR_MAPS = {}


def factor_map(scheme, factor):
    """The ActionMap of one word factor, cached per (n, token).

    A commutator factor [a, b] expands by the word convention: a acts first,
    then b, then a⁻¹, then b⁻¹.  This is the single definition both `decide`
    (building stage generators) and witness replay go through, which is what
    makes witnesses exact.
    """
    key = (scheme.n, factor.token)
    got = _FACTOR_MAPS.get(key)
    if got is None:
        if isinstance(factor, Commutator):
            a = factor_map(scheme, factor.left)
            b = factor_map(scheme, factor.right)
            got = action.compose_sequence([a, b, action.invert(a), action.invert(b)])
        elif isinstance(factor, GeneratorId):
            factor.check_in(scheme)
            table = load_shipped_table(f"{_SHIPPED_BY_FAMILY[factor.family]}_{scheme.n}")
            got = action.from_table(table, factor.token)
        else:
            raise SchemeError(f"not a word factor: {factor!r}")
        _FACTOR_MAPS[key] = got
    return got


def apply_word(word, v):
    """Replay a word on a vector, leftmost factor first."""
    for factor, exp in word:
        v = action.apply_power(factor_map(v.scheme, factor), exp, v)
    return v


def word_map(word, scheme):
    """The composite ActionMap of a word (leftmost factor acts first)."""
    maps = [action.power(factor_map(scheme, f), e) for f, e in word]
    return action.compose_sequence(maps, scheme=scheme)


def _invert_factors(factors):
    return tuple((f, -e) for f, e in reversed(factors))


def _repeat_factors(factors, k):
    """The factor list of (factors)^k.

    A single factor keeps its exponent (x^e repeated k times is x^(e·k));
    longer words — which the word grammar cannot parenthesize — expand by
    repetition, negative powers via the reversed-negated word.
    """
    if k == 0:
        return ()
    if len(factors) == 1:
        factor, exp = factors[0]
        return ((factor, exp * k),)
    if k < 0:
        return _invert_factors(factors) * (-k)
    return tuple(factors) * k


def _apply_factors(factors, v):
    for factor, exp in factors:
        v = action.apply_power(factor_map(v.scheme, factor), exp, v)
    return v


# ---------------------------------------------------------------------------
# per-n context: generator ids and commutator factor words
# ---------------------------------------------------------------------------

def _pair_label_ids(label):
    """'[x_21,x_31]' → the two index pairs as simplified-generator ids."""
    left, right = label[1:-1].split(",")
    return (GeneratorId("simplified", int(left[2]), int(left[3])),
            GeneratorId("simplified", int(right[2]), int(right[3])))


class _Context:
    """Frozen per-n machinery shared by decide, normal_form, and orbit_bfs."""

    __slots__ = ("scheme", "generator_ids", "commutator_factors", "triple_factors")

    def __init__(self, n):
        self.scheme = load_scheme(n)
        self.generator_ids = tuple(
            GeneratorId("simplified", int(t[0]), int(t[1])) for t in GENERATOR_ORDER[n]
        )
        # Stage-3 commutator factors, in the order the commutator table lists
        # them; the table's raw-generator labels name the pairs, the factors
        # themselves are words in the simplified generators.
        pairs = load_shipped_table(f"commutators_{n}").labels
        self.commutator_factors = tuple(
            Commutator(*_pair_label_ids(label)) for label in pairs
        )
        if n == 5:
            triple_labels = load_shipped_table("triple_commutators_5").labels
            factors = []
            for label in triple_labels:
                outer, inner = label[1:-1].split(",", 1)
                outer_id = GeneratorId("simplified", int(outer[2]), int(outer[3]))
                factors.append(Commutator(outer_id, Commutator(*_pair_label_ids(inner))))
            self.triple_factors = tuple(factors)
        else:
            self.triple_factors = ()


_CONTEXTS = {}


def _context(n):
    ctx = _CONTEXTS.get(n)
    if ctx is None:
        ctx = _Context(n)
        _CONTEXTS[n] = ctx
    return ctx


def generators(n):
    """The frozen simplified-generator ids of the n-component presentation."""
    return _context(n).generator_ids


# ---------------------------------------------------------------------------
# stage machinery
# ---------------------------------------------------------------------------

def _increment_columns(words, current, degree):
    """Each word's translation column on the degree-`degree` block at `current`.

    Every word handed in fixes all lower-degree coordinates at this state, so
    its effect on the block is a constant translation there; applying the word
    once reads the column off exactly.
    """
    syms = current.scheme.symbols_of_degree(degree)
    cols = []
    for factors in words:
        moved = _apply_factors(factors, current)
        cols.append(tuple(moved.value(s) - current.value(s) for s in syms))
    return cols


def _shrink_basis(K, weights=None):
    """Size-reduce a kernel basis (columns) so word expansion stays cheap.

    Greedy pairwise integer reductions are unimodular column operations —
    the spanned lattice is unchanged — and strictly decrease the basis
    norm, so this terminates.  The optional weights make coordinates
    expensive in proportion to the factor count of the word they multiply,
    steering the basis toward combinations of short words.
    """
    if K.cols <= 1:
        return K
    if weights is None:
        sq = (1,) * K.rows
    else:
        sq = tuple(w * w for w in weights)

    def norm(v):
        return sum(w * x * x for w, x in zip(sq, v))

    basis = [list(K.column(j)) for j in range(K.cols)]
    changed = True
    sweeps = 0
    while changed and sweeps < 64:
        changed = False
        sweeps += 1
        basis.sort(key=lambda v: (norm(v), v))
        for i in range(len(basis)):
            norm_i = norm(basis[i])
            for j in range(len(basis)):
                if i == j:
                    continue
                denom = norm(basis[j])
                if denom == 0:
                    continue
                num = sum(w * a * b for w, a, b in zip(sq, basis[i], basis[j]))
                q = (2 * num + denom) // (2 * denom)
                if q == 0:
                    continue
                candidate = [a - q * b for a, b in zip(basis[i], basis[j])]
                norm_c = norm(candidate)
                if norm_c < norm_i:
                    basis[i] = candidate
                    norm_i = norm_c
                    changed = True
    return IntMatrix.from_columns([tuple(v) for v in basis])


def _echelon_basis(cols, dim):
    """Echelon basis of the lattice the columns span, with expressions.

    Hermite transforms of wide systems routinely blow up to hundred-digit
    entries; building the basis one column at a time, and reducing every
    expression eagerly modulo the relations already found, keeps every
    number on the scale of the data.  Each bookkeeping step is an
    elementary unimodular operation on the expression rows, so the relation
    list is a genuine basis of all integer relations among the columns.

    Returns (rows, relations): rows[p] is None or a (vector, expression)
    pair whose vector has its first nonzero entry — the positive pivot — at
    coordinate p and whose expression writes the vector as an integer
    combination of the input columns; relations holds one kernel vector per
    dependent column, kept echelon by last nonzero index.
    """
    ncols = len(cols)
    rows = [None] * dim
    rel_pivots = {}

    def reduce_expr(expr):
        for j in sorted(rel_pivots, reverse=True):
            rel = rel_pivots[j]
            q = expr[j] // rel[j]
            if q:
                expr = [a - q * b for a, b in zip(expr, rel)]
        return expr

    def add_relation(expr):
        while True:
            expr = reduce_expr(expr)
            last = next((i for i in range(ncols - 1, -1, -1) if expr[i]), None)
            assert last is not None, "relation bookkeeping degenerated"
            if expr[last] < 0:
                expr = [-a for a in expr]
            other = rel_pivots.get(last)
            if other is None:
                rel_pivots[last] = expr
                return
            g, s, t = _xgcd(other[last], expr[last])
            u, w = other[last] // g, expr[last] // g
            rel_pivots[last] = [s * a + t * b for a, b in zip(other, expr)]
            expr = [u * b - w * a for a, b in zip(other, expr)]

    for j, col in enumerate(cols):
        vec = list(col)
        expr = [0] * ncols
        expr[j] = 1
        while True:
            p = next((i for i, a in enumerate(vec) if a), None)
            if p is None:
                add_relation(expr)
                break
            if rows[p] is None:
                if vec[p] < 0:
                    vec = [-a for a in vec]
                    expr = [-a for a in expr]
                rows[p] = (vec, reduce_expr(expr))
                break
            rvec, rexpr = rows[p]
            d, e = rvec[p], vec[p]
            if e % d == 0:
                q = e // d
                vec = [a - q * b for a, b in zip(vec, rvec)]
                expr = [a - q * b for a, b in zip(expr, rexpr)]
            else:
                g, s, t = _xgcd(d, e)
                u, w = d // g, e // g
                rows[p] = (
                    [s * a + t * b for a, b in zip(rvec, vec)],
                    reduce_expr([s * a + t * b for a, b in zip(rexpr, expr)]),
                )
                vec = [u * b - w * a for a, b in zip(rvec, vec)]
                expr = [u * b - w * a for a, b in zip(rexpr, expr)]
    relations = [rel_pivots[j] for j in sorted(rel_pivots)]
    for p in range(dim):
        if rows[p] is not None:
            rows[p] = (rows[p][0], reduce_expr(rows[p][1]))
    return rows, relations


def _solve_columns(cols, b):
    """All integer solutions of Σ x_j·cols[j] = b, kept small.

    Returns None when b is outside the column lattice, else (x0, relations)
    with x0 a particular solution and relations a kernel basis.
    """
    rows, relations = _echelon_basis(cols, len(b))
    x = [0] * len(cols)
    residual = list(b)
    for p in range(len(b)):
        if residual[p] == 0:
            continue
        if rows[p] is None:
            return None
        rvec, rexpr = rows[p]
        if residual[p] % rvec[p]:
            return None
        q = residual[p] // rvec[p]
        residual = [a - q * bb for a, bb in zip(residual, rvec)]
        x = [a + q * bb for a, bb in zip(x, rexpr)]
    return x, relations


def _relation_matrix(relations, nwords):
    """Kernel relations as matrix columns (an empty matrix when none)."""
    if not relations:
        return IntMatrix.zeros(nwords, 0)
    return IntMatrix.from_columns([tuple(r) for r in relations])


def _split_columns(cols):
    """Distinct nonzero columns plus the bookkeeping to rebuild full data.

    Returns (unique, reps, zeros, dups): the distinct nonzero columns, the
    word index each represents, the indices of zero columns, and (i, rep)
    pairs for repeated columns.  Zero and repeated columns are worth
    stripping before the lattice work — they contribute kernel directions
    (w_i and w_i·w_rep⁻¹) that are cheaper to write down directly than to
    recover from a Hermite transform.
    """
    unique, reps, zeros, dups = [], [], [], []
    seen = {}
    for i, col in enumerate(cols):
        if not any(col):
            zeros.append(i)
        elif col in seen:
            dups.append((i, seen[col]))
        else:
            seen[col] = i
            unique.append(col)
            reps.append(i)
    return unique, reps, zeros, dups


def _kernel_words(words, reps, K):
    """Words realizing a kernel basis: column j gives ∏ words[reps[i]]^K[i][j]."""
    out = []
    for col in range(K.cols):
        factors = []
        for row in range(K.rows):
            factors.extend(_repeat_factors(words[reps[row]], K.data[row][col]))
        if factors:
            out.append(tuple(factors))
    return out


def _next_words(ctx, words, K, reps, zeros, dups, matched_degree):
    """The stabilizer words feeding the next stage.

    The kernel of the solved system splits into the reduced-system kernel
    (realized through the representative words), one word per zero column,
    and w_i·w_rep⁻¹ per duplicated column; together they span every word
    combination fixing the block just matched.  The commutator family for
    the next degree joins them.  Shortest words come first so the next
    stage's particular solutions land on the cheapest spellings.
    """
    out = list(_kernel_words(words, reps, K))
    for z in zeros:
        out.append(words[z])
    for i, rep in dups:
        out.append(tuple(words[i]) + _invert_factors(words[rep]))
    out.extend(_stage_extras(ctx, matched_degree))
    out.sort(key=len)
    return tuple(out)


def _stage_extras(ctx, matched_degree):
    """Commutator-family words that enter after a block has been matched."""
    if matched_degree == 2:
        return tuple(((f, 1),) for f in ctx.commutator_factors)
    if matched_degree == 3:
        return tuple(((f, 1),) for f in ctx.triple_factors)
    return ()


def _reduce_exponents(x0, K, weights=None):
    """Shrink a particular solution modulo the kernel lattice (shorter words).

    Subtracting kernel vectors never changes what the word does to the
    stage block.  Particular solutions arrive with entries the kernel can
    absorb almost entirely, but one projection at a time stalls hopelessly
    far from the lattice point they hide; the nearest-plane walk over the
    exact Gram–Schmidt frame of the (already size-reduced) basis gets
    within a basis-quality factor of it in one pass, and greedy sweeps mop
    up after.  The weighted norm measures the expanded word length, so
    exponent mass migrates onto the words that are cheapest to spell out.
    """
    x = list(x0)
    if K.cols == 0:
        return x
    if weights is None:
        sq = (1,) * K.rows
    else:
        sq = tuple(w * w for w in weights)

    def norm(v):
        return sum(w * a * a for w, a in zip(sq, v))

    def inner(u, v):
        return sum(w * a * b for w, a, b in zip(sq, u, v))

    basis = [K.column(j) for j in range(K.cols)]
    # Float Gram–Schmidt frame.  Floats only ever pick coefficients; the
    # subtractions stay integer, so a sloppy coefficient can never change
    # the residue class — at worst a pass reduces less than it could.  Each
    # pass eats what float precision reaches (~15 digits), so a handful of
    # passes walks arbitrarily large entries down; the exact-norm guard
    # stops and reverts if rounding noise ever makes a pass regress.
    star = []
    for b in basis:
        adjusted = [float(a) for a in b]
        for prev, prev_norm in star:
            if prev_norm <= 0.0:
                continue
            coeff = sum(w * a * p for w, a, p in zip(sq, adjusted, prev)) / prev_norm
            if coeff:
                adjusted = [a - coeff * p for a, p in zip(adjusted, prev)]
        star.append((adjusted, sum(w * a * a for w, a in zip(sq, adjusted))))
    def nearest_coeff(candidate, braw, bnorm):
        # Entries can exceed float range; shift the integers down first and
        # scale the quotient back up through its mantissa.  Truncation only
        # costs precision the later passes recover anyway.
        top = max((abs(a) for a in candidate), default=0)
        shift = max(0, top.bit_length() - 500)
        proj = sum(
            w * float(a >> shift if shift else a) * p
            for w, a, p in zip(sq, candidate, braw)
        ) / bnorm
        if not math.isfinite(proj):
            return 0
        if not shift:
            return round(proj)
        mant, exp2 = math.frexp(proj)
        scaled = round(mant * (1 << 53))
        exp2 += shift - 53
        if exp2 >= 0:
            return scaled << exp2
        if scaled >= 0:
            return scaled >> -exp2
        return -((-scaled) >> -exp2)

    best = norm(x)
    for _ in range(48):
        moved = False
        candidate = x
        for j in range(len(basis) - 1, -1, -1):
            braw, bnorm = star[j]
            if bnorm <= 0.0:
                continue
            c = nearest_coeff(candidate, braw, bnorm)
            if c:
                candidate = [a - c * entry for a, entry in zip(candidate, basis[j])]
                moved = True
        if not moved:
            break
        now = norm(candidate)
        if now >= best:
            break
        x = candidate
        best = now
    norms = [norm(b) for b in basis]
    changed = True
    sweeps = 0
    while changed and sweeps < 16:
        changed = False
        sweeps += 1
        for b, denom in zip(basis, norms):
            if denom == 0:
                continue
            num = inner(x, b)
            q = (2 * num + denom) // (2 * denom)
            if q == 0:
                continue
            candidate = [a - q * entry for a, entry in zip(x, b)]
            if norm(candidate) < norm(x):
                x = candidate
                changed = True
    return x


def decide(left, right):
    """Decide link-homotopy of two invariant vectors.

    Returns a Verdict.  When equivalent, the witness word replays exactly:
    apply_word(verdict.witness, left) == right.  When not, failed_stage
    names the first block (1 = linking numbers, then degree 2, 3, 4) whose
    difference is not reachable.
    """
    if left.scheme.n != right.scheme.n:
        raise SchemeError(
            f"cannot compare an n={left.scheme.n} vector with n={right.scheme.n}"
        )
    scheme = left.scheme
    if left.degree_values(1) != right.degree_values(1):
        return Verdict(False, failed_stage=1)
    ctx = _context(scheme.n)
    current = left
    words = tuple(((gid, 1),) for gid in ctx.generator_ids)
    witness = []
    for degree in range(2, scheme.max_degree + 1):
        cols = _increment_columns(words, current, degree)
        unique, reps, zeros, dups = _split_columns(cols)
        syms = scheme.symbols_of_degree(degree)
        b = [right.value(s) - current.value(s) for s in syms]
        if not unique:
            if any(b):
                return Verdict(False, failed_stage=degree)
            K = IntMatrix.zeros(0, 0)
            exponents = []
        else:
            solution = _solve_columns(unique, b)
            if solution is None:
                return Verdict(False, failed_stage=degree)
            x0, relations = solution
            weights = [len(words[rep]) for rep in reps]
            K = _shrink_basis(_relation_matrix(relations, len(unique)), weights)
            exponents = _reduce_exponents(x0, K, weights)
        stage_factors = []
        for rep, exp in zip(reps, exponents):
            stage_factors.extend(_repeat_factors(words[rep], exp))
        current = _apply_factors(stage_factors, current)
        witness.extend(stage_factors)
        assert current.degree_values(degree) == right.degree_values(degree)
        if degree < scheme.max_degree:
            words = _next_words(ctx, words, K, reps, zeros, dups, degree)
    assert current == right
    return Verdict(True, witness=GeneratorWord(witness))


def normal_form(v):
    """The canonical representative of a vector's orbit.

    Stage by stage, the block is reduced modulo the lattice its stage
    generators span: Hermite residues put each pivot coordinate into
    [0, pivot) and leave non-pivot coordinates untouched, and the reduction
    is realized by genuinely acting with the corresponding word, so the
    result is always in the orbit.  Canonical means: two vectors normalize
    to the same representative exactly when decide finds them equivalent.
    """
    scheme = v.scheme
    ctx = _context(scheme.n)
    current = v
    words = tuple(((gid, 1),) for gid in ctx.generator_ids)
    for degree in range(2, scheme.max_degree + 1):
        cols = _increment_columns(words, current, degree)
        unique, reps, zeros, dups = _split_columns(cols)
        syms = scheme.symbols_of_degree(degree)
        residue = [current.value(s) for s in syms]
        exponents = [0] * len(unique)
        if unique:
            rows, relations = _echelon_basis(unique, len(syms))
            for p in range(len(syms)):
                if rows[p] is None:
                    continue
                rvec, rexpr = rows[p]
                q = residue[p] // rvec[p]
                if q:
                    residue = [a - q * b for a, b in zip(residue, rvec)]
                    exponents = [a - q * b for a, b in zip(exponents, rexpr)]
            # A kernel shift realizes the same residue with smaller exponents.
            weights = [len(words[rep]) for rep in reps]
            K = _shrink_basis(_relation_matrix(relations, len(unique)), weights)
            exponents = _reduce_exponents(exponents, K, weights)
        else:
            K = IntMatrix.zeros(0, 0)
        stage_factors = []
        for rep, exp in zip(reps, exponents):
            stage_factors.extend(_repeat_factors(words[rep], exp))
        current = _apply_factors(stage_factors, current)
        assert [current.value(s) for s in syms] == residue
        if degree < scheme.max_degree:
            words = _next_words(ctx, words, K, reps, zeros, dups, degree)
    return current


# ---------------------------------------------------------------------------
# brute-force orbit oracle
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OrbitResult:
    """Orbit slice from `orbit_bfs`; behaves like a set of vectors.

    `truncated` is set when the node cap stopped the search with work left;
    `discarded` counts the generation events rejected by the coordinate
    bound.  The enumeration is the complete orbit exactly when neither
    happened (truncated False and discarded 0).
    """

    vectors: frozenset
    truncated: bool
    discarded: int

    def __contains__(self, v):
        return v in self.vectors

    def __iter__(self):
        return iter(self.vectors)

    def __len__(self):
        return len(self.vectors)


def orbit_bfs(start, coord_bound, node_cap):
    """Breadth-first closure of {start} under the generators and inverses.

    States with any |coordinate| > coord_bound are discarded (counted, not
    visited); the search stops and flags truncation once node_cap states
    have been collected with the frontier still nonempty.
    """
    if coord_bound <= 0 or node_cap <= 0:
        raise ValueError("orbit_bfs needs positive coord_bound and node_cap")
    scheme = start.scheme
    appliers = []
    for gid in _context(scheme.n).generator_ids:
        m = factor_map(scheme, gid)
        appliers.append(action.compile_applier(m))
        appliers.append(action.compile_applier(action.invert(m)))
    visited = {start.values}
    queue = deque(visited)
    truncated = False
    discarded = 0
    while queue:
        if len(visited) >= node_cap:
            truncated = True
            break
        state = queue.popleft()
        for applier in appliers:
            neighbor = applier(state)
            if neighbor in visited:
                continue
            if any(abs(x) > coord_bound for x in neighbor):
                discarded += 1
                continue
            visited.add(neighbor)
            queue.append(neighbor)
    return OrbitResult(
        frozenset(InvariantVector(scheme, values) for values in visited),
        truncated,
        discarded,
    )
