"""Consistency suite for the shipped action tables.

Every table ships as data, transcribed by hand, so the package re-derives
each one from something independent of it and reports the comparison:

* commutator columns against commutators recomposed from the raw generator
  maps (plus the third-strand-swap identity those columns suggest);
* the simplified generators against the displayed composition recipes that
  are supposed to construct them;
* the conjugation tables against the two full-twist product identities that
  characterize them;
* the conjectured triviality, modulo commutators, of the full strand
  products of raw generators — certified stage-wise by exact integer
  lattice membership at seeded random states;
* the reduced commutator table against honest commutators of simplified
  generators, modulo 3-commutators.

Symbolic checks are exact polynomial identities.  Randomized checks record
their seed.  A check that fails as literally stated, but holds after a
recorded and independently cross-checked adjustment (an orientation, an
off-by-one exponent, a transposed table cell), reports
``fail-modulo-explained`` with the adjustment spelled out; only ``fail``
carries a genuine unexplained discrepancy, with a concrete counterexample.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import action, homotopy
from .intlattice import IntMatrix, solve
from .model import (
    Commutator,
    GeneratorId,
    InvariantVector,
    load_scheme,
    load_shipped_table,
)
from .polyring import Polynomial, evaluate, parse_poly, poly_to_str

DEFAULT_SEED = 20260819

PASS = "pass"
FAIL = "fail"
EXPLAINED = "fail-modulo-explained"


@dataclass(frozen=True)
class CheckReport:
    """One line of suite output: what was checked and how it went."""

    check_id: str
    status: str
    details: str

    @property
    def ok(self):
        """True unless the status is a hard, unexplained failure."""
        return self.status != FAIL

    def __str__(self):
        return f"{self.check_id}: {self.status}: {self.details}"


# ---------------------------------------------------------------------------
# shared helpers
# ---------------------------------------------------------------------------

def _word_commutator(a, b):
    """The juxtaposition a b a⁻¹ b⁻¹ with the leftmost factor acting first."""
    return action.compose_sequence([a, b, action.invert(a), action.invert(b)])


def _pair_ids(label, family):
    """'[x_21,x_31]' → the two generator ids, in the requested family."""
    left, right = label[1:-1].split(",")
    return (GeneratorId(family, int(left[2]), int(left[3])),
            GeneratorId(family, int(right[2]), int(right[3])))


def _triple_ids(label, family):
    """'[x_34,[x_14,x_24]]' → (outer id, inner pair)."""
    outer, inner = label[1:-1].split(",", 1)
    return (GeneratorId(family, int(outer[2]), int(outer[3])),
            _pair_ids(inner, family))


def _random_state(scheme, rng, bound=9):
    return InvariantVector(
        scheme, tuple(rng.randint(-bound, bound) for _ in scheme.coords)
    )


def _first_map_difference(a, b):
    """(symbol, poly, poly) where two maps first disagree, for fail details."""
    for s in a.scheme.coords:
        if s.degree < 2:
            continue
        if a.image[s] != b.image[s]:
            return s, a.image[s], b.image[s]
    return None


def _difference_text(a, b):
    diff = _first_map_difference(a, b)
    if diff is None:
        return "maps agree"
    s, pa, pb = diff
    return f"{s.name}: {poly_to_str(pa)} vs {poly_to_str(pb)}"


# ---------------------------------------------------------------------------
# commutator tables
# ---------------------------------------------------------------------------

def check_commutator_tables():
    """Every commutator column against recomposition from the raw maps.

    A bracket column can be read two ways: as the juxtaposition
    a b a⁻¹ b⁻¹ (leftmost acting first) or as the functional composite
    a∘b∘a⁻¹∘b⁻¹ (b⁻¹ acting first); the two readings are inverse to each
    other.  Each table is matched against both and reported with the reading
    it satisfies.  The 4-component columns additionally suggest that the
    commutator of two generators aimed at a common third strand is
    independent of which third strand — checked as stated and up to inverse.
    """
    reports = []
    for n in (4, 5):
        raw = load_shipped_table(f"partial_conj_{n}")
        comm = load_shipped_table(f"commutators_{n}")
        word_hits = func_hits = 0
        bad = None
        for label in comm.labels:
            ida, idb = _pair_ids(label, "raw")
            a = action.from_table(raw, ida.token)
            b = action.from_table(raw, idb.token)
            col = action.from_table(comm, label)
            w = action.map_equal(col, _word_commutator(a, b))
            f = action.map_equal(col, action.commutator(a, b))
            word_hits += w
            func_hits += f
            if not (w or f) and bad is None:
                bad = (label, col, _word_commutator(a, b))
        total = len(comm.labels)
        if bad is not None:
            label, col, recomposed = bad
            reports.append(CheckReport(
                f"commutator-table-{n}", FAIL,
                f"column {label} matches neither reading; "
                f"first difference vs word reading — {_difference_text(col, recomposed)}",
            ))
        else:
            reading = "word" if word_hits == total else "functional"
            reports.append(CheckReport(
                f"commutator-table-{n}", PASS,
                f"all {total} columns match the {reading} reading "
                f"(word {word_hits}/{total}, functional {func_hits}/{total})",
            ))

    triples = load_shipped_table("triple_commutators_5")
    raw5 = load_shipped_table("partial_conj_5")
    word_hits = func_hits = 0
    bad = None
    for label in triples.labels:
        outer_id, (idb, idc) = _triple_ids(label, "raw")
        a = action.from_table(raw5, outer_id.token)
        b = action.from_table(raw5, idb.token)
        c = action.from_table(raw5, idc.token)
        col = action.from_table(triples, label)
        w = action.map_equal(col, _word_commutator(a, _word_commutator(b, c)))
        f = action.map_equal(col, action.commutator(a, action.commutator(b, c)))
        word_hits += w
        func_hits += f
        if not (w or f) and bad is None:
            bad = (label, col, action.commutator(a, action.commutator(b, c)))
    if bad is not None:
        label, col, recomposed = bad
        reports.append(CheckReport(
            "triple-commutator-table-5", FAIL,
            f"column {label} matches neither reading; "
            f"{_difference_text(col, recomposed)}",
        ))
    else:
        reports.append(CheckReport(
            "triple-commutator-table-5", PASS,
            f"all {len(triples.labels)} nested columns match "
            f"(word {word_hits}/{len(triples.labels)}, "
            f"functional {func_hits}/{len(triples.labels)})",
        ))

    raw4 = load_shipped_table("partial_conj_4")
    outcomes = []
    for i, j in ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)):
        k, l = (m for m in (1, 2, 3, 4) if m not in (i, j))
        ck = _word_commutator(action.from_table(raw4, f"x_{i}{k}"),
                              action.from_table(raw4, f"x_{j}{k}"))
        cl = _word_commutator(action.from_table(raw4, f"x_{i}{l}"),
                              action.from_table(raw4, f"x_{j}{l}"))
        if action.map_equal(ck, cl):
            verdict = "equal"
        elif action.map_equal(ck, action.invert(cl)):
            verdict = "inverse"
        else:
            verdict = "neither"
        outcomes.append((f"[x_{i}{k},x_{j}{k}] vs [x_{i}{l},x_{j}{l}]", verdict, ck, cl))
    if any(v == "neither" for _, v, _, _ in outcomes):
        name, _, ck, cl = next(o for o in outcomes if o[1] == "neither")
        reports.append(CheckReport(
            "third-strand-swap-4", FAIL,
            f"{name}: not even inverse; {_difference_text(ck, cl)}",
        ))
    elif all(v == "equal" for _, v, _, _ in outcomes):
        reports.append(CheckReport(
            "third-strand-swap-4", PASS, "all six pairs literally equal",
        ))
    else:
        inverses = sum(v == "inverse" for _, v, _, _ in outcomes)
        reports.append(CheckReport(
            "third-strand-swap-4", EXPLAINED,
            f"literal equality fails; the two sides are mutual inverses for "
            f"{inverses} of 6 pairs ({6 - inverses} equal).  These commutators "
            f"translate the top-degree block, so inverse means the same "
            f"sublattice with opposite sign — the swap identity holds up to "
            f"inverse, and orbit computations are unaffected",
        ))
    return reports


# ---------------------------------------------------------------------------
# simplified-generator construction recipes
# ---------------------------------------------------------------------------

def _run_recipe(base, steps, v):
    """base first, then each (map, exponent polynomial) rightmost-first.

    Exponents are evaluated at the running state, matching the displayed
    composition order f_1^{e_1} ∘ … ∘ f_m^{e_m} ∘ base.
    """
    cur = action.apply(base, v)
    for m, expo in reversed(steps):
        cur = action.state_power(m, expo, cur)
    return cur


def _fit_affine_exponents(scheme, base, taus, target, rng, samples=32):
    """Recover degree-≤1 exponent polynomials making the recipe exact.

    At each state the commutator factors translate the top block by known
    columns, so the exponents solve a small linear system; the per-state
    values are then interpolated by one affine polynomial in the linking
    numbers per factor (solved exactly, again as an integer system).
    Returns the list of fitted polynomials, or None with no consistent fit.
    """
    deg1 = scheme.symbols_of_degree(1)
    top = scheme.symbols_of_degree(scheme.max_degree)
    rows_a = []
    rhs = [[] for _ in taus]
    attempts = 0
    while len(rows_a) < samples and attempts < samples * 20:
        attempts += 1
        v = _random_state(scheme, rng)
        cur = action.apply(base, v)
        point = cur.as_point()
        cols = [tuple(evaluate(t.delta(s), point) for s in top) for t in taus]
        bvec = [evaluate(target.image[s], v.as_point()) - cur.value(s) for s in top]
        solved = solve(IntMatrix([list(r) for r in zip(*cols)]), bvec)
        if solved is None or solved[1].cols:
            continue  # outside the span, or not uniquely determined here
        x0, _ = solved
        rows_a.append([1] + [v.value(s) for s in deg1])
        for slot, val in zip(rhs, x0):
            slot.append(val)
    if len(rows_a) < len(deg1) + 2:
        return None
    fitted = []
    for slot in rhs:
        coeffs = solve(IntMatrix(rows_a), slot)
        if coeffs is None or coeffs[1].cols:
            return None
        c = coeffs[0]
        poly = Polynomial.const(scheme.n, c[0])
        for coeff, s in zip(c[1:], deg1):
            if coeff:
                poly = poly + Polynomial.const(scheme.n, coeff) * Polynomial.sym(s)
        fitted.append(poly)
    return fitted


def check_simplified_construction(trials=1000, seed=DEFAULT_SEED):
    """The displayed composition recipes against the simplified tables.

    Each recipe is replayed with state-dependent exponents at `trials`
    random integer states in [−9, 9]; agreement must be exact.  When a
    displayed exponent is wrong, the uniquely determined correct exponents
    are solved for, verified at every state, and reported next to the
    displayed ones.
    """
    reports = []
    s4 = load_scheme(4)
    raw4 = load_shipped_table("partial_conj_4")
    simp4 = load_shipped_table("simplified_4")

    def p4(text):
        return parse_poly(text, s4)

    c1323 = _word_commutator(action.from_table(raw4, "x_13"),
                             action.from_table(raw4, "x_23"))
    c1232 = _word_commutator(action.from_table(raw4, "x_12"),
                             action.from_table(raw4, "x_32"))
    recipes_4 = {
        "xs_12": ("x_12", [(c1323, "y_24 - y_23"), (c1232, "y_23")]),
        "xs_13": ("x_13", [(c1323, "y_23"), (c1232, "-y_23")]),
    }
    for name, (base_tok, steps_text) in recipes_4.items():
        base = action.from_table(raw4, base_tok)
        target = action.from_table(simp4, name)
        steps = [(m, p4(t)) for m, t in steps_text]
        rng = random.Random(seed)
        first_bad = None
        for _ in range(trials):
            v = _random_state(s4, rng)
            if _run_recipe(base, steps, v) != action.apply(target, v):
                first_bad = v
                break
        if first_bad is None:
            reports.append(CheckReport(
                f"recipe-{name}-4", PASS,
                f"as displayed at {trials} random states "
                f"(commutators in the word reading; seed={seed})",
            ))
            continue
        taus = [m for m, _ in steps]
        fitted = _fit_affine_exponents(s4, base, taus, target, random.Random(seed + 1))
        if fitted is None:
            reports.append(CheckReport(
                f"recipe-{name}-4", FAIL,
                f"recipe fails as displayed (first counterexample "
                f"{first_bad!r}) and no affine exponents reproduce the column",
            ))
            continue
        refit = [(m, poly) for (m, _), poly in zip(steps, fitted)]
        ok = True
        rng = random.Random(seed)
        for _ in range(trials):
            v = _random_state(s4, rng)
            if _run_recipe(base, refit, v) != action.apply(target, v):
                ok = False
                break
        displayed = ", ".join(poly_to_str(p) for _, p in steps)
        solved_text = ", ".join(poly_to_str(p) for p in fitted)
        if ok:
            reports.append(CheckReport(
                f"recipe-{name}-4", EXPLAINED,
                f"displayed exponents ({displayed}) fail; solved exponents "
                f"({solved_text}) reproduce the column at {trials} states "
                f"(seed={seed})",
            ))
        else:
            reports.append(CheckReport(
                f"recipe-{name}-4", FAIL,
                f"displayed exponents ({displayed}) fail and the solved fit "
                f"({solved_text}) does not hold at all states",
            ))

    s5 = load_scheme(5)
    raw5 = load_shipped_table("partial_conj_5")
    simp5 = load_shipped_table("simplified_5")
    recipe_5 = (
        ("x_34", "x_14", "x_24", "y_25*y_35 - y_24*y_34 - y_23*y_35 + y_23*y_34"),
        ("x_31", "x_14", "x_24", "-y_23*y_25 + y_23*y_24"),
        ("x_52", "x_13", "x_23", "y_24*y_25 - y_23*y_25"),
        ("x_43", "x_13", "x_23", "y_24 + y_24*y_34 - y_23*y_34 + y_23*y_24"),
        ("x_41", "x_13", "x_23", "-y_24*y_25 + y_23*y_24"),
        ("x_54", "x_12", "x_42", "y_145"),
        ("x_53", "x_12", "x_32", "y_135"),
        ("x_42", "x_12", "x_32", "y_23*y_24"),
    )
    steps = []
    for ta, tb, tc, expr in recipe_5:
        m = action.commutator(
            action.from_table(raw5, ta),
            action.commutator(action.from_table(raw5, tb),
                              action.from_table(raw5, tc)),
        )
        steps.append((m, parse_poly(expr, s5)))
    base = action.from_table(raw5, "x_12")
    target = action.from_table(simp5, "xs_12")
    rng = random.Random(seed)
    first_bad = None
    for _ in range(trials):
        v = _random_state(s5, rng)
        if _run_recipe(base, steps, v) != action.apply(target, v):
            first_bad = v
            break
    if first_bad is None:
        reports.append(CheckReport(
            "recipe-xs_12-5", PASS,
            f"as displayed at {trials} random states (nested commutators in "
            f"the functional reading; seed={seed})",
        ))
    else:
        reports.append(CheckReport(
            "recipe-xs_12-5", FAIL,
            f"first counterexample {first_bad!r}",
        ))
    return reports


# ---------------------------------------------------------------------------
# conjugation product identities
# ---------------------------------------------------------------------------

def check_conjugation_relations():
    """The two full-twist product identities, plus a non-triviality sanity.

    (1) the stacked product of all conjugations is the identity;
    (2) for each strand j, the product of the partial conjugations x_ij
        over i ≠ j equals the product of the conjugations cx_ij.
    Products are tried in ascending index order first and retried reversed;
    both outcomes are reported (the identities hold with the highest index
    acting first).
    """
    reports = []
    for n in (4, 5):
        scheme = load_scheme(n)
        raw = load_shipped_table(f"partial_conj_{n}")
        conj = load_shipped_table(f"conjugations_{n}")

        cx12 = action.from_table(conj, "cx_12")
        sane = not cx12.is_identity()
        extra = ""
        if n == 4:
            want = parse_poly("y_23 - y_13", scheme)
            sane = sane and cx12.delta(scheme.symbol("y_123")) == want
            extra = "; its y_123 increment is y_23 - y_13"
        reports.append(CheckReport(
            f"conjugation-sanity-{n}",
            PASS if sane else FAIL,
            f"cx_12 is not the identity{extra}" if sane
            else "cx_12 collapsed to the identity map",
        ))

        blocks = [
            action.from_table(conj, f"cx_{i}{k}")
            for k in range(2, n + 1) for i in range(1, k)
        ]
        asc = action.compose_sequence(blocks)
        desc = action.compose_sequence(blocks[::-1])
        ok_asc, ok_desc = asc.is_identity(), desc.is_identity()
        if ok_asc or ok_desc:
            orders = [o for o, ok in (("ascending", ok_asc), ("descending", ok_desc)) if ok]
            reports.append(CheckReport(
                f"full-twist-product-{n}", PASS,
                f"product of all {len(blocks)} conjugations is the identity "
                f"({' and '.join(orders)} order)",
            ))
        else:
            ident = action.identity(scheme)
            reports.append(CheckReport(
                f"full-twist-product-{n}", FAIL,
                f"neither order gives the identity; descending residue — "
                f"{_difference_text(desc, ident)}",
            ))

        failures = []
        matched = []
        for j in range(1, n + 1):
            xs = [action.from_table(raw, f"x_{i}{j}")
                  for i in range(1, n + 1) if i != j]
            cs = [action.from_table(conj, f"cx_{min(i, j)}{max(i, j)}")
                  for i in range(1, n + 1) if i != j]
            hits = []
            for xo, xm in (("asc", action.compose_sequence(xs)),
                           ("desc", action.compose_sequence(xs[::-1]))):
                for co, cm in (("asc", action.compose_sequence(cs)),
                               ("desc", action.compose_sequence(cs[::-1]))):
                    if action.map_equal(xm, cm):
                        hits.append(f"x:{xo}/cx:{co}")
            if hits:
                matched.append(f"j={j} ({','.join(hits)})")
            else:
                failures.append((j, action.compose_sequence(xs[::-1]),
                                 action.compose_sequence(cs[::-1])))
        if failures:
            j, xm, cm = failures[0]
            reports.append(CheckReport(
                f"strandwise-products-{n}", FAIL,
                f"strand {j}: no order matches; {_difference_text(xm, cm)}",
            ))
        else:
            reports.append(CheckReport(
                f"strandwise-products-{n}", PASS,
                f"partial-conjugation and conjugation products agree for "
                f"every strand: {'; '.join(matched)}",
            ))
    return reports


# ---------------------------------------------------------------------------
# strand products modulo commutators
# ---------------------------------------------------------------------------

class _RawFamilyContext:
    """Commutator and 3-commutator factors over the raw generators.

    Shaped like the decision procedure's per-n context so its stage
    machinery can be reused for lattice certificates.
    """

    __slots__ = ("scheme", "commutator_factors", "triple_factors")

    def __init__(self, n):
        self.scheme = load_scheme(n)
        self.commutator_factors = tuple(
            Commutator(*_pair_ids(label, "raw"))
            for label in load_shipped_table(f"commutators_{n}").labels
        )
        if n == 5:
            factors = []
            for label in load_shipped_table("triple_commutators_5").labels:
                outer_id, inner = _triple_ids(label, "raw")
                factors.append(Commutator(outer_id, Commutator(*inner)))
            self.triple_factors = tuple(factors)
        else:
            self.triple_factors = ()


def _certify_in_commutators(ctx, start, target):
    """Is target reachable from start by a word in the commutator factors?

    Runs the decision procedure's stage machinery with the commutator
    family as the starting alphabet (degree-3 block first; both states must
    already agree below that).  Intermediate stages act on the state so the
    next block's columns are taken on the right fiber; the final stage only
    needs solvability, which is the certificate itself.
    """
    scheme = ctx.scheme
    current = start
    words = tuple(((f, 1),) for f in ctx.commutator_factors)
    for degree in range(3, scheme.max_degree + 1):
        cols = homotopy._increment_columns(words, current, degree)
        unique, reps, zeros, dups = homotopy._split_columns(cols)
        syms = scheme.symbols_of_degree(degree)
        b = [target.value(s) - current.value(s) for s in syms]
        if not unique:
            if any(b):
                return False
            if degree == scheme.max_degree:
                return True
            K = IntMatrix.zeros(0, 0)
            exponents = []
        else:
            solution = homotopy._solve_columns(unique, b)
            if solution is None:
                return False
            if degree == scheme.max_degree:
                return True
            x0, relations = solution
            weights = [len(words[rep]) for rep in reps]
            K = homotopy._shrink_basis(
                homotopy._relation_matrix(relations, len(unique)), weights)
            exponents = homotopy._reduce_exponents(x0, K, weights)
        stage = []
        for rep, exp in zip(reps, exponents):
            stage.extend(homotopy._repeat_factors(words[rep], exp))
        current = homotopy._apply_factors(stage, current)
        words = homotopy._next_words(ctx, words, K, reps, zeros, dups, degree)
    return True


def check_conjecture_mod_commutators(states=500, seed=DEFAULT_SEED):
    """∏_{j≠i} x_ij is trivial up to commutators, for every strand i.

    Exactly in degree 2: the composite's degree-2 increment rows must vanish
    symbolically.  In higher degrees the claim is certified pointwise: at
    each seeded random state, the composite's residual must be reachable by
    a word in the commutator (and, in the last degree, 3-commutator)
    factors — an exact stage-wise integer lattice membership.
    """
    reports = []
    for n in (4, 5):
        scheme = load_scheme(n)
        raw = load_shipped_table(f"partial_conj_{n}")
        ctx = _RawFamilyContext(n)
        symbolic_bad = []
        first_failure = None
        certified = 0
        rng = random.Random(seed)
        for i in range(1, n + 1):
            total = action.compose_sequence(
                [action.from_table(raw, f"x_{i}{j}")
                 for j in range(1, n + 1) if j != i]
            )
            for s in scheme.symbols_of_degree(2):
                if not total.delta(s).is_zero():
                    symbolic_bad.append((i, s, total.delta(s)))
            for _ in range(states):
                v = _random_state(scheme, rng)
                w = action.apply(total, v)
                if _certify_in_commutators(ctx, v, w):
                    certified += 1
                elif first_failure is None:
                    first_failure = (i, v)
        if symbolic_bad:
            i, s, delta = symbolic_bad[0]
            reports.append(CheckReport(
                f"strand-products-mod-commutators-{n}", FAIL,
                f"strand {i}: degree-2 row {s.name} does not vanish "
                f"({poly_to_str(delta)})",
            ))
        elif first_failure is not None:
            i, v = first_failure
            reports.append(CheckReport(
                f"strand-products-mod-commutators-{n}", FAIL,
                f"residual not in the commutator lattice for strand {i} at "
                f"{v!r} ({certified}/{states * n} states certified; "
                f"seed={seed})",
            ))
        else:
            reports.append(CheckReport(
                f"strand-products-mod-commutators-{n}", PASS,
                f"degree-2 rows vanish symbolically for every strand "
                f"(ascending product order); residuals certified at "
                f"{states} states per strand (seed={seed})",
            ))
    return reports


# ---------------------------------------------------------------------------
# reduced commutators modulo 3-commutators
# ---------------------------------------------------------------------------

def check_modified_commutators_mod3(states=500, seed=DEFAULT_SEED):
    """The reduced 5-component commutator table, modulo 3-commutators.

    Each reduced column must agree with the honest functional commutator of
    the corresponding simplified generators on every degree-3 row, exactly
    and symbolically; the degree-4 discrepancy must lie, at each seeded
    random state, in the integer lattice spanned by the 3-commutator
    columns' increments at that state.
    """
    scheme = load_scheme(5)
    simp = load_shipped_table("simplified_5")
    reduced = load_shipped_table("commutators_reduced_5")
    triples = load_shipped_table("triple_commutators_5")
    deg3 = scheme.symbols_of_degree(3)
    deg4 = scheme.symbols_of_degree(4)
    triple_maps = [action.from_table(triples, label) for label in triples.labels]
    rng = random.Random(seed)
    per_column = max(1, states // len(reduced.labels))
    certified = 0
    total_states = 0
    for label in reduced.labels:
        ida, idb = _pair_ids(label, "simplified")
        composed = action.commutator(action.from_table(simp, ida.token),
                                     action.from_table(simp, idb.token))
        column = action.from_table(reduced, label)
        for s in deg3:
            if composed.delta(s) != column.delta(s):
                return [CheckReport(
                    "reduced-commutators-5", FAIL,
                    f"column {label}, degree-3 row {s.name}: table "
                    f"{poly_to_str(column.delta(s))} vs composed "
                    f"{poly_to_str(composed.delta(s))}",
                )]
        for _ in range(per_column):
            total_states += 1
            v = _random_state(scheme, rng)
            got = action.apply(composed, v)
            want = action.apply(column, v)
            if got.degree_values(3) != want.degree_values(3):
                return [CheckReport(
                    "reduced-commutators-5", FAIL,
                    f"column {label}: degree-3 images differ at {v!r}",
                )]
            point = want.as_point()
            cols = [tuple(evaluate(m.delta(s), point) for s in deg4)
                    for m in triple_maps]
            b = [g - w for g, w in zip(got.degree_values(4), want.degree_values(4))]
            if homotopy._solve_columns(cols, b) is None:
                return [CheckReport(
                    "reduced-commutators-5", FAIL,
                    f"column {label}: degree-4 discrepancy at {v!r} is not "
                    f"in the 3-commutator lattice (seed={seed})",
                )]
            certified += 1
    return [CheckReport(
        "reduced-commutators-5", PASS,
        f"all 20 columns: degree-3 rows agree symbolically; degree-4 "
        f"discrepancies certified in the 3-commutator lattice at "
        f"{certified} states (seed={seed})",
    )]


# ---------------------------------------------------------------------------
# the suite
# ---------------------------------------------------------------------------

SUITES = {
    "commutator-tables": check_commutator_tables,
    "simplified-construction": check_simplified_construction,
    "conjugation-relations": check_conjugation_relations,
    "conjecture-mod-commutators": check_conjecture_mod_commutators,
    "modified-commutators-mod3": check_modified_commutators_mod3,
}

_SEEDED = {
    "simplified-construction",
    "conjecture-mod-commutators",
    "modified-commutators-mod3",
}


def run_suite(suite="all", seed=DEFAULT_SEED, report=None):
    """Run one named suite or all of them; returns the CheckReport list.

    `report`, when given, receives each CheckReport as it is produced —
    the CLI uses it to stream one line per check.
    """
    if suite == "all":
        names = list(SUITES)
    elif suite in SUITES:
        names = [suite]
    else:
        raise KeyError(
            f"unknown suite {suite!r}; available: all, {', '.join(SUITES)}"
        )
    out = []
    for name in names:
        check = SUITES[name]
        reports = check(seed=seed) if name in _SEEDED else check()
        for r in reports:
            if report is not None:
                report(r)
            out.append(r)
    return out
