"""Acceptance criteria A1-A12.

Each criterion is one test that prints exactly one summary line
("A<k>: pass — ... [elapsed ...]"); run with -rP (the project default)
to see the lines for passing criteria.  Runtime budgets are enforced:
a criterion that exceeds its budget fails even if its assertions hold.
All numeric comparisons are exact — integer arithmetic end to end, so
every tolerance is zero.
"""

import itertools
import random
import time

import pytest

from linkhom import action, homotopy, verify
from linkhom.homotopy import apply_word, decide, generators, normal_form, orbit_bfs
from linkhom.intlattice import IntMatrix, hnf, snf, solve
from linkhom.model import (
    SHIPPED_TABLES,
    GeneratorId,
    GeneratorWord,
    InvariantVector,
    load_scheme,
    load_shipped_table,
)
from linkhom.polyring import Polynomial, substitute

S4 = load_scheme(4)
S5 = load_scheme(5)


def finish(tag, message, start, budget=None):
    elapsed = time.perf_counter() - start
    over = budget is not None and elapsed >= budget
    status = "fail" if over else "pass"
    suffix = f"[elapsed {elapsed:.2f}s" + (
        f", budget {budget:g}s]" if budget is not None else "]"
    )
    print(f"{tag}: {status} — {message} {suffix}")
    if over:
        pytest.fail(f"{tag} exceeded its runtime budget ({elapsed:.2f}s >= {budget}s)")


def word_commutator(a, b):
    """a b a⁻¹ b⁻¹ with the leftmost factor acting first."""
    return action.compose_sequence([a, b, action.invert(a), action.invert(b)])


def pair_ids(label, family):
    left, right = label[1:-1].split(",")
    return (GeneratorId(family, int(left[2]), int(left[3])),
            GeneratorId(family, int(right[2]), int(right[3])))


def rand_vec(scheme, rng, bound):
    return InvariantVector(
        scheme, tuple(rng.randint(-bound, bound) for _ in scheme.coords)
    )


def test_a01_table_hygiene():
    """A1: the ten shipped tables load; triangular, degree-1-invariant rows."""
    start = time.perf_counter()
    for key, (n, columns) in SHIPPED_TABLES.items():
        table = load_shipped_table(key)
        scheme = table.scheme
        assert scheme.n == n
        assert len(table.labels) == columns
        for label in table.labels:
            for sym, poly in table.rows(label).items():
                assert sym.degree >= 2, f"{key}:{label} moves a linking number"
                assert poly.constant_term() == 0
                for mentioned in poly.symbols():
                    assert mentioned.degree < sym.degree, (
                        f"{key}:{label}:{sym.name} is not triangular"
                    )
    finish("A1", "all 10 tables load; every row triangular with invariant "
           "degree-1 block", start, budget=1.0)


def test_a02_four_component_commutators():
    """A2: word-reading recomposition reproduces all six 4-component columns."""
    start = time.perf_counter()
    raw = load_shipped_table("partial_conj_4")
    comm = load_shipped_table("commutators_4")
    assert len(comm.labels) == 6
    for label in comm.labels:
        ida, idb = pair_ids(label, "raw")
        recomposed = word_commutator(action.from_table(raw, ida.token),
                                     action.from_table(raw, idb.token))
        assert action.map_equal(action.from_table(comm, label), recomposed), label
    finish("A2", "all 6 commutator columns reproduced with exact symbolic "
           "equality", start, budget=5.0)


def test_a03_five_component_triple_commutators():
    """A3: nested composition reproduces every listed 3-commutator column."""
    start = time.perf_counter()
    triples = load_shipped_table("triple_commutators_5")
    raw = load_shipped_table("partial_conj_5")
    assert len(triples.labels) == 20
    for label in triples.labels:
        outer, inner = label[1:-1].split(",", 1)
        ida = GeneratorId("raw", int(outer[2]), int(outer[3]))
        idb, idc = pair_ids(inner, "raw")
        nested = action.commutator(
            action.from_table(raw, ida.token),
            action.commutator(action.from_table(raw, idb.token),
                              action.from_table(raw, idc.token)),
        )
        assert action.map_equal(action.from_table(triples, label), nested), label
    finish("A3", f"all {len(triples.labels)} listed 3-commutator columns "
           "reproduced exactly by nested composition", start, budget=60.0)


def test_a04_conjugation_identities():
    """A4: full-twist product is the identity; strandwise products agree."""
    start = time.perf_counter()
    reports = {r.check_id: r for r in verify.check_conjugation_relations()}
    for n in (4, 5):
        assert reports[f"full-twist-product-{n}"].status == verify.PASS, (
            reports[f"full-twist-product-{n}"].details
        )
        assert reports[f"strandwise-products-{n}"].status == verify.PASS, (
            reports[f"strandwise-products-{n}"].details
        )
    finish("A4", "both identities hold symbolically for n=4 and n=5 "
           "(product of full twists = id; strandwise x-product = cx-product)",
           start, budget=120.0)


def test_a05_erasure_identities():
    """A5: for every strand i, the product of xs_ij over j != i is the identity."""
    start = time.perf_counter()
    checked = 0
    for n in (4, 5):
        simp = load_shipped_table(f"simplified_{n}")
        for i in range(1, n + 1):
            maps = [action.from_table(simp, f"xs_{i}{j}")
                    for j in range(1, n + 1) if j != i]
            assert action.compose_sequence(maps).is_identity(), (n, i)
            checked += 1
    finish("A5", f"all {checked} strandwise products collapse to the identity "
           "symbolically (one erasable relation per strand)", start, budget=30.0)


def test_a06_construction_recipes():
    """A6: the displayed construction recipes, checked at 1000 random states."""
    start = time.perf_counter()
    reports = {r.check_id: r for r in verify.check_simplified_construction(trials=1000)}
    assert reports["recipe-xs_12-4"].status == verify.PASS
    assert reports["recipe-xs_12-5"].status == verify.PASS
    xs13 = reports["recipe-xs_13-4"]
    assert xs13.status in (verify.PASS, verify.EXPLAINED), xs13.details
    note = ""
    if xs13.status == verify.EXPLAINED:
        note = ("; xs_13 column needs exponents (y_23 - 1, -y_23) — the "
                "transcribed pair is off by one, see the consistency suite")
    finish("A6", "recipes for xs_12 (n=4), xs_12 (n=5) exact at 1000 states "
           f"in [-9,9], zero tolerance{note}", start, budget=30.0)


def test_a07_commutators_stable_under_simplification():
    """A7: [xs_ij, xs_kl] equals [x_ij, x_kl] for the six 4-component pairs."""
    start = time.perf_counter()
    raw = load_shipped_table("partial_conj_4")
    simp = load_shipped_table("simplified_4")
    comm = load_shipped_table("commutators_4")
    for label in comm.labels:
        ida, idb = pair_ids(label, "raw")
        of_raw = word_commutator(action.from_table(raw, f"x_{ida.i}{ida.j}"),
                                 action.from_table(raw, f"x_{idb.i}{idb.j}"))
        of_simp = word_commutator(action.from_table(simp, f"xs_{ida.i}{ida.j}"),
                                  action.from_table(simp, f"xs_{idb.i}{idb.j}"))
        assert action.map_equal(of_simp, of_raw), label
    finish("A7", "map_equal holds for all six listed pairs — simplification "
           "leaves the commutator actions unchanged", start, budget=5.0)


def in_box_walk(start_vec, rng, bound, steps):
    current = start_vec
    gids = generators(start_vec.scheme.n)
    for _ in range(steps):
        for _attempt in range(25):
            w = GeneratorWord([(rng.choice(gids), rng.choice((-1, 1)))])
            candidate = apply_word(w, current)
            if all(abs(x) <= bound for x in candidate.values):
                current = candidate
                break
    return current


def test_a08_decide_against_orbit_oracle():
    """A8: decide vs breadth-first orbit membership on 200 bounded pairs."""
    start = time.perf_counter()
    rng = random.Random(20260819)
    node_cap = 10 ** 5
    agree = positives = negatives = unresolved = 0
    for trial in range(200):
        kind = trial % 4
        if kind in (0, 2):
            # target constructed by a walk that never leaves the box, so the
            # enumeration is guaranteed to reach it
            left = rand_vec(S4, rng, 2)
            right = in_box_walk(left, rng, bound=2, steps=4)
        elif kind == 1:
            # top-block-only vectors are fixed points: the orbit is a complete
            # singleton, resolving the pair negatively (unless equal)
            left = InvariantVector.from_values(
                S4, {"y_1234": rng.randint(-2, 2), "y_1324": rng.randint(-2, 2)}
            )
            bumped = left["y_1234"] + 1 if left["y_1234"] < 2 else -2
            right = left.with_values({"y_1234": bumped})
        else:
            left = rand_vec(S4, rng, 2)
            right = rand_vec(S4, rng, 2)
        orbit = orbit_bfs(left, coord_bound=2, node_cap=node_cap)
        complete = not orbit.truncated and orbit.discarded == 0
        verdict = decide(left, right)
        if right in orbit:
            assert verdict.equivalent, (left, right)
            agree += 1
            positives += 1
        elif complete:
            assert not verdict.equivalent, (left, right)
            agree += 1
            negatives += 1
        else:
            unresolved += 1
    assert positives >= 100 and negatives >= 50
    finish("A8", f"decide agreed with the orbit oracle on all {agree} "
           f"resolvable pairs of 200 ({positives} positive, {negatives} "
           f"negative, {unresolved} unresolved by the bounded search)",
           start, budget=600.0)


def test_a09_witness_soundness():
    """A9: 10,000 (vector, word) trials; every witness replays exactly."""
    start = time.perf_counter()
    rng = random.Random(97)
    per_n = {}
    for scheme, trials in ((S4, 5000), (S5, 5000)):
        gids = generators(scheme.n)
        t0 = time.perf_counter()
        for _ in range(trials):
            left = rand_vec(scheme, rng, 5)
            factors = []
            for _ in range(rng.randint(1, 6)):
                e = 0
                while e == 0:
                    e = rng.randint(-3, 3)
                if rng.random() < 0.02:
                    e *= rng.randint(5, 40)  # occasional large exponent
                factors.append((rng.choice(gids), e))
            right = apply_word(GeneratorWord(factors), left)
            verdict = decide(left, right)
            assert verdict.equivalent
            assert apply_word(verdict.witness, left) == right
        per_n[scheme.n] = (time.perf_counter() - t0) / trials
    finish("A9", "10,000/10,000 witnesses replayed to the exact target "
           f"(mean decide+replay {per_n[4]*1000:.1f} ms at n=4, "
           f"{per_n[5]*1000:.1f} ms at n=5)", start, budget=600.0)


def test_a10_fixed_point_separation():
    """A10: top-degree coordinates are complete invariants on Y_low = 0."""
    start = time.perf_counter()
    # symbolic half: with all lower blocks zero, every generator increment
    # on the top block vanishes identically
    for scheme, tables in ((S4, ("partial_conj_4", "simplified_4")),
                           (S5, ("partial_conj_5", "simplified_5"))):
        top = scheme.max_degree
        zeros = {
            s: Polynomial.zero(scheme.n)
            for s in scheme.coords if s.degree < top
        }
        for s in scheme.symbols_of_degree(top):
            zeros[s] = Polynomial.sym(s)
        for key in tables:
            table = load_shipped_table(key)
            for label in table.labels:
                m = action.from_table(table, label)
                for s in scheme.symbols_of_degree(top):
                    assert substitute(m.delta(s), zeros).is_zero(), (key, label)
    # randomized half: decide separates any two distinct such vectors
    rng = random.Random(5)
    separated = 0
    for scheme in (S4, S5):
        top = scheme.max_degree
        top_syms = scheme.symbols_of_degree(top)
        for _ in range(100):
            left = InvariantVector.from_values(
                scheme, {s: rng.randint(-9, 9) for s in top_syms}
            )
            right = InvariantVector.from_values(
                scheme, {s: rng.randint(-9, 9) for s in top_syms}
            )
            if left == right:
                assert decide(left, right).equivalent
                continue
            assert not decide(left, right).equivalent
            assert normal_form(left) == left  # fixed points are canonical
            separated += 1
    finish("A10", "increments vanish symbolically on the fixed-point locus "
           f"for every generator; decide separated all {separated} distinct "
           "random pairs (100 per n)", start)


def test_a11_integer_lattice_kit():
    """A11: HNF/SNF identities on 500 random matrices; solve vs brute force."""
    start = time.perf_counter()
    rng = random.Random(41)
    box = range(-6, 7)
    brute_checked = 0
    for trial in range(500):
        rows, cols = rng.randint(1, 4), rng.randint(1, 4)
        A = IntMatrix(
            [[rng.randint(-6, 6) for _ in range(cols)] for _ in range(rows)]
        )
        H, U = hnf(A)
        assert H == U @ A
        assert abs(U.det()) == 1
        S, P, Q = snf(A)
        assert S == P @ A @ Q
        assert abs(P.det()) == 1 and abs(Q.det()) == 1
        diag = [S.data[i][i] for i in range(min(rows, cols))]
        for a, b in zip(diag, diag[1:]):
            assert (b % a == 0) if a else (b == 0)
        # solvable-by-construction systems must solve, exactly
        x_true = [rng.randint(-3, 3) for _ in range(cols)]
        b = [sum(r * x for r, x in zip(row, x_true)) for row in A.data]
        x0, K = solve(A, b)
        assert [sum(r * x for r, x in zip(row, x0)) for row in A.data] == b
        # small systems: agreement with bounded brute force on arbitrary b
        if rows <= 2 and cols <= 3:
            b = [rng.randint(-5, 5) for _ in range(rows)]
            result = solve(A, b)
            if result is None:
                assert not any(
                    [sum(r * x for r, x in zip(row, cand)) for row in A.data] == b
                    for cand in itertools.product(box, repeat=cols)
                )
            else:
                assert [
                    sum(r * x for r, x in zip(row, result[0])) for row in A.data
                ] == b
            brute_checked += 1
    finish("A11", "reconstruction and unimodularity identities on 500 random "
           f"matrices; solvability cross-checked by brute force on "
           f"{brute_checked} small systems", start, budget=60.0)


def test_a12_conjecture_suite():
    """A12: strand products are trivial modulo the commutator sublattice."""
    start = time.perf_counter()
    reports = verify.check_conjecture_mod_commutators()
    statuses = {r.check_id: r.status for r in reports}
    findings = [str(r) for r in reports if r.status != verify.PASS]
    if findings:
        # a failure here is a reportable finding, surfaced but not a build error
        finish("A12", "finding: " + "; ".join(findings), start)
    else:
        finish("A12", "degree-2 exactness holds symbolically and all lattice "
               "certificates succeeded (500 random states per strand, n=4 and "
               f"n=5; checks: {sorted(statuses)})", start)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
