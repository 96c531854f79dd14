"""Triangular-affine maps: composition, inversion, powers, compiled appliers.

The maps under test are the shipped generator actions themselves, applied to
seeded random integer states; symbolic identities are checked with map_equal.
"""

import random

import pytest

from linkhom import action
from linkhom.errors import SchemeError
from linkhom.model import InvariantVector, load_scheme, load_shipped_table

S4 = load_scheme(4)
S5 = load_scheme(5)
RAW4 = load_shipped_table("partial_conj_4")
SIMP4 = load_shipped_table("simplified_4")
TRIPLES5 = load_shipped_table("triple_commutators_5")

RNG = random.Random(20260819)


def rand_vec(scheme, bound=8):
    return InvariantVector(
        scheme, tuple(RNG.randint(-bound, bound) for _ in scheme.coords)
    )


def some_maps(table, k=4):
    labels = list(table.labels)[:k]
    return [action.from_table(table, lbl) for lbl in labels]


def test_identity_and_from_table():
    ident = action.identity(S4)
    assert ident.is_identity()
    v = rand_vec(S4)
    assert action.apply(ident, v) == v
    m = action.from_table(RAW4, "x_12")
    assert not m.is_identity()
    # degree-1 coordinates never move
    assert action.apply(m, v).degree_values(1) == v.degree_values(1)


def test_apply_matches_table_increments():
    m = action.from_table(RAW4, "x_12")
    for _ in range(25):
        v = rand_vec(S4)
        w = action.apply(m, v)
        from linkhom.polyring import evaluate

        for sym in S4.coords:
            if sym.degree < 2:
                assert w.value(sym) == v.value(sym)
            else:
                delta = RAW4.entry("x_12", sym)
                assert w.value(sym) == v.value(sym) + evaluate(delta, v.as_point())


def test_compose_is_a_after_b():
    a, b = some_maps(RAW4, 2)
    ab = action.compose(a, b)
    for _ in range(20):
        v = rand_vec(S4)
        assert action.apply(ab, v) == action.apply(a, action.apply(b, v))


def test_compose_sequence_order():
    maps = some_maps(SIMP4, 3)
    seq = action.compose_sequence(maps)
    for _ in range(10):
        v = rand_vec(S4)
        w = v
        for m in maps:
            w = action.apply(m, w)
        assert action.apply(seq, v) == w
    assert action.compose_sequence([], scheme=S4).is_identity()
    with pytest.raises(SchemeError):
        action.compose_sequence([])


def test_invert():
    for table, labels in ((RAW4, RAW4.labels), (TRIPLES5, TRIPLES5.labels[:3])):
        for lbl in labels:
            m = action.from_table(table, lbl)
            inv = action.invert(m)
            assert action.compose(m, inv).is_identity()
            assert action.compose(inv, m).is_identity()
    m = action.from_table(RAW4, "x_31")
    assert action.invert(action.invert(m)) is m  # memoized round trip


def test_power_laws():
    m = action.from_table(RAW4, "x_42")
    assert action.power(m, 0).is_identity()
    assert action.map_equal(action.power(m, 1), m)
    m3 = action.compose(m, action.compose(m, m))
    assert action.map_equal(action.power(m, 3), m3)
    assert action.map_equal(action.power(m, -2),
                            action.invert(action.power(m, 2)))
    assert action.compose(action.power(m, 5), action.power(m, -5)).is_identity()
    with pytest.raises(SchemeError):
        action.power(m, 1.5)


def test_commutator_definition():
    a, b = some_maps(RAW4, 2)
    lhs = action.commutator(a, b)
    rhs = action.compose_sequence(
        [action.invert(b), action.invert(a), b, a]  # rightmost acts first
    )
    assert action.map_equal(lhs, rhs)
    assert action.commutator(a, a).is_identity()


def test_map_equal_and_hash():
    m = action.from_table(RAW4, "x_12")
    again = action.from_table(RAW4, "x_12")
    assert action.map_equal(m, again)
    assert m == again and hash(m) == hash(again)
    assert not action.map_equal(m, action.from_table(RAW4, "x_13"))
    with pytest.raises(SchemeError):
        action.map_equal(m, action.identity(S5))


def test_compile_applier_agrees_with_apply():
    for table, scheme in ((RAW4, S4), (TRIPLES5, S5)):
        for lbl in list(table.labels)[:5]:
            m = action.from_table(table, lbl)
            applier = action.compile_applier(m)
            for _ in range(10):
                v = rand_vec(scheme)
                assert applier(v.values) == action.apply(m, v).values


def test_every_shipped_column_is_a_translation():
    """Each generator's increments read only coordinates that generator fixes.

    This is the structural fact behind the closed-form power path: for any
    single table column m, m^k(v) = v + k·δ(v).
    """
    from linkhom.model import SHIPPED_TABLES

    for key in SHIPPED_TABLES:
        table = load_shipped_table(key)
        for lbl in table.labels:
            m = action.from_table(table, lbl)
            delta = action.translation_delta(m)
            assert delta is not None, (key, lbl)
            moved = set(delta)
            for poly in delta.values():
                assert not (poly.symbols() & moved)


def test_composites_need_not_be_translations():
    m = action.compose(action.from_table(RAW4, "x_12"),
                       action.from_table(RAW4, "x_23"))
    assert action.translation_delta(m) is None


@pytest.mark.parametrize("case", ["composite", "simplified", "translation"])
def test_apply_power_matches_iteration(case):
    if case == "composite":  # not a translation: exercises the generic path
        m = action.compose(action.from_table(RAW4, "x_12"),
                           action.from_table(RAW4, "x_23"))
        scheme = S4
    elif case == "simplified":
        m = action.from_table(SIMP4, "xs_31")
        scheme = S4
    else:
        m = action.from_table(TRIPLES5, TRIPLES5.labels[0])
        scheme = S5
    for k in (-7, -2, -1, 0, 1, 2, 3, 11):
        for _ in range(5):
            v = rand_vec(scheme, bound=5)
            expected = v
            step = m if k >= 0 else action.invert(m)
            for _ in range(abs(k)):
                expected = action.apply(step, expected)
            assert action.apply_power(m, k, v) == expected


def test_apply_power_huge_exponent_on_translation():
    m = action.from_table(TRIPLES5, TRIPLES5.labels[0])
    v = rand_vec(S5, bound=3)
    k = 10 ** 12
    w = action.apply_power(m, k, v)
    # closed form: v + k * (one application's increment)
    once = action.apply(m, v)
    assert w.values == tuple(
        a + k * (b - a) for a, b in zip(v.values, once.values)
    )


def test_state_power_evaluates_exponent_at_state():
    from linkhom.polyring import parse_poly

    m = action.from_table(SIMP4, "xs_12")
    p = parse_poly("y_23 - 2", S4)
    for _ in range(10):
        v = rand_vec(S4, bound=4)
        k = v["y_23"] - 2
        assert action.state_power(m, p, v) == action.apply_power(m, k, v)


def test_apply_rejects_mixed_schemes():
    m = action.from_table(RAW4, "x_12")
    with pytest.raises(SchemeError):
        action.apply(m, InvariantVector.zero(S5))
