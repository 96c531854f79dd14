"""Triangular polynomial self-maps of the coordinate space.

An ActionMap sends each coordinate y_J to a polynomial in the pre-action
coordinates.  Degree-1 coordinates (linking numbers) are always fixed, and the
image of a degree-k coordinate is y_J + δ_J with δ_J mentioning only
coordinates of degree < k.  That triangular-affine shape is closed under
composition, exactly invertible by back-substitution, and is what makes the
staged decision procedure terminate.

Maps compose symbolically (`compose`, with `a` acting after `b`), power by
repeated squaring (`power`, negative exponents via `invert`), and act on
integer vectors (`apply`).  `commutator(a, b)` is a∘b∘a⁻¹∘b⁻¹.

`compile_applier` turns a map into a generated straight-line Python function
on value tuples; it is exact (same big-int arithmetic) and exists purely
because orbit enumeration and the randomized suites apply maps millions of
times.
"""

from __future__ import annotations

from .errors import SchemeError
from .model import InvariantVector
from .polyring import Polynomial, evaluate, substitute


class ActionMap:
    """Immutable triangular-affine self-map of one scheme's coordinates.

    `image` maps every degree ≥ 2 Symbol of the scheme to its image
    Polynomial; degree-1 symbols are implicitly the identity.
    """

    __slots__ = ("scheme", "image", "_applier", "_inverse", "_translation")

    def __init__(self, scheme, image):
        for sym in scheme.coords:
            if sym.degree < 2:
                continue
            poly = image.get(sym)
            if poly is None:
                raise SchemeError(f"action map is missing an image for {sym.name}")
            delta = poly - Polynomial.sym(sym)
            for s in delta.symbols():
                if s.degree >= sym.degree:
                    raise SchemeError(
                        f"not triangular: image of {sym.name} moves by a term in {s.name}"
                    )
            if delta.constant_term():
                raise SchemeError(
                    f"image of {sym.name} has a constant shift; the zero vector "
                    "must stay fixed"
                )
        self.scheme = scheme
        self.image = image
        self._applier = None
        self._inverse = None
        self._translation = False  # uncomputed; see translation_delta

    def delta(self, sym):
        """The increment polynomial image(y_J) − y_J."""
        return self.image[sym] - Polynomial.sym(sym)

    def is_identity(self):
        return all(self.image[s] == Polynomial.sym(s)
                   for s in self.scheme.coords if s.degree >= 2)

    def __eq__(self, other):
        return map_equal(self, other) if isinstance(other, ActionMap) else NotImplemented

    def __hash__(self):
        return hash((self.scheme.n, tuple(sorted(
            (s.name, self.image[s]) for s in self.image
        ))))

    def __repr__(self):
        moved = [s.name for s in self.scheme.coords
                 if s.degree >= 2 and not self.delta(s).is_zero()]
        inside = ", ".join(moved) if moved else "identity"
        return f"<ActionMap n={self.scheme.n} moves: {inside}>"


def identity(scheme):
    return ActionMap(scheme, {
        s: Polynomial.sym(s) for s in scheme.coords if s.degree >= 2
    })


def from_table(table, label):
    """The map of one table column: y_J ↦ y_J + entry(label, y_J)."""
    if isinstance(label, str):
        token = label
    else:
        token = label.token
    rows = table.rows(token)  # raises TableError for unknown labels
    scheme = table.scheme
    image = {}
    for sym in scheme.coords:
        if sym.degree < 2:
            continue
        poly = Polynomial.sym(sym)
        inc = rows.get(sym)
        if inc is not None:
            poly = poly + inc
        image[sym] = poly
    return ActionMap(scheme, image)


def apply(m, v):
    """Act on an integer vector: each coordinate's image evaluated at v."""
    if v.scheme.n != m.scheme.n:
        raise SchemeError(
            f"cannot apply an n={m.scheme.n} map to an n={v.scheme.n} vector"
        )
    point = v.as_point()
    out = []
    for sym in m.scheme.coords:
        if sym.degree < 2:
            out.append(point[sym])
        else:
            out.append(evaluate(m.image[sym], point))
    return InvariantVector(m.scheme, out)


def _image_assignment(m):
    """Full {Symbol: Polynomial} for substitution (identity on degree 1)."""
    assignment = {}
    for sym in m.scheme.coords:
        assignment[sym] = m.image[sym] if sym.degree >= 2 else Polynomial.sym(sym)
    return assignment


def compose(a, b):
    """The map 'a after b': first b acts, then a."""
    if a.scheme.n != b.scheme.n:
        raise SchemeError("cannot compose maps from different schemes")
    b_images = _image_assignment(b)
    image = {}
    for sym in a.scheme.coords:
        if sym.degree < 2:
            continue
        image[sym] = substitute(a.image[sym], b_images)
    return ActionMap(a.scheme, image)


def compose_sequence(maps, scheme=None):
    """Compose a list of maps so the first listed acts first."""
    maps = list(maps)
    if not maps:
        if scheme is None:
            raise SchemeError("compose_sequence of no maps needs an explicit scheme")
        return identity(scheme)
    result = maps[0]
    for m in maps[1:]:
        result = compose(m, result)
    return result


def invert(m):
    """Exact inverse by back-substitution, degree by degree.

    If image(J) = J + δ_J with δ_J in lower degrees, then the inverse sends
    J ↦ J − δ_J∘(inverse on lower degrees); by induction on degree the needed
    lower-degree images are already known.  Memoized on the map.
    """
    if m._inverse is not None:
        return m._inverse
    scheme = m.scheme
    inv_assignment = {s: Polynomial.sym(s) for s in scheme.coords if s.degree < 2}
    image = {}
    for d in range(2, scheme.max_degree + 1):
        for sym in scheme.symbols_of_degree(d):
            delta = m.delta(sym)
            image[sym] = Polynomial.sym(sym) - substitute(delta, inv_assignment)
        for sym in scheme.symbols_of_degree(d):
            inv_assignment[sym] = image[sym]
    inv = ActionMap(scheme, image)
    inv._inverse = m
    m._inverse = inv
    return inv


def power(m, k):
    """k-fold composition; k = 0 is the identity, negative k uses invert."""
    if not isinstance(k, int):
        raise SchemeError("map powers take integer exponents")
    if k < 0:
        return power(invert(m), -k)
    result = identity(m.scheme)
    base = m
    while k:
        if k & 1:
            result = compose(base, result)
        if k > 1:
            base = compose(base, base)
        k >>= 1
    return result


def commutator(a, b):
    """[a, b] = a ∘ b ∘ a⁻¹ ∘ b⁻¹."""
    return compose(a, compose(b, compose(invert(a), invert(b))))


def map_equal(a, b):
    """Symbolic coordinate-wise equality of canonical image polynomials."""
    if a.scheme.n != b.scheme.n:
        raise SchemeError("cannot compare maps from different schemes")
    return all(
        a.image[s] == b.image[s]
        for s in a.scheme.coords if s.degree >= 2
    )


def translation_delta(m):
    """The {Symbol: Polynomial} of nonzero increments, if m is a translation.

    A map whose increments mention only coordinates the map fixes adds the
    same amount on every application: m^k(v) = v + k·δ(v).  Commutator maps
    are the chief examples (they move a top block by polynomials in lower,
    fixed coordinates).  Returns None when the criterion fails.  Memoized.
    """
    if m._translation is False:
        moved = {}
        for sym in m.scheme.coords:
            if sym.degree < 2:
                continue
            d = m.delta(sym)
            if not d.is_zero():
                moved[sym] = d
        if any(s in moved for d in moved.values() for s in d.symbols()):
            m._translation = None
        else:
            m._translation = moved
    return m._translation


def apply_power(m, k, v):
    """apply(power(m, k), v), choosing iteration or symbolic squaring.

    Extensionally identical to the symbolic route; translations are applied
    in closed form and small |k| just iterates a compiled applier, which is
    much cheaper inside the randomized suites.
    """
    if k == 0:
        return v
    if translation_delta(m) is not None:
        once = compile_applier(m)(v.values)
        if k != 1:
            once = tuple(a + k * (b - a) for a, b in zip(v.values, once))
        return InvariantVector(v.scheme, once)
    if abs(k) <= 4096:
        applier = compile_applier(m if k > 0 else invert(m))
        values = v.values
        for _ in range(abs(k)):
            values = applier(values)
        return InvariantVector(v.scheme, values)
    return apply(power(m, k), v)


def state_power(m, p, v):
    """Apply m to the k-th power where k = p evaluated at v itself.

    The exponent polynomial may mention only degree-1 and degree-2
    coordinates (that is all the composition recipes ever use).
    """
    for s in p.symbols():
        if s.degree > 2:
            raise SchemeError(
                f"state exponent mentions {s.name} of degree {s.degree}; "
                "only degree 1 and 2 are allowed"
            )
    k = evaluate(p, v.as_point())
    return apply_power(m, k, v)


# ---------------------------------------------------------------------------
# compiled appliers
# ---------------------------------------------------------------------------

def _poly_expr(poly, var_of):
    """Render a polynomial as a Python expression over variable names."""
    if poly.is_zero():
        return "0"
    parts = []
    for mono, coeff in sorted(poly.terms.items(),
                              key=lambda kv: tuple(s.rank for s in kv[0])):
        factors = [var_of[s] for s in mono]
        if coeff == 1 and factors:
            term = "*".join(factors)
        elif coeff == -1 and factors:
            term = "-" + "*".join(factors)
        else:
            term = "*".join([str(coeff)] + factors)
        parts.append(term)
    expr = parts[0]
    for term in parts[1:]:
        expr += (" - " + term[1:]) if term.startswith("-") else (" + " + term)
    return expr


def compile_applier(m):
    """A function mapping a value tuple to the image value tuple, exactly.

    The generated code is one tuple unpack and one arithmetic expression per
    coordinate — the same integer arithmetic `apply` performs, minus the
    interpretive overhead.  The result is cached on the map.
    """
    if m._applier is not None:
        return m._applier
    coords = m.scheme.coords
    var_of = {s: f"v{i}" for i, s in enumerate(coords)}
    exprs = []
    for i, sym in enumerate(coords):
        if sym.degree < 2:
            exprs.append(var_of[sym])
            continue
        delta = m.delta(sym)
        if delta.is_zero():
            exprs.append(var_of[sym])
        else:
            exprs.append(f"{var_of[sym]} + ({_poly_expr(delta, var_of)})")
    names = ", ".join(var_of[s] for s in coords)
    source = "def _applier(values):\n"
    source += f"    {names}, = values\n" if len(coords) == 1 else f"    {names} = values\n"
    source += "    return (" + ", ".join(exprs) + ")\n"
    namespace = {}
    exec(source, namespace)  # noqa: S102 - generated from validated polynomial data
    m._applier = namespace["_applier"]
    return m._applier
