"""Exact sparse multivariate polynomials in the invariant coordinates y_J.

Every table entry, action-map image, and exponent formula in this package is a
value of `Polynomial`: a finite sum of integer-coefficient monomials in the
coordinate symbols.  Coefficients are plain Python ints, so all arithmetic is
arbitrary precision; there is no floating point anywhere.

Symbols are interned per component count n and validated at construction
against the frozen coordinate lists of the classification, so a typo such as
y_132 can never silently create a phantom variable.  The legal lists (and
their order, which fixes the monomial order and every file/matrix layout
downstream) are:

  n=4: y_12 y_13 y_14 y_23 y_24 y_34 | y_123 y_124 y_134 y_234
       | y_1234 y_1324                                          (12 symbols)
  n=5: y_12 y_13 y_14 y_15 y_23 y_24 y_25 y_34 y_35 y_45
       | y_123 y_124 y_134 y_125 y_135 y_145 y_234 y_235 y_245 y_345
       | y_1234 y_1324 y_1235 y_1245 y_1325 y_1345 y_1425 y_1435 y_2345 y_2435
       | y_12345 y_12435 y_13245 y_13425 y_14235 y_14325        (36 symbols)

A symbol y_J with |J| = k+1 has degree k; degree-1 symbols are the linking
numbers.  Monomials are ordered graded-lexicographically: first by total
degree (sum of symbol degrees), then lexicographically on the symbols' ranks
in the lists above.  Printing uses that order descending, which reproduces the
tables' own layout, and `parse_poly` /`poly_to_str` are mutually inverse on
canonical forms.
"""

from __future__ import annotations

from .errors import ParseError, SchemeError

COORD_INDICES = {
    4: (
        (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4),
        (1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4),
        (1, 2, 3, 4), (1, 3, 2, 4),
    ),
    5: (
        (1, 2), (1, 3), (1, 4), (1, 5), (2, 3),
        (2, 4), (2, 5), (3, 4), (3, 5), (4, 5),
        (1, 2, 3), (1, 2, 4), (1, 3, 4), (1, 2, 5), (1, 3, 5),
        (1, 4, 5), (2, 3, 4), (2, 3, 5), (2, 4, 5), (3, 4, 5),
        (1, 2, 3, 4), (1, 3, 2, 4), (1, 2, 3, 5), (1, 2, 4, 5),
        (1, 3, 2, 5), (1, 3, 4, 5), (1, 4, 2, 5), (1, 4, 3, 5),
        (2, 3, 4, 5), (2, 4, 3, 5),
        (1, 2, 3, 4, 5), (1, 2, 4, 3, 5), (1, 3, 2, 4, 5),
        (1, 3, 4, 2, 5), (1, 4, 2, 3, 5), (1, 4, 3, 2, 5),
    ),
}

_KIND_BY_LEN = {2: "linking", 3: "triple", 4: "quadruple", 5: "quintuple"}


class Symbol:
    """One coordinate y_J, interned per (n, J).

    Construction goes through `Symbol.get`; direct instantiation of unlisted
    index tuples raises SchemeError.  Identity equality is object equality
    because of interning, and `rank` is the symbol's position in its scheme's
    frozen coordinate order.
    """

    __slots__ = ("n", "index", "name", "degree", "rank")

    _cache: dict = {}

    def __init__(self, n, index, rank):
        self.n = n
        self.index = index
        self.name = "y_" + "".join(str(i) for i in index)
        self.degree = len(index) - 1
        self.rank = rank

    @classmethod
    def get(cls, n, index):
        index = tuple(index)
        sym = cls._cache.get((n, index))
        if sym is None:
            if n not in COORD_INDICES:
                raise SchemeError(f"unsupported component count n={n}")
            try:
                rank = COORD_INDICES[n].index(index)
            except ValueError:
                name = "y_" + "".join(str(i) for i in index)
                raise SchemeError(
                    f"{name} is not a coordinate of the n={n} scheme"
                ) from None
            sym = cls(n, index, rank)
            cls._cache[(n, index)] = sym
        return sym

    @property
    def kind(self):
        return _KIND_BY_LEN[len(self.index)]

    def __repr__(self):
        return self.name

    def __lt__(self, other):
        if not isinstance(other, Symbol) or other.n != self.n:
            return NotImplemented
        return self.rank < other.rank


def _check_same_n(a, b, what):
    if a != b:
        raise SchemeError(f"cannot {what} polynomials from different schemes (n={a} vs n={b})")


def _mono_key(mono):
    # graded-lex: total degree first, then symbol ranks left to right
    return (sum(s.degree for s in mono), tuple(s.rank for s in mono))


class Polynomial:
    """Immutable canonical polynomial: map {sorted symbol tuple: nonzero int}.

    The monomial key is a tuple of Symbols sorted by rank, with repetition for
    powers (y*y rather than a stored exponent — table data never exceeds tiny
    degrees, and it keeps multiplication trivial).  The empty tuple is the
    constant monomial.
    """

    __slots__ = ("n", "terms", "_hash")

    def __init__(self, n, terms):
        if n not in COORD_INDICES:
            raise SchemeError(f"unsupported component count n={n}")
        self.n = n
        self.terms = terms
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def const(cls, n, c):
        return cls(n, {(): int(c)} if c else {})

    @classmethod
    def sym(cls, symbol):
        return cls(symbol.n, {(symbol,): 1})

    @classmethod
    def zero(cls, n):
        return cls(n, {})

    @classmethod
    def _from_accum(cls, n, accum):
        return cls(n, {m: c for m, c in accum.items() if c})

    # -- predicates / views -------------------------------------------------

    def is_zero(self):
        return not self.terms

    def constant_term(self):
        return self.terms.get((), 0)

    def symbols(self):
        out = set()
        for mono in self.terms:
            out.update(mono)
        return out

    def max_symbol_degree(self):
        return max((s.degree for m in self.terms for s in m), default=0)

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        _check_same_n(self.n, other.n, "add")
        accum = dict(self.terms)
        for mono, c in other.terms.items():
            accum[mono] = accum.get(mono, 0) + c
        return Polynomial._from_accum(self.n, accum)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.n, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        _check_same_n(self.n, other.n, "multiply")
        accum = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(sorted(m1 + m2, key=lambda s: s.rank))
                accum[mono] = accum.get(mono, 0) + c1 * c2
        return Polynomial._from_accum(self.n, accum)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial power requires a nonnegative integer exponent")
        result = Polynomial.const(self.n, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, int):
            return Polynomial.const(self.n, other)
        return NotImplemented

    # -- equality -----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = Polynomial.const(self.n, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            items = tuple(sorted(self.terms.items(), key=lambda kv: _mono_key(kv[0])))
            self._hash = hash((self.n, items))
        return self._hash

    def __repr__(self):
        return poly_to_str(self)

    __str__ = __repr__


def substitute(p, assignment):
    """Substitute polynomials for symbols; the homomorphic extension of the map.

    `assignment` must provide a Polynomial image for every symbol occurring in
    p (identity images must be given explicitly by the caller when wanted).
    """
    result = Polynomial.zero(p.n)
    power_cache = {}
    for mono, coeff in p.terms.items():
        term = Polynomial.const(p.n, coeff)
        for s in mono:
            image = assignment.get(s)
            if image is None:
                raise SchemeError(f"substitute: no image given for symbol {s.name}")
            term = term * image
        result = result + term
    return result


def evaluate(p, point):
    """Evaluate at an integer point: {Symbol: int} covering all symbols of p."""
    total = 0
    for mono, coeff in p.terms.items():
        value = coeff
        for s in mono:
            v = point.get(s)
            if v is None:
                raise SchemeError(f"evaluate: no value given for symbol {s.name}")
            value *= v
        total += value
    return total


# ---------------------------------------------------------------------------
# printing
# ---------------------------------------------------------------------------

def _mono_to_str(mono, coeff):
    parts = []
    if abs(coeff) != 1 or not mono:
        parts.append(str(abs(coeff)))
    parts.extend(s.name for s in mono)
    return "*".join(parts)


def poly_to_str(p):
    """Canonical rendering; `parse_poly(poly_to_str(p))` reproduces p."""
    if not p.terms:
        return "0"
    ordered = sorted(p.terms.items(), key=lambda kv: _mono_key(kv[0]), reverse=True)
    pieces = []
    for i, (mono, coeff) in enumerate(ordered):
        body = _mono_to_str(mono, coeff)
        if i == 0:
            pieces.append(("-" if coeff < 0 else "") + body)
        else:
            pieces.append((" - " if coeff < 0 else " + ") + body)
    return "".join(pieces)


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------
#
# expr   := term {("+"|"-") term}
# term   := factor {"*" factor}
# factor := integer | symbol | "-" factor | "(" expr ")"
# symbol := "y_" digits
#
# Whitespace is insignificant.  The grammar has no "^"; repeated factors
# express powers.

class _Scanner:
    def __init__(self, text, source):
        self.text = text
        self.pos = 0
        self.source = source

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def error(self, message, token=None):
        raise ParseError(
            f"{message} at position {self.pos}",
            source=self.source,
            token=token if token is not None else (self.peek() or "<end>"),
        )

    def take_symbol_or_int(self):
        self.skip_ws()
        start = self.pos
        text = self.text
        if text.startswith("y_", start):
            self.pos += 2
            while self.pos < len(text) and text[self.pos].isdigit():
                self.pos += 1
            token = text[start:self.pos]
            if self.pos == start + 2:
                self.error("expected digits after 'y_'", token=token)
            return ("sym", token)
        if text[start:start + 1].isdigit():
            while self.pos < len(text) and text[self.pos].isdigit():
                self.pos += 1
            return ("int", text[start:self.pos])
        self.error("expected an integer or a symbol")


def parse_poly(text, scheme):
    """Parse an expression in the grammar above into a canonical Polynomial.

    `scheme` supplies symbol lookup (anything with `.n` and
    `.symbol(name)` works; normally a model.CoordinateScheme).
    """
    sc = _Scanner(text, "<expr>")

    def parse_expr():
        value = parse_term()
        while True:
            ch = sc.peek()
            if ch == "+":
                sc.pos += 1
                value = value + parse_term()
            elif ch == "-":
                sc.pos += 1
                value = value - parse_term()
            else:
                return value

    def parse_term():
        value = parse_factor()
        while sc.peek() == "*":
            sc.pos += 1
            value = value * parse_factor()
        return value

    def parse_factor():
        ch = sc.peek()
        if ch == "-":
            sc.pos += 1
            return -parse_factor()
        if ch == "(":
            sc.pos += 1
            value = parse_expr()
            if sc.peek() != ")":
                sc.error("expected ')'")
            sc.pos += 1
            return value
        kind, token = sc.take_symbol_or_int()
        if kind == "int":
            return Polynomial.const(scheme.n, int(token))
        try:
            return Polynomial.sym(scheme.symbol(token))
        except SchemeError as exc:
            raise ParseError(str(exc), source=sc.source, token=token) from None

    value = parse_expr()
    sc.skip_ws()
    if sc.pos != len(sc.text):
        sc.error("trailing input after expression")
    return value
