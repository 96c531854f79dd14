"""Coordinate schemes, invariant vectors, generator ids, words, and file formats.

This module owns every textual interface of the package:

* Vector files: first meaningful line ``n=4`` or ``n=5``, then ``y_<digits>=<int>``
  lines; ``#`` starts a comment; coordinates not mentioned are 0.
* Generator words: whitespace-separated factors.  A factor is ``x_ij`` (partial
  conjugation), ``xs_ij`` (simplified partial conjugation), ``cx_ij``
  (conjugation, symmetric in i and j), or a commutator ``[A,B]`` of two such
  tokens, nestable once (``[x_41,[x_21,x_31]]``); any factor may carry an
  integer exponent suffix ``^k``.  A word acts left factor first.
* Table files: sections headed ``[<generator-or-commutator token>]`` followed by
  ``y_<digits> = <polynomial expression>`` rows; omitted rows mean zero.
  Shipped tables are verified against recorded content digests at load.

The scheme data itself (which coordinates exist and in what order) lives in
polyring.COORD_INDICES; the order is load-bearing for monomial ordering,
matrix column layouts, canonical forms, and file output, so there is exactly
one copy of it.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass
from importlib import resources

from .errors import ParseError, SchemeError, TableError, WordError
from .polyring import COORD_INDICES, Polynomial, Symbol, parse_poly, poly_to_str


class CoordinateScheme:
    """The frozen, degree-graded coordinate list for n = 4 or n = 5."""

    __slots__ = ("n", "coords", "_by_name", "_position", "_by_degree")

    def __init__(self, n):
        if n not in COORD_INDICES:
            raise SchemeError(f"unsupported component count n={n} (only 4 and 5)")
        self.n = n
        self.coords = tuple(Symbol.get(n, idx) for idx in COORD_INDICES[n])
        self._by_name = {s.name: s for s in self.coords}
        self._position = {s: i for i, s in enumerate(self.coords)}
        self._by_degree = {}
        for s in self.coords:
            self._by_degree.setdefault(s.degree, []).append(s)

    def symbol(self, name):
        sym = self._by_name.get(name)
        if sym is None:
            raise SchemeError(f"{name} is not a coordinate of the n={self.n} scheme")
        return sym

    def position(self, sym):
        pos = self._position.get(sym)
        if pos is None:
            raise SchemeError(f"{sym!r} is not a coordinate of the n={self.n} scheme")
        return pos

    def symbols_of_degree(self, d):
        return tuple(self._by_degree.get(d, ()))

    @property
    def max_degree(self):
        return self.n - 1

    def __repr__(self):
        return f"CoordinateScheme(n={self.n}, {len(self.coords)} coordinates)"

    def __eq__(self, other):
        return isinstance(other, CoordinateScheme) and other.n == self.n

    def __hash__(self):
        return hash(("CoordinateScheme", self.n))


_SCHEMES = {}


def load_scheme(n):
    """The coordinate scheme for n components (4 or 5); cached."""
    if n not in COORD_INDICES:
        raise SchemeError(f"unsupported component count n={n} (only 4 and 5)")
    if n not in _SCHEMES:
        _SCHEMES[n] = CoordinateScheme(n)
    return _SCHEMES[n]


class InvariantVector:
    """A total integer assignment to one scheme's coordinates (immutable)."""

    __slots__ = ("scheme", "values", "_hash")

    def __init__(self, scheme, values):
        values = tuple(int(v) for v in values)
        if len(values) != len(scheme.coords):
            raise SchemeError(
                f"vector needs {len(scheme.coords)} values for n={scheme.n}, got {len(values)}"
            )
        self.scheme = scheme
        self.values = values
        self._hash = None

    @classmethod
    def zero(cls, scheme):
        return cls(scheme, (0,) * len(scheme.coords))

    @classmethod
    def from_values(cls, scheme, mapping):
        """Build from {symbol-or-name: int}; unmentioned coordinates are 0."""
        out = [0] * len(scheme.coords)
        for key, val in mapping.items():
            sym = scheme.symbol(key) if isinstance(key, str) else key
            out[scheme.position(sym)] = int(val)
        return cls(scheme, out)

    def value(self, sym):
        return self.values[self.scheme.position(sym)]

    def __getitem__(self, key):
        if isinstance(key, str):
            key = self.scheme.symbol(key)
        return self.value(key)

    def as_point(self):
        """Full {Symbol: int} assignment, for polynomial evaluation."""
        return dict(zip(self.scheme.coords, self.values))

    def degree_values(self, d):
        return tuple(self.value(s) for s in self.scheme.symbols_of_degree(d))

    def nonzero(self):
        return [(s, v) for s, v in zip(self.scheme.coords, self.values) if v]

    def with_values(self, mapping):
        out = list(self.values)
        for key, val in mapping.items():
            sym = self.scheme.symbol(key) if isinstance(key, str) else key
            out[self.scheme.position(sym)] = int(val)
        return InvariantVector(self.scheme, out)

    def __eq__(self, other):
        return (
            isinstance(other, InvariantVector)
            and other.scheme.n == self.scheme.n
            and other.values == self.values
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.scheme.n, self.values))
        return self._hash

    def __repr__(self):
        inside = " ".join(f"{s.name}={v}" for s, v in self.nonzero()) or "0"
        return f"<vector n={self.scheme.n} {inside}>"


# ---------------------------------------------------------------------------
# vector file format
# ---------------------------------------------------------------------------

_VEC_LINE = re.compile(r"^(y_\d+)\s*=\s*([+-]?\d+)$")


def read_vector_text(text, source="<string>"):
    scheme = None
    seen = set()
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if scheme is None:
            m = re.match(r"^n\s*=\s*(\d+)$", line)
            if not m:
                raise ParseError(
                    "first line of a vector file must be 'n=4' or 'n=5'",
                    source=source, line=lineno, token=line,
                )
            n = int(m.group(1))
            if n not in COORD_INDICES:
                raise ParseError(
                    f"unsupported component count n={n} (only 4 and 5)",
                    source=source, line=lineno, token=line,
                )
            scheme = load_scheme(n)
            continue
        m = _VEC_LINE.match(line)
        if not m:
            raise ParseError(
                "expected 'y_<digits>=<integer>'",
                source=source, line=lineno, token=line,
            )
        name, val = m.group(1), m.group(2)
        try:
            sym = scheme.symbol(name)
        except SchemeError as exc:
            raise ParseError(str(exc), source=source, line=lineno, token=name) from None
        if sym in seen:
            raise ParseError(
                f"duplicate coordinate {name}", source=source, line=lineno, token=name
            )
        seen.add(sym)
        values[sym] = int(val)
    if scheme is None:
        raise ParseError("empty vector file (missing 'n=' line)", source=source)
    return InvariantVector.from_values(scheme, values)


def read_vector(path):
    with open(path, "r", encoding="utf-8") as fh:
        return read_vector_text(fh.read(), source=str(path))


def write_vector_text(v):
    lines = [f"n={v.scheme.n}"]
    lines.extend(f"{s.name}={val}" for s, val in v.nonzero())
    return "\n".join(lines) + "\n"


def write_vector(v, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(write_vector_text(v))


# ---------------------------------------------------------------------------
# generator ids, commutator factors, words
# ---------------------------------------------------------------------------

FAMILIES = ("raw", "simplified", "conj")
_FAMILY_PREFIX = {"raw": "x", "simplified": "xs", "conj": "cx"}
_PREFIX_FAMILY = {v: k for k, v in _FAMILY_PREFIX.items()}


@dataclass(frozen=True)
class GeneratorId:
    """One generator: family 'raw' (x_ij), 'simplified' (xs_ij), 'conj' (cx_ij).

    cx_ij = cx_ji; conj ids are normalized to i < j at construction.
    """

    family: str
    i: int
    j: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise SchemeError(f"unknown generator family {self.family!r}")
        if self.i == self.j or self.i < 1 or self.j < 1:
            raise SchemeError(f"bad generator indices ({self.i}, {self.j})")
        if self.family == "conj" and self.i > self.j:
            # normalize via object.__setattr__ because the dataclass is frozen
            i, j = self.j, self.i
            object.__setattr__(self, "i", i)
            object.__setattr__(self, "j", j)

    @property
    def token(self):
        return f"{_FAMILY_PREFIX[self.family]}_{self.i}{self.j}"

    def check_in(self, scheme):
        if self.i > scheme.n or self.j > scheme.n:
            raise SchemeError(f"generator {self.token} is out of range for n={scheme.n}")
        return self

    def __repr__(self):
        return self.token


@dataclass(frozen=True)
class Commutator:
    """[left, right] of two word factors; nesting depth at most 2."""

    left: object
    right: object

    def __post_init__(self):
        if self._depth() > 2:
            raise WordError(f"commutators nest at most once: {self.token}")

    def _depth(self):
        def depth(f):
            return 1 + max(depth(f.left), depth(f.right)) if isinstance(f, Commutator) else 0
        return depth(self)

    @property
    def token(self):
        def tok(f):
            return f.token
        return f"[{tok(self.left)},{tok(self.right)}]"

    def __repr__(self):
        return self.token


def all_generators(n, family):
    """All generator ids of one family for n components, in index order.

    Counts: n=4 → 12 raw, 12 simplified, 6 conj; n=5 → 20, 20, 10.
    """
    if n not in COORD_INDICES:
        raise SchemeError(f"unsupported component count n={n}")
    if family == "conj":
        return tuple(
            GeneratorId("conj", i, j)
            for i in range(1, n + 1) for j in range(i + 1, n + 1)
        )
    return tuple(
        GeneratorId(family, i, j)
        for i in range(1, n + 1) for j in range(1, n + 1) if i != j
    )


class GeneratorWord:
    """An ordered product of factors with integer exponents.

    Replay semantics: the leftmost factor acts first.  Exponents are nonzero;
    the empty word is the identity.
    """

    __slots__ = ("factors",)

    def __init__(self, factors):
        factors = tuple((f, int(e)) for f, e in factors)
        for f, e in factors:
            if e == 0:
                raise WordError(f"zero exponent on factor {f.token}")
        self.factors = factors

    def __len__(self):
        return len(self.factors)

    def __iter__(self):
        return iter(self.factors)

    def __eq__(self, other):
        return isinstance(other, GeneratorWord) and other.factors == self.factors

    def __hash__(self):
        return hash(self.factors)

    @property
    def token_text(self):
        return format_word(self)

    def __repr__(self):
        return self.token_text or "<empty word>"


def format_word(word):
    parts = []
    for factor, exp in word:
        parts.append(factor.token if exp == 1 else f"{factor.token}^{exp}")
    return " ".join(parts)


_ATOM = re.compile(r"^(xs|cx|x)_([1-9])([1-9])$")


def _parse_factor_token(text, scheme, source, line=None):
    """One factor without exponent: atom or bracketed commutator."""
    if text.startswith("["):
        if not text.endswith("]"):
            raise WordError("unbalanced '[' in factor", source=source, line=line, token=text)
        inner = text[1:-1]
        depth = 0
        split_at = -1
        for pos, ch in enumerate(inner):
            if ch == "[":
                depth += 1
            elif ch == "]":
                depth -= 1
                if depth < 0:
                    raise WordError("unbalanced ']' in factor", source=source, line=line, token=text)
            elif ch == "," and depth == 0:
                if split_at >= 0:
                    raise WordError("commutator takes exactly two arguments",
                                    source=source, line=line, token=text)
                split_at = pos
        if split_at < 0 or depth != 0:
            raise WordError("malformed commutator", source=source, line=line, token=text)
        left = _parse_factor_token(inner[:split_at], scheme, source, line)
        right = _parse_factor_token(inner[split_at + 1:], scheme, source, line)
        try:
            return Commutator(left, right)
        except WordError as exc:
            raise WordError(exc.message, source=source, line=line, token=text) from None
    m = _ATOM.match(text)
    if not m:
        raise WordError(f"unrecognized generator token {text!r}",
                        source=source, line=line, token=text)
    try:
        gen = GeneratorId(_PREFIX_FAMILY[m.group(1)], int(m.group(2)), int(m.group(3)))
        gen.check_in(scheme)
    except SchemeError as exc:
        raise WordError(str(exc), source=source, line=line, token=text) from None
    return gen


def parse_word(text, scheme, source="<word>"):
    """Parse whitespace-separated factors, each optionally suffixed ^<int>."""
    factors = []
    for tok in text.split():
        body, sep, exp_text = tok.rpartition("^")
        if sep:
            if not re.match(r"^[+-]?\d+$", exp_text):
                raise WordError(f"bad exponent {exp_text!r}", source=source, token=tok)
            exp = int(exp_text)
        else:
            body, exp = tok, 1
        factor = _parse_factor_token(body, scheme, source)
        if exp != 0:  # ^0 factors are the identity; drop them
            factors.append((factor, exp))
    return GeneratorWord(factors)


# ---------------------------------------------------------------------------
# action tables
# ---------------------------------------------------------------------------

class ActionTable:
    """Parsed table: ordered generator/commutator labels → {Symbol: Polynomial}.

    Entries are the *increments*: the table value for row y_J under column g is
    the polynomial added to y_J when g acts.  Rows never target degree-1
    coordinates (linking numbers are invariant), and every entry mentions only
    coordinates of strictly lower degree than its row.
    """

    __slots__ = ("name", "scheme", "labels", "entries")

    def __init__(self, name, scheme, labels, entries):
        self.name = name
        self.scheme = scheme
        self.labels = tuple(labels)
        self.entries = entries

    def entry(self, label, sym):
        rows = self.rows(label)
        return rows.get(sym, Polynomial.zero(self.scheme.n))

    def rows(self, label):
        if label not in self.entries:
            raise TableError(f"table {self.name!r} has no column {label!r}")
        return self.entries[label]

    def __contains__(self, label):
        return label in self.entries

    def __repr__(self):
        return f"ActionTable({self.name!r}, n={self.scheme.n}, {len(self.labels)} columns)"


_SECTION = re.compile(r"^\[(.+)\]$")
_ROW = re.compile(r"^(y_\d+)\s*=\s*(.+)$")


def parse_table_text(text, scheme, name, source="<table>"):
    labels = []
    entries = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _SECTION.match(line)
        if m:
            token_text = m.group(1).strip()
            try:
                factor = _parse_factor_token(token_text, scheme, source, lineno)
            except WordError as exc:
                raise TableError(f"{source}:{lineno}: bad section label: {exc.message}") from None
            label = factor.token
            if label in entries:
                raise TableError(f"{source}:{lineno}: duplicate section {label!r}")
            labels.append(label)
            entries[label] = {}
            current = entries[label]
            continue
        if current is None:
            raise TableError(f"{source}:{lineno}: row before any section header")
        m = _ROW.match(line)
        if not m:
            raise TableError(f"{source}:{lineno}: expected 'y_<digits> = <expression>'")
        sym_name, expr = m.group(1), m.group(2)
        try:
            sym = scheme.symbol(sym_name)
        except SchemeError as exc:
            raise TableError(f"{source}:{lineno}: {exc}") from None
        if sym.degree < 2:
            raise TableError(
                f"{source}:{lineno}: {sym_name} has degree 1; linking numbers are "
                "invariant and may not appear as table rows"
            )
        if sym in current:
            raise TableError(f"{source}:{lineno}: duplicate row {sym_name} in {labels[-1]!r}")
        try:
            poly = parse_poly(expr, scheme)
        except ParseError as exc:
            raise TableError(f"{source}:{lineno}: {exc}") from None
        bad = [s for s in poly.symbols() if s.degree >= sym.degree]
        if bad:
            raise TableError(
                f"{source}:{lineno}: entry for {sym_name} mentions {bad[0].name}, "
                f"which does not have strictly lower degree"
            )
        if poly.constant_term():
            raise TableError(
                f"{source}:{lineno}: entry for {sym_name} has a nonzero constant term; "
                "increments must vanish at the zero state"
            )
        if not poly.is_zero():
            current[sym] = poly
    if not labels:
        raise TableError(f"{source}: table has no sections")
    return ActionTable(name, scheme, labels, entries)


def file_digest(data):
    return hashlib.sha256(data).hexdigest()


def load_table(path, scheme, digest=None, name=None):
    """Load a table file.  If `digest` is given, the raw bytes must match it."""
    with open(path, "rb") as fh:
        data = fh.read()
    if digest is not None and file_digest(data) != digest:
        raise TableError(
            f"{path}: content digest mismatch (expected {digest[:12]}…); "
            "the file differs from the recorded transcription"
        )
    return parse_table_text(
        data.decode("utf-8"), scheme, name or str(path), source=str(path)
    )


# Shipped data files.  Keys are "<kind>_<n>"; values: (n, expected column count).
SHIPPED_TABLES = {
    "partial_conj_4": (4, 12),
    "commutators_4": (4, 6),
    "simplified_4": (4, 12),
    "conjugations_4": (4, 6),
    "partial_conj_5": (5, 20),
    "commutators_5": (5, 20),
    "commutators_reduced_5": (5, 20),
    "triple_commutators_5": (5, 20),
    "simplified_5": (5, 20),
    "conjugations_5": (5, 10),
}

_TABLE_CACHE = {}


def _data_root():
    return resources.files(__package__) / "tables"


def shipped_digests():
    """The recorded {filename: sha256} registry shipped with the package."""
    text = (_data_root() / "DIGESTS").read_text(encoding="utf-8")
    out = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        digest, filename = line.split()
        out[filename] = digest
    return out

def load_shipped_table(key):
    """Load one of the package's table files, verifying its recorded digest."""
    if key in _TABLE_CACHE:
        return _TABLE_CACHE[key]
    if key not in SHIPPED_TABLES:
        raise TableError(
            f"unknown table {key!r}; available: {', '.join(sorted(SHIPPED_TABLES))}"
        )
    n, expected_columns = SHIPPED_TABLES[key]
    filename = key + ".tbl"
    digest = shipped_digests().get(filename)
    if digest is None:
        raise TableError(f"no digest recorded for {filename}")
    data = (_data_root() / filename).read_bytes()
    if file_digest(data) != digest:
        raise TableError(
            f"{filename}: content digest mismatch; shipped data was altered"
        )
    table = parse_table_text(
        data.decode("utf-8"), load_scheme(n), key, source=filename
    )
    if len(table.labels) != expected_columns:
        raise TableError(
            f"{filename}: expected {expected_columns} columns, found {len(table.labels)}"
        )
    _TABLE_CACHE[key] = table
    return table
