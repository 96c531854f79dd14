"""Exact classification and decision of link-homotopy for 4- and 5-component links.

The invariant of a link is a tuple of integers (6+4+2 = 12 coordinates for
four components, 10+10+10+6 = 36 for five), and two links are link-homotopic
exactly when a word in the shipped generator actions carries one tuple to
the other.  Everything here is exact integer and polynomial arithmetic: no
floats touch a result, witnesses replay byte-for-byte, and the shipped
tables carry content digests plus an automated consistency suite.

The usual entry points:

* `load_scheme`, `InvariantVector`, `read_vector`, `write_vector` — the
  coordinate schemes and vectors;
* `parse_word`, `GeneratorWord`, `apply_word` — generator words and replay;
* `decide`, `normal_form`, `orbit_bfs` — the decision procedure, canonical
  forms, and the brute-force orbit oracle;
* `run_suite` — the table consistency checks;
* the `linkhom` console command for all of the above from a shell.
"""

from .errors import (
    LinkhomError,
    ParseError,
    SchemeError,
    TableError,
    WordError,
)
from .homotopy import (
    Verdict,
    OrbitResult,
    apply_word,
    decide,
    generators,
    normal_form,
    orbit_bfs,
)
from .model import (
    GeneratorId,
    GeneratorWord,
    InvariantVector,
    all_generators,
    format_word,
    load_scheme,
    load_shipped_table,
    parse_word,
    read_vector,
    write_vector,
    write_vector_text,
)
from .verify import CheckReport, run_suite

__version__ = "0.1.0"

__all__ = [
    "CheckReport",
    "GeneratorId",
    "GeneratorWord",
    "InvariantVector",
    "LinkhomError",
    "OrbitResult",
    "ParseError",
    "SchemeError",
    "TableError",
    "Verdict",
    "WordError",
    "all_generators",
    "apply_word",
    "decide",
    "format_word",
    "generators",
    "load_scheme",
    "load_shipped_table",
    "normal_form",
    "orbit_bfs",
    "parse_word",
    "read_vector",
    "run_suite",
    "write_vector",
    "write_vector_text",
    "__version__",
]
