"""Presentation files: a TOML document with ``[ring]`` and ``[module]`` tables.

::

    [ring]
    name = "Z4"
    moduli = [4]
    one = [1]
    table = [
      [[1]],
    ]

    [module]
    name = "Z4+Z2"
    moduli = [4, 2]
    action = [
      [[1, 0], [0, 1]],
    ]

``table[i][j]`` is the coordinate vector of ``b_i * b_j``; ``action[j]`` is
the matrix (columns are images of module generators) of ``m -> m * b_j``.
"""

from __future__ import annotations

import re
import sys
from pathlib import Path

from .presentations import ModulePresentation, RingPresentation, ValidationError, as_matrix, validate_module, validate_ring

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib


class PresentationError(ValueError):
    """Parse or validation failure, anchored to a line of the input."""

    def __init__(self, message: str, line: int | None = None, source: str = "<input>"):
        self.line = line
        self.source = source
        where = f"{source}:{line}" if line else source
        super().__init__(f"{where}: {message}")


def _line_of(text: str, section: str, key: str | None = None) -> int | None:
    """1-based line of ``key`` inside ``[section]`` (or of the header)."""
    current = None
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        header = re.fullmatch(r"\[\s*([A-Za-z_]+)\s*\]", line)
        if header:
            current = header.group(1)
            if key is None and current == section:
                return no
            continue
        if current == section and key and re.match(rf"{re.escape(key)}\s*=", line):
            return no
    return None


def _int_list(value, what: str) -> list[int]:
    if not isinstance(value, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in value):
        raise TypeError(f"{what} must be a list of integers")
    return value


def _matrix(value, what: str) -> list[list[int]]:
    if not isinstance(value, list):
        raise TypeError(f"{what} must be a list of integer rows")
    return [_int_list(r, f"{what} row") for r in value]


def parse_presentation(text: str, source: str = "<input>") -> ModulePresentation:
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        m = re.search(r"line (\d+)", str(exc))
        raise PresentationError(f"syntax error: {exc}", int(m.group(1)) if m else None, source) from None

    for section in ("ring", "module"):
        if section not in doc or not isinstance(doc[section], dict):
            raise PresentationError(f"missing [{section}] table", None, source)

    def field(section: str, key: str, conv):
        table = doc[section]
        if key not in table:
            raise PresentationError(f"[{section}] is missing '{key}'", _line_of(text, section), source)
        try:
            return conv(table[key])
        except TypeError as exc:
            raise PresentationError(str(exc), _line_of(text, section, key), source) from None

    ring_moduli = field("ring", "moduli", lambda v: _int_list(v, "ring moduli"))
    one = field("ring", "one", lambda v: _int_list(v, "ring one"))
    table = field("ring", "table", lambda v: [_matrix(row, "ring table entry") for row in v])
    mod_moduli = field("module", "moduli", lambda v: _int_list(v, "module moduli"))
    action = field("module", "action", lambda v: [_matrix(A, "action matrix") for A in v])

    k = len(ring_moduli)
    if any(m < 0 for m in ring_moduli) or any(m < 0 for m in mod_moduli):
        bad = "ring" if any(m < 0 for m in ring_moduli) else "module"
        raise PresentationError("moduli must be non-negative", _line_of(text, bad, "moduli"), source)
    if len(one) != k:
        raise PresentationError(f"'one' has {len(one)} coordinates, expected {k}", _line_of(text, "ring", "one"), source)
    if len(table) != k or any(len(row) != k or any(len(v) != k for v in row) for row in table):
        raise PresentationError(f"'table' must be {k} x {k} vectors of length {k}", _line_of(text, "ring", "table"), source)
    n = len(mod_moduli)
    if len(action) != k or any(len(A) != n or any(len(r) != n for r in A) for A in action):
        raise PresentationError(
            f"'action' must hold {k} matrices of size {n} x {n}", _line_of(text, "module", "action"), source
        )

    R = RingPresentation(
        tuple(ring_moduli),
        tuple(tuple(tuple(v) for v in row) for row in table),
        tuple(one),
        name=str(doc["ring"].get("name", "R")),
    )
    M = ModulePresentation(
        R, tuple(mod_moduli), tuple(as_matrix(A) for A in action), name=str(doc["module"].get("name", "M"))
    )
    try:
        validate_ring(R)
    except ValidationError as exc:
        raise PresentationError(f"invalid ring: {exc}", _line_of(text, "ring", "table"), source) from None
    try:
        validate_module(M)
    except ValidationError as exc:
        raise PresentationError(f"invalid module: {exc}", _line_of(text, "module", "action"), source) from None
    return M


def load_presentation(path: str | Path) -> ModulePresentation:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise PresentationError(f"cannot read file: {exc.strerror}", None, str(p)) from None
    return parse_presentation(text, source=str(p))


def _vec(v) -> str:
    return "[" + ", ".join(str(x) for x in v) + "]"


def _mat(A) -> str:
    return "[" + ", ".join(_vec(r) for r in A) + "]"


def dump_presentation(M: ModulePresentation) -> str:
    """Canonical text: fixed key order, one table row or action matrix per line."""
    R = M.ring
    lines = [
        "[ring]",
        f'name = "{R.name}"',
        f"moduli = {_vec(R.moduli)}",
        f"one = {_vec(R.one)}",
        "table = [",
        *(f"  {_mat(row)}," for row in R.table),
        "]",
        "",
        "[module]",
        f'name = "{M.name}"',
        f"moduli = {_vec(M.moduli)}",
        "action = [",
        *(f"  {_mat(A)}," for A in M.action),
        "]",
        "",
    ]
    return "\n".join(lines)
