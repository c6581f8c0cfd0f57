"""The ``.alg`` text format, JSON/text reports and DOT export."""

from __future__ import annotations

import dataclasses
import enum
import json
from importlib import resources
from typing import Any

import numpy as np

from .algebra import FiniteAlgebra, Signature
from .partitions import ConLattice, Congruence

SCHEMA = "cspec/1"


class AlgebraFileError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message, self.line, self.column = message, line, column


def _tokens(text: str):
    """(token, line, column) triples; '#' starts a comment."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        col = 0
        for part in line.split():
            col = line.index(part, col)
            yield part, lineno, col + 1
            col += len(part)


def parse_algebra_file(text: str) -> FiniteAlgebra:
    """Parse the line-oriented format.

    algebra <name>
    size <n>
    elements <e0> ... <en-1>      (optional)
    op <name> <arity>             (repeated)
    <n**arity entries, leftmost argument slowest>

    Entries are element names (when declared) or indices.
    """
    lines = [(i, ln.split("#", 1)[0].strip()) for i, ln in enumerate(text.splitlines(), start=1)]
    lines = [(i, ln) for i, ln in lines if ln]
    if not lines:
        raise AlgebraFileError("empty file", 1, 1)

    def header(pos, keyword):
        if pos >= len(lines):
            last = lines[-1][0]
            raise AlgebraFileError(f"expected '{keyword}'", last + 1, 1)
        lineno, ln = lines[pos]
        word, _, rest = ln.partition(" ")
        if word != keyword:
            raise AlgebraFileError(f"expected '{keyword}', found {word!r}", lineno, _col(text, lineno, word))
        return lineno, rest.strip()

    lineno, name = header(0, "algebra")
    if not name:
        raise AlgebraFileError("missing algebra name", lineno, len("algebra") + 2)
    lineno, size_s = header(1, "size")
    size = _int(text, size_s, lineno, "size")
    if size < 1:
        raise AlgebraFileError("size must be at least 1", lineno, _col(text, lineno, size_s))
    pos = 2
    element_names = None
    if pos < len(lines) and lines[pos][1].split()[0] == "elements":
        lineno, rest = lines[pos]
        element_names = tuple(rest.split()[1:])
        if len(element_names) != size:
            raise AlgebraFileError(f"{len(element_names)} element names for size {size}", lineno, 1)
        if len(set(element_names)) != size:
            raise AlgebraFileError("duplicate element name", lineno, 1)
        pos += 1
    lookup = {e: i for i, e in enumerate(element_names)} if element_names else {}

    # everything after the header is a token stream of op declarations and entries
    start_line = lines[pos][0] if pos < len(lines) else lines[-1][0] + 1
    stream = [t for t in _tokens(text) if t[1] >= start_line]
    ops, tables = [], []
    i = 0
    while i < len(stream):
        tok, ln, col = stream[i]
        if tok != "op":
            raise AlgebraFileError(f"expected 'op', found {tok!r}", ln, col)
        if i + 2 >= len(stream) or stream[i + 1][1] != ln or stream[i + 2][1] != ln:
            raise AlgebraFileError("expected 'op <name> <arity>'", ln, col)
        opname, arity_s = stream[i + 1][0], stream[i + 2][0]
        if i + 3 < len(stream) and stream[i + 3][1] == ln:
            raise AlgebraFileError("entries must start on the line after 'op'", ln, stream[i + 3][2])
        if opname in (o for o, _ in ops):
            raise AlgebraFileError(f"duplicate operation name {opname!r}", ln, stream[i + 1][2])
        if not arity_s.isdigit():
            raise AlgebraFileError(f"arity must be a nonnegative integer, found {arity_s!r}", ln, stream[i + 2][2])
        arity = int(arity_s)
        need = size ** arity
        i += 3
        entries = []
        while len(entries) < need:
            if i >= len(stream) or stream[i][0] == "op":
                where = stream[i] if i < len(stream) else (None, stream[-1][1], stream[-1][2] + len(stream[-1][0]))
                raise AlgebraFileError(
                    f"operation {opname!r} needs {need} entries, found {len(entries)}", where[1], where[2]
                )
            tok, tl, tc = stream[i]
            if tok in lookup:
                entries.append(lookup[tok])
            elif tok.isdigit():
                v = int(tok)
                if v >= size:
                    raise AlgebraFileError(f"entry {v} out of range for size {size}", tl, tc)
                entries.append(v)
            else:
                raise AlgebraFileError(f"unknown element {tok!r}", tl, tc)
            i += 1
        ops.append((opname, arity))
        tables.append(tuple(entries))
    return FiniteAlgebra(size, Signature(tuple(ops)), tuple(tables), name=name, element_names=element_names)


def _col(text, lineno, word):
    line = text.splitlines()[lineno - 1]
    return line.find(word) + 1 if word else 1


def _int(text, s, lineno, what):
    if not s.isdigit():
        raise AlgebraFileError(f"{what} must be a nonnegative integer, found {s!r}", lineno, _col(text, lineno, s))
    return int(s)


def serialize_algebra(alg: FiniteAlgebra) -> str:
    """Canonical text; rows of n entries, element names when declared."""
    names = alg.element_names
    fmt = (lambda v: names[v]) if names else str
    out = [f"algebra {alg.name}", f"size {alg.size}"]
    if names:
        out.append("elements " + " ".join(names))
    for (opname, arity), table in zip(alg.signature.ops, alg.tables):
        out.append(f"op {opname} {arity}")
        row = alg.size if arity else 1
        for k in range(0, len(table), row):
            out.append(" ".join(fmt(v) for v in table[k:k + row]))
    return "\n".join(out) + "\n"


def load_algebra(path: str) -> FiniteAlgebra:
    with open(path, encoding="utf-8") as fh:
        return parse_algebra_file(fh.read())


def bundled(name: str) -> str:
    """Text of a bundled ``.alg`` file, e.g. ``bundled("z6ring")``."""
    return resources.files("cspec.data").joinpath(f"{name}.alg").read_text(encoding="utf-8")


# --- reports -------------------------------------------------------------------


def congruence_blocks(c: Congruence) -> list[list[int]]:
    return [list(b) for b in c.blocks()]


def to_jsonable(obj: Any) -> Any:
    if isinstance(obj, Congruence):
        return congruence_blocks(obj)
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, FiniteAlgebra):
        return obj.name
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj) if f.repr}
    if isinstance(obj, dict):
        if all(isinstance(k, str) for k in obj):
            return {k: to_jsonable(v) for k, v in obj.items()}
        return [[to_jsonable(k), to_jsonable(v)] for k, v in sorted(obj.items(), key=lambda kv: repr(kv[0]))]
    if isinstance(obj, (frozenset, set)):
        return sorted((to_jsonable(x) for x in obj), key=repr)
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(x) for x in obj]
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    return obj


def emit_report(report: Any, fmt: str = "json") -> bytes:
    data = to_jsonable(report)
    if not isinstance(data, dict):
        data = {"result": data}
    data = {"schema": SCHEMA, **data}
    if fmt == "json":
        return (json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n").encode("utf-8")
    if fmt == "text":
        return ("\n".join(_text_lines(data, 0)) + "\n").encode("utf-8")
    raise ValueError(f"unknown format {fmt!r}")


def _fmt_scalar(v):
    if isinstance(v, list) and all(isinstance(b, list) and all(isinstance(x, int) for x in b) for b in v) and v:
        return "|".join(",".join(map(str, b)) for b in v)
    if isinstance(v, str) and v:
        return v
    return json.dumps(v, ensure_ascii=False)


def _is_scalarish(v):
    return not isinstance(v, (dict, list)) or (
        isinstance(v, list) and all(isinstance(b, list) and all(isinstance(x, int) for x in b) for b in v)
    )


def _text_lines(data, indent):
    pad = "  " * indent
    if isinstance(data, dict):
        for k in sorted(data):
            v = data[k]
            if _is_scalarish(v):
                yield f"{pad}{k}: {_fmt_scalar(v)}"
            else:
                yield f"{pad}{k}:"
                yield from _text_lines(v, indent + 1)
    elif isinstance(data, list):
        for v in data:
            if _is_scalarish(v):
                yield f"{pad}- {_fmt_scalar(v)}"
            else:
                yield f"{pad}-"
                yield from _text_lines(v, indent + 1)
    else:
        yield f"{pad}{_fmt_scalar(data)}"


# --- DOT -------------------------------------------------------------------------


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def _tags(lat: ConLattice, i: int) -> list[str]:
    from .classify import boolean_center_indices
    from .spectra import spectrum_indices

    si = spectrum_indices(lat.algebra)
    tags = []
    if i in si.spec:
        tags.append("Spec")
    if i in si.min:
        tags.append("Min")
    if i in si.max:
        tags.append("Max")
    if i in boolean_center_indices(lat.algebra):
        tags.append("B")
    return tags


def _node(name, label, tags):
    attrs = [f'label="{_dot_escape(label)}"']
    if tags:
        attrs.append(f'xlabel="{",".join(tags)}"')
    if "Spec" in tags:
        attrs.append("peripheries=2")
    if "Min" in tags:
        attrs.append("style=filled")
        attrs.append('fillcolor="lightgrey"')
    if "Max" in tags:
        attrs.append("shape=box")
    if "B" in tags:
        attrs.append("color=blue")
    return f"  {name} [{', '.join(attrs)}];"


def export_dot(obj) -> str:
    """Hasse diagram of Con(A), or the specialization order of a Stone topology."""
    from .spectra import Topology

    if isinstance(obj, ConLattice):
        lat = obj
        lines = [f'digraph "Con({_dot_escape(lat.algebra.name)})" {{', "  rankdir=BT;", "  node [shape=ellipse];"]
        for i, c in enumerate(lat):
            lines.append(_node(f"c{i}", str(c), _tags(lat, i)))
        for lo, hi in sorted(lat.covers()):
            lines.append(f"  c{lo} -> c{hi};")
        lines.append("}")
        return "\n".join(lines) + "\n"
    if isinstance(obj, Topology):
        top = obj
        from .commutator import commutator_table

        lat = commutator_table(top.algebra).lattice
        lines = [
            f'digraph "{top.kind}({_dot_escape(top.algebra.name)})" {{',
            "  rankdir=BT;",
            "  node [shape=ellipse];",
        ]
        for k, p in enumerate(top.points):
            lines.append(_node(f"p{k}", str(p), _tags(lat, lat.idx(p))))
        opens = sorted(top.opens, key=lambda u: (len(u), sorted(u)))
        for x in range(len(top.points)):
            for y in range(len(top.points)):
                # x specializes to y: every open containing x contains y
                if x != y and all(y in u for u in opens if x in u):
                    lines.append(f"  p{x} -> p{y};")
        lines.append("}")
        return "\n".join(lines) + "\n"
    raise TypeError(f"cannot export {type(obj).__name__} to DOT")
