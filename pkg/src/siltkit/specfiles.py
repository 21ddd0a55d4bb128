"""Plain-text input formats for algebras, complexes and modules.

Both formats are line oriented, sections are introduced by a bracketed
header, ``#`` starts a comment.  See docs/file-formats.md for the
grammar.  Parse errors carry ``line`` (1-based) and a message.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .algebra import Algebra, InputError, Presentation, presentation
from .complexes import ProjComplex
from .fields import Field
from .modules import FDModule
from . import linalg


class ParseError(InputError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")
_ARROW_LINE = re.compile(r"(\S+)\s*:\s*(\S+)\s*->\s*(\S+)$")


def _sections(text: str):
    """Split into {header: [(lineno, line), ...]}, preserving order of lines."""
    sections = {}
    current = None
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ParseError(no, f"malformed section header {raw.strip()!r}")
            words = line[1:-1].split()
            if not words:
                raise ParseError(no, "empty section header")
            # the keyword is case-insensitive, any argument is not
            words[0] = words[0].lower()
            current = " ".join(words)
            sections.setdefault(current, [])
            continue
        if current is None:
            raise ParseError(no, "content before any section header")
        sections[current].append((no, line))
    return sections


def _parse_relation(no: int, line: str):
    """One relation: signed integer combinations of *-separated paths."""
    # normalize: ensure a leading sign, then split on +/- while keeping them
    s = line.replace(" ", "")
    if not s:
        raise ParseError(no, "empty relation")
    if s[0] not in "+-":
        s = "+" + s
    tokens = re.findall(r"[+-][^+-]+", s)
    if "".join(tokens) != s:
        raise ParseError(no, f"cannot parse relation {line!r}")
    terms = []
    for tok in tokens:
        sign = 1 if tok[0] == "+" else -1
        body = tok[1:]
        parts = body.split("*")
        coeff = sign
        if parts and re.fullmatch(r"\d+", parts[0]):
            coeff = sign * int(parts[0])
            parts = parts[1:]
        if not parts or any(not p for p in parts):
            raise ParseError(no, f"malformed term {tok!r} in relation")
        for p in parts:
            if not _NAME.match(p):
                raise ParseError(no, f"bad arrow name {p!r} in relation")
        terms.append((coeff, parts))
    return terms


def parse_algebra_text(text: str):
    """Parse an algebra spec.  Returns (Presentation, Field)."""
    secs = _sections(text)
    for required in ("field", "vertices", "arrows", "cap"):
        if required not in secs:
            raise InputError(f"missing [{required}] section")
    unknown = set(secs) - {"field", "vertices", "arrows", "relations", "cap"}
    if unknown:
        raise InputError(f"unknown sections: {sorted(unknown)}")

    def single_int(name):
        lines = secs[name]
        if len(lines) != 1:
            raise InputError(f"[{name}] expects exactly one line")
        no, line = lines[0]
        try:
            return int(line)
        except ValueError:
            raise ParseError(no, f"[{name}] expects an integer, got {line!r}")

    p = single_int("field")
    try:
        field = Field(p)
    except ValueError as exc:
        raise InputError(str(exc))
    cap = single_int("cap")

    vertices = []
    for no, line in secs["vertices"]:
        vertices.extend(line.split())

    arrows = []
    for no, line in secs["arrows"]:
        m = _ARROW_LINE.match(line)
        if not m:
            raise ParseError(no, f"expected 'name: source -> target', got {line!r}")
        name, s, t = m.groups()
        if not _NAME.match(name):
            raise ParseError(no, f"bad arrow name {name!r}")
        arrows.append((name, s, t))

    relations = []
    for no, line in secs.get("relations", []):
        relations.append(_parse_relation(no, line))

    return presentation(vertices, arrows, relations, cap), field


def load_algebra(path) -> Algebra:
    with open(path, "r", encoding="utf-8") as fh:
        pres, field = parse_algebra_text(fh.read())
    return Algebra(field, pres)


# -- complexes and modules ---------------------------------------------------
#
# A complex file has one [term <k>] section per degree (multiplicities per
# vertex, algebra order) and optional [diff <k>] sections holding the
# matrix of d^k: one line per row (rows run over the copies of degree
# k+1), entries separated by ";".  An entry is 0 or a signed combination
# of *-separated arrow names; the token e_<vertex> is the idempotent
# path.  A [truncation] section with a single integer marks the complex
# as truncated below that homology degree.  A module file has a [module]
# section (dimensions per vertex) and one [action <arrow>] section per
# arrow with a nonzero-shaped matrix of scalars.


def _scalar(no: int, field: Field, tok: str):
    try:
        if field.p:
            return field.of(int(tok))
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(no, f"bad scalar {tok!r}")


def _name_maps(A: Algebra):
    return ({a.name: i for i, a in enumerate(A.arrows)},
            {v: i for i, v in enumerate(A.vertices)})


def _path_token(no: int, A: Algebra, tok: str):
    """An arrow name, or e_<vertex>, as an algebra element."""
    arrows, vertices = _name_maps(A)
    if tok in arrows:
        return A.unit(A.arrow_index[arrows[tok]])
    if tok.startswith("e_") and tok[2:] in vertices:
        return A.e(vertices[tok[2:]])
    raise ParseError(no, f"unknown arrow or idempotent {tok!r}")


def _parse_entry(no: int, A: Algebra, text: str):
    """One matrix entry: 0 or signed integer combinations of paths."""
    s = text.replace(" ", "")
    if s in ("", "0"):
        return A.zero()
    if s[0] not in "+-":
        s = "+" + s
    tokens = re.findall(r"[+-][^+-]+", s)
    if "".join(tokens) != s:
        raise ParseError(no, f"cannot parse entry {text!r}")
    total = A.zero()
    for tok in tokens:
        sign = 1 if tok[0] == "+" else -1
        parts = tok[1:].split("*")
        coeff = sign
        if parts and re.fullmatch(r"\d+(/\d+)?", parts[0]):
            coeff = sign * Fraction(parts[0])
            parts = parts[1:]
        if not parts or any(not p for p in parts):
            raise ParseError(no, f"malformed term {tok!r} in entry")
        elem = None
        for p in parts:
            step = _path_token(no, A, p)
            elem = step if elem is None else A.mul(elem, step)
        total = A.add(total, A.scale(A.field.of(coeff), elem))
    return total


def _section_key(secs, word):
    """All '[<word> <k>]' headers as {k: lines}, k an integer."""
    out = {}
    for header, lines in secs.items():
        parts = header.split()
        if parts[0] != word:
            continue
        if len(parts) != 2:
            raise InputError(f"section [{header}] expects one index")
        try:
            out[int(parts[1])] = lines
        except ValueError:
            raise InputError(f"section [{header}] expects an integer index")
    return out


def _int_row(no: int, line: str, n: int, what: str):
    toks = line.split()
    if len(toks) != n:
        raise ParseError(no, f"{what} expects {n} integers, got {len(toks)}")
    try:
        return tuple(int(t) for t in toks)
    except ValueError:
        raise ParseError(no, f"{what} expects integers, got {line!r}")


def parse_complex_text(text: str, A: Algebra) -> ProjComplex:
    secs = _sections(text)
    terms = _section_key(secs, "term")
    if not terms:
        raise InputError("complex file needs at least one [term <k>] section")
    lo, hi = min(terms), max(terms)
    mults = []
    for k in range(lo, hi + 1):
        if k not in terms:
            raise InputError(f"missing [term {k}] between degrees {lo} and {hi}")
        lines = terms[k]
        if len(lines) != 1:
            raise InputError(f"[term {k}] expects exactly one line")
        no, line = lines[0]
        mults.append(_int_row(no, line, A.n_vertices, f"[term {k}]"))

    def copies(k):
        return sum(mults[k - lo])

    diff_secs = _section_key(secs, "diff")
    for k in diff_secs:
        if not lo <= k < hi:
            raise InputError(f"[diff {k}] has no adjacent terms")
    diffs = []
    for k in range(lo, hi):
        if k not in diff_secs:
            diffs.append([[A.zero()] * copies(k) for _ in range(copies(k + 1))])
            continue
        rows = []
        for no, line in diff_secs[k]:
            entries = [e.strip() for e in line.split(";")]
            if len(entries) != copies(k):
                raise ParseError(no, f"[diff {k}] row expects {copies(k)} entries")
            rows.append([_parse_entry(no, A, e) for e in entries])
        if len(rows) != copies(k + 1):
            raise InputError(f"[diff {k}] expects {copies(k + 1)} rows")
        diffs.append(rows)

    vlo = None
    genuine = True
    if "truncation" in secs:
        lines = secs["truncation"]
        if len(lines) != 1:
            raise InputError("[truncation] expects exactly one line")
        no, line = lines[0]
        try:
            vlo = int(line)
        except ValueError:
            raise ParseError(no, "[truncation] expects an integer")
        genuine = False
    return ProjComplex(A, lo, mults, diffs, genuine, vlo)


def parse_module_text(text: str, A: Algebra) -> FDModule:
    secs = _sections(text)
    if "module" not in secs:
        raise InputError("module file needs a [module] section")
    lines = secs["module"]
    if len(lines) != 1:
        raise InputError("[module] expects exactly one line of dimensions")
    no, line = lines[0]
    dims = _int_row(no, line, A.n_vertices, "[module]")

    arrow_names, _ = _name_maps(A)
    actions = {}
    for header, body in secs.items():
        parts = header.split()
        if parts[0] != "action":
            continue
        if len(parts) != 2 or parts[1] not in arrow_names:
            raise InputError(f"section [{header}] does not name an arrow")
        actions[arrow_names[parts[1]]] = body

    acts = []
    for ai, arr in enumerate(A.arrows):
        nr, nc = dims[arr.target], dims[arr.source]
        if ai not in actions:
            acts.append(linalg.zeros(A.field, nr, nc))
            continue
        rows = []
        for no, line in actions[ai]:
            toks = line.split()
            if len(toks) != nc:
                raise ParseError(no, f"[action {arr.name}] row expects {nc} entries")
            rows.append([_scalar(no, A.field, t) for t in toks])
        if len(rows) != nr:
            raise InputError(f"[action {arr.name}] expects {nr} rows")
        acts.append(rows)
    return FDModule(A, dims, acts)


def parse_input_text(text: str, A: Algebra):
    """A complex or a module, whichever the sections say.  Files with a
    [module] section parse as FDModule, files with [term] sections as
    ProjComplex; mixing the two is an error."""
    secs = _sections(text)
    has_module = "module" in secs
    has_terms = any(h.split()[0] == "term" for h in secs if h.split())
    if has_module and has_terms:
        raise InputError("file mixes [module] and [term] sections")
    if has_module:
        return parse_module_text(text, A)
    if has_terms:
        return parse_complex_text(text, A)
    raise InputError("file has neither [module] nor [term <k>] sections")


def load_input(path, A: Algebra):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_input_text(fh.read(), A)


def _entry_text(A: Algebra, z) -> str:
    f = A.field
    arrow_names, _ = _name_maps(A)
    parts = []
    for b, coeff in enumerate(z):
        if coeff == f.zero:
            continue
        label = A.path_label(b)
        if label.startswith("e_") and label in arrow_names:
            raise InputError(f"arrow named {label!r} shadows an idempotent")
        if coeff == f.one:
            term = label
        else:
            term = f"{coeff}*{label}"
        if parts and not term.startswith("-"):
            parts.append(f"+ {term}")
        elif parts:
            parts.append(f"- {term[1:]}")
        else:
            parts.append(term)
    return " ".join(parts) if parts else "0"


def write_complex_text(X: ProjComplex) -> str:
    lines = []
    for k in range(X.lo, X.hi + 1):
        lines.extend([f"[term {k}]", " ".join(str(m) for m in X.mult(k)), ""])
    for k in range(X.lo, X.hi):
        mat = X.d(k)
        if not mat or not mat[0]:
            continue
        if all(X.algebra.is_zero(z) for row in mat for z in row):
            continue
        lines.append(f"[diff {k}]")
        for row in mat:
            lines.append(" ; ".join(_entry_text(X.algebra, z) for z in row))
        lines.append("")
    if not X.genuine:
        lines.extend(["[truncation]", str(X.effective_vlo()), ""])
    return "\n".join(lines)


def write_module_text(M: FDModule) -> str:
    lines = ["[module]", " ".join(str(d) for d in M.dims), ""]
    A = M.algebra
    for ai, arr in enumerate(A.arrows):
        mat = M.acts[ai]
        if not mat or not mat[0]:
            continue
        if linalg.is_zero_matrix(A.field, mat):
            continue
        lines.append(f"[action {arr.name}]")
        for row in mat:
            lines.append(" ".join(str(x) for x in row))
        lines.append("")
    return "\n".join(lines)


def write_algebra_text(pres: Presentation, field: Field) -> str:
    """Inverse of parse_algebra_text, used by the dualize command."""
    lines = ["[field]", str(field.p), "", "[vertices]", " ".join(pres.vertices), ""]
    lines.append("[arrows]")
    for a in pres.arrows:
        lines.append(f"{a.name}: {pres.vertices[a.source]} -> {pres.vertices[a.target]}")
    lines.append("")
    if pres.relations:
        lines.append("[relations]")
        for rel in pres.relations:
            parts = []
            for coeff, arrs in rel:
                path = "*".join(pres.arrows[i].name for i in arrs)
                if coeff == 1:
                    term = path
                elif coeff == -1:
                    term = f"-{path}"
                else:
                    term = f"{coeff}*{path}" if coeff > 0 else f"-{-coeff}*{path}"
                if parts and not term.startswith("-"):
                    parts.append(f"+ {term}")
                elif parts:
                    parts.append(f"- {term[1:]}")
                else:
                    parts.append(term)
            lines.append(" ".join(parts))
        lines.append("")
    lines.extend(["[cap]", str(pres.cap), ""])
    return "\n".join(lines)
