"""Problem files: a map, named points and run options in a line-oriented format.

    # comments start with '#'
    [map]
    k = 1               # optional, inferred from the number of forms
    d = 2               # optional, inferred from the forms
    F0 = X0^2 + t*X1^2
    F1 = X1^2

    [points]
    origin = [0, 1]
    other = ["t^2 + 1", "t"]

    [options]
    budget = 30
    iters = 8
    max_deg = 1
    coeff_bound = 2

Every diagnostic carries the 1-based line and column it refers to.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from .endomorphism import Endomorphism, endo_build
from .errors import DimensionMismatch, FFHeightError, InhomogeneousInput, ProblemSyntaxError
from .forms import HomogeneousForm
from .literal import parse_rational_function
from .projective import ProjectivePoint, pp_normalize

OPTION_KEYS = ("budget", "iters", "max_deg", "coeff_bound", "threads")
_KEY = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_HEADER = re.compile(r"\[\s*[a-z]+\s*\]\Z")


@dataclass
class ProblemFile:
    map: Endomorphism
    points: list[tuple[str, ProjectivePoint]] = field(default_factory=list)
    options: dict[str, int] = field(default_factory=dict)

    @property
    def k(self) -> int:
        return self.map.k

    @property
    def d(self) -> int:
        return self.map.d

    def point(self, name: str) -> ProjectivePoint:
        for n, p in self.points:
            if n == name:
                return p
        raise KeyError(name)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProblemFile):
            return NotImplemented
        return (self.map, self.points, self.options) == (other.map, other.points, other.options)


def _strip_comment(line: str) -> str:
    quoted = False
    for i, ch in enumerate(line):
        if ch == '"':
            quoted = not quoted
        elif ch == "#" and not quoted:
            return line[:i]
    return line


def _relocate(err: FFHeightError, line: int, offset: int) -> FFHeightError:
    """Shift a column relative to a value into a column of the whole line."""
    if err.line is None:
        err.line = line
        err.column = offset + (err.column or 1) - 1
    return err


def _split_point(value: str, line: int, col: int) -> list[tuple[str, int]]:
    """'[a, "b"]' -> [(a, column of a), (b, column of b)]."""
    stripped = value.rstrip()
    if not stripped.startswith("[") or not stripped.endswith("]"):
        raise ProblemSyntaxError("a point is written [c0, c1, ...]", line=line, column=col)
    parts = []
    start = 1
    body = stripped[:-1]
    pieces = body[1:].split(",")
    for piece in pieces:
        lead = len(piece) - len(piece.lstrip())
        text = piece.strip()
        pcol = col + start + lead
        if len(text) >= 2 and text[0] == '"' and text[-1] == '"':
            text = text[1:-1]
            pcol += 1
        if not text:
            raise ProblemSyntaxError("empty coordinate", line=line, column=pcol)
        parts.append((text, pcol))
        start += len(piece) + 1
    return parts


def _int_value(value: str, key: str, line: int, col: int) -> int:
    try:
        out = int(value)
    except ValueError:
        raise ProblemSyntaxError(f"{key} must be an integer, got {value!r}", line=line, column=col) from None
    if out < 0:
        raise ProblemSyntaxError(f"{key} must be nonnegative", line=line, column=col)
    return out


def parse_problem(text: str) -> ProblemFile:
    section: Optional[str] = None
    map_line = None
    header: dict[str, tuple[int, int, int]] = {}
    form_src: dict[int, tuple[str, int, int]] = {}
    raw_points: list[tuple[str, str, int, int]] = []
    options: dict[str, int] = {}
    seen_sections = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).rstrip()
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        body = line.strip()
        if body.startswith("["):
            if not body.endswith("]") or not _HEADER.match(body):
                raise ProblemSyntaxError(f"bad section header {body!r}", line=lineno, column=indent + 1)
            section = body[1:-1].strip()
            if section not in ("map", "points", "options"):
                raise ProblemSyntaxError(f"unknown section [{section}]", line=lineno, column=indent + 1)
            if section in seen_sections:
                raise ProblemSyntaxError(f"section [{section}] appears twice", line=lineno, column=indent + 1)
            seen_sections.add(section)
            if section == "map":
                map_line = lineno
            continue
        if "=" not in body:
            raise ProblemSyntaxError("expected 'key = value'", line=lineno, column=indent + 1)
        if section is None:
            raise ProblemSyntaxError("entry outside of any section", line=lineno, column=indent + 1)
        eq = line.index("=")
        key = line[:eq].strip()
        after = line[eq + 1 :]
        vcol = eq + 2 + (len(after) - len(after.lstrip()))
        value = after.strip()
        if not _KEY.match(key):
            raise ProblemSyntaxError(f"bad key {key!r}", line=lineno, column=indent + 1)
        if not value:
            raise ProblemSyntaxError(f"missing value for {key}", line=lineno, column=vcol)
        if section == "map":
            m = re.fullmatch(r"F(\d+)", key)
            if key in ("k", "d"):
                header[key] = (_int_value(value, key, lineno, vcol), lineno, vcol)
            elif m:
                idx = int(m.group(1))
                if idx in form_src:
                    raise ProblemSyntaxError(f"{key} given twice", line=lineno, column=indent + 1)
                form_src[idx] = (value, lineno, vcol)
            else:
                raise ProblemSyntaxError(f"unknown map key {key!r}", line=lineno, column=indent + 1)
        elif section == "points":
            if any(n == key for n, *_ in raw_points):
                raise ProblemSyntaxError(f"point {key!r} given twice", line=lineno, column=indent + 1)
            raw_points.append((key, value, lineno, vcol))
        else:
            if key not in OPTION_KEYS:
                raise ProblemSyntaxError(f"unknown option {key!r}", line=lineno, column=indent + 1)
            options[key] = _int_value(value, key, lineno, vcol)

    if map_line is None:
        raise ProblemSyntaxError("missing [map] section", line=1, column=1)
    if not form_src:
        raise ProblemSyntaxError("[map] defines no forms F0, F1, ...", line=map_line, column=1)
    count = max(form_src) + 1
    for i in range(count):
        if i not in form_src:
            raise ProblemSyntaxError(f"F{i} is missing", line=map_line, column=1)
    k = count - 1
    if "k" in header and header["k"][0] != k:
        val, ln, col = header["k"]
        raise DimensionMismatch(f"k = {val} but {count} forms given", line=ln, column=col)
    forms = []
    for i in range(count):
        src, ln, col = form_src[i]
        try:
            form = HomogeneousForm.parse(src, k)
        except FFHeightError as err:
            raise _relocate(err, ln, col) from None
        if "d" in header and form.d != header["d"][0]:
            raise InhomogeneousInput(f"F{i} has degree {form.d}, expected d = {header['d'][0]}", line=ln, column=col)
        if forms and form.d != forms[0].d:
            raise InhomogeneousInput(f"F{i} has degree {form.d} but F0 has degree {forms[0].d}", line=ln, column=col)
        forms.append(form)
    try:
        endo = endo_build(forms)
    except FFHeightError as err:
        raise err.located(map_line, 1) from None

    points = []
    for name, value, ln, col in raw_points:
        coords = _split_point(value, ln, col)
        if len(coords) != k + 1:
            raise DimensionMismatch(f"point {name!r} has {len(coords)} coordinates, the map lives on P^{k}", line=ln, column=col)
        vals = []
        for txt, pcol in coords:
            try:
                vals.append(parse_rational_function(txt))
            except FFHeightError as err:
                raise _relocate(err, ln, pcol) from None
        try:
            points.append((name, pp_normalize(vals)))
        except FFHeightError as err:
            raise err.located(ln, col) from None
    return ProblemFile(endo, points, options)


def serialize_problem(problem: ProblemFile) -> str:
    lines = ["[map]", f"k = {problem.k}", f"d = {problem.d}"]
    for i, form in enumerate(problem.map.forms):
        lines.append(f"F{i} = {form}")
    if problem.points:
        lines += ["", "[points]"]
        for name, p in problem.points:
            lines.append(f"{name} = [" + ", ".join(f'"{c}"' for c in p.to_strings()) + "]")
    if problem.options:
        lines += ["", "[options]"]
        for key in OPTION_KEYS:
            if key in problem.options:
                lines.append(f"{key} = {problem.options[key]}")
    return "\n".join(lines) + "\n"
