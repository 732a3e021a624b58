"""Line-oriented problem files: one ring block, named ideal blocks, tasks.

    ring {
      vars = [X, Y, Z, W]
      relations = ["X*Y - Y*Z", "X*Z + Y^3 - Z^2"]
      dim = 2
      label = "northcott-equality"
      gorenstein = false
    }
    ideal I = ["X", "Y", "W"]
    ideal m = ["X", "Y", "Z", "W"] flags { integrally_closed = true }
    task coeffs I

Unknown keys are rejected; '#' starts a comment.  The format is diffable
and bit-exact on purpose.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import EngineError, ParseError, ValidationError
from .ring import IdealFlags, RingPresentation, ideal

_RING_KEYS = {"vars", "relations", "dim", "label", "gorenstein"}
_FLAG_KEYS = {"integrally_closed", "asymptotically_normal"}
_TASK_COMMANDS = {
    "length", "hilbert", "coeffs", "relcoeffs", "reduction", "rr",
    "cmtest", "hmsums", "explore", "verify",
}


@dataclass
class ProblemFile:
    ring: RingPresentation
    ideals: dict
    tasks: list = field(default_factory=list)

    def ideal_named(self, name):
        try:
            return self.ideals[name]
        except KeyError:
            raise ValidationError(
                f"no ideal named {name!r}; defined: {sorted(self.ideals)}"
            ) from None


def load_problem(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_problem(fh.read())


def parse_problem(text):
    lines = text.splitlines()
    ring_fields = None
    ideals = []
    tasks = []
    i = 0
    while i < len(lines):
        line = _strip(lines[i])
        if not line:
            i += 1
            continue
        if line == "ring {":
            if ring_fields is not None:
                raise ParseError("duplicate ring block", i + 1)
            ring_fields, i = _parse_ring_block(lines, i + 1)
            continue
        if line.startswith("ideal "):
            ideals.append((_parse_ideal_line(line, i + 1), i + 1))
            i += 1
            continue
        if line.startswith("task "):
            parts = line.split()[1:]
            if not parts or parts[0] not in _TASK_COMMANDS:
                raise ParseError(
                    f"unknown task {parts[0] if parts else '<empty>'!r}", i + 1
                )
            tasks.append(tuple(parts))
            i += 1
            continue
        raise ParseError(f"unrecognized line {line!r}", i + 1)
    if ring_fields is None:
        raise ParseError("missing ring block", len(lines) or 1)
    ring = _build_ring(ring_fields)
    handles = {}
    for (name, gens, flags), lineno in ideals:
        if name in handles:
            raise ParseError(f"duplicate ideal {name!r}", lineno)
        try:
            handles[name] = ideal(ring, gens, flags=flags)
        except Exception as exc:
            raise ParseError(f"ideal {name!r}: {exc}", lineno) from exc
    return ProblemFile(ring, handles, tasks)


def _strip(line):
    if "#" in line:
        line = line[: line.index("#")]
    return line.strip()


def _parse_ring_block(lines, start):
    fields = {}
    i = start
    while i < len(lines):
        line = _strip(lines[i])
        if not line:
            i += 1
            continue
        if line == "}":
            return fields, i + 1
        if "=" not in line:
            raise ParseError("expected 'key = value' inside ring block", i + 1)
        key, _, raw = line.partition("=")
        key = key.strip()
        raw = raw.strip()
        if key not in _RING_KEYS:
            raise ParseError(f"unknown ring key {key!r}", i + 1)
        if key in fields:
            raise ParseError(f"duplicate ring key {key!r}", i + 1)
        fields[key] = (_parse_value(raw, i + 1), i + 1)
        i += 1
    raise ParseError("unterminated ring block", start)


def _build_ring(fields):
    def take(key, default=None, required=False):
        if key in fields:
            return fields[key][0]
        if required:
            lineno = next(iter(fields.values()))[1] if fields else 1
            raise ParseError(f"ring block missing {key!r}", lineno)
        return default

    variables = take("vars", required=True)
    dim = take("dim", required=True)
    if not isinstance(dim, int):
        raise ParseError("dim must be an integer", fields["dim"][1])
    relations = take("relations", default=[])
    label = take("label", default="A")
    gorenstein = take("gorenstein", default=False)
    try:
        return RingPresentation(
            variables, relations, dim, label=label, gorenstein=bool(gorenstein)
        )
    except EngineError as exc:
        lineno = fields.get("relations", fields.get("vars", (None, 1)))[1]
        raise ParseError(str(exc), lineno) from exc


_IDEAL_RE = re.compile(
    r"^ideal\s+(?P<name>\w+)\s*=\s*(?P<gens>\[[^\]]*\])\s*"
    r"(?:flags\s*\{(?P<flags>[^}]*)\})?\s*$"
)


def _parse_ideal_line(line, lineno):
    m = _IDEAL_RE.match(line)
    if not m:
        raise ParseError(
            "expected: ideal NAME = [\"gen\", ...] (flags { k = v } optional)",
            lineno,
        )
    name = m.group("name")
    gens = _parse_value(m.group("gens"), lineno)
    flag_kwargs = {}
    if m.group("flags"):
        for piece in re.split(r"[;,]", m.group("flags")):
            piece = piece.strip()
            if not piece:
                continue
            if "=" not in piece:
                raise ParseError(f"bad flag {piece!r}", lineno)
            k, _, v = piece.partition("=")
            k = k.strip()
            if k not in _FLAG_KEYS:
                raise ParseError(f"unknown flag {k!r}", lineno)
            flag_kwargs[k] = _parse_value(v.strip(), lineno)
    flags = IdealFlags(**flag_kwargs) if flag_kwargs else None
    return name, gens, flags


def _parse_value(raw, lineno):
    raw = raw.strip()
    if raw.startswith("["):
        if not raw.endswith("]"):
            raise ParseError("unterminated list", lineno)
        inner = raw[1:-1].strip()
        if not inner:
            return []
        return [_parse_value(p, lineno) for p in _split_list(inner, lineno)]
    if raw.startswith('"'):
        if not raw.endswith('"') or len(raw) < 2:
            raise ParseError("unterminated string", lineno)
        return raw[1:-1]
    if raw in ("true", "false"):
        return raw == "true"
    if re.fullmatch(r"-?\d+", raw):
        return int(raw)
    if re.fullmatch(r"\w+", raw):
        return raw  # bare identifier (variable name)
    raise ParseError(f"cannot parse value {raw!r}", lineno)


def _split_list(inner, lineno):
    parts = []
    depth = 0
    in_str = False
    cur = []
    for ch in inner:
        if in_str:
            cur.append(ch)
            if ch == '"':
                in_str = False
            continue
        if ch == '"':
            in_str = True
            cur.append(ch)
        elif ch == "," and depth == 0:
            parts.append("".join(cur).strip())
            cur = []
        else:
            if ch in "([":
                depth += 1
            elif ch in ")]":
                depth -= 1
            cur.append(ch)
    if in_str:
        raise ParseError("unterminated string in list", lineno)
    if cur:
        parts.append("".join(cur).strip())
    return [p for p in parts if p]
