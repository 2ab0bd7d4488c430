"""Ring description files: line-oriented ``key = value`` under ``[section]`` headers."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

SECTIONS = ("ring", "parameter", "extension", "cohomology", "options")

KNOWN_KEYS = {
    "ring": {"name", "engine", "characteristic", "variables", "generators", "defining", "assume", "fails", "note"},
    "parameter": {"generators", "superficial", "superficial_c", "superficial_n"},
    "extension": {"kind", "variables", "defining", "map", "f_regular"},
    "cohomology": {"h0", "h1", "h2", "h3", "h1_module", "zero_star"},
    "options": {"n_max", "e_bound", "test_element", "closures", "rank_n"},
}

HYPOTHESIS_NAMES = ("reduced", "unmixed", "buchsbaum", "tight-buchsbaum", "f-regular-extension", "test-element")


class SpecError(ValueError):
    """A ring description that fails to parse or validate; carries the line number."""

    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        where = ""
        if source:
            where = f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)
        self.line = line


def split_top(value: str) -> list[str]:
    """Split on commas that are not inside parentheses."""
    out, depth, cur = [], 0, []
    for ch in value:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            out.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    tail = "".join(cur).strip()
    if tail or out:
        out.append(tail)
    return [x for x in out if x]


_VEC = re.compile(r"^\(\s*-?\d+(\s*,\s*-?\d+)*\s*\)$")


def parse_vector(text: str) -> tuple:
    text = text.strip()
    if not _VEC.match(text):
        raise ValueError(f"expected an exponent vector like (a,b), got {text!r}")
    return tuple(int(x) for x in text[1:-1].split(","))


_TERM = re.compile(r"^\s*(?:(-?\d+)\s*\*\s*)?(\([^()]*\))\s*$")


def parse_vector_poly(text: str) -> dict:
    """``(5,0) + 2*(0,5)`` as {exponent: coefficient}."""
    out: dict = {}
    for chunk in re.split(r"(?=[+-]\s*(?:\d+\s*\*\s*)?\()", text.strip()):
        chunk = chunk.strip()
        if not chunk:
            continue
        sign = 1
        if chunk[0] in "+-":
            sign = -1 if chunk[0] == "-" else 1
            chunk = chunk[1:]
        m = _TERM.match(chunk)
        if not m:
            raise ValueError(f"cannot read term {chunk!r}")
        coef = sign * int(m.group(1) or 1)
        v = parse_vector(m.group(2))
        out[v] = out.get(v, 0) + coef
    if not out:
        raise ValueError("empty vector polynomial")
    return out


@dataclass
class RingSpec:
    source: str
    sections: dict = field(default_factory=dict)
    lines: dict = field(default_factory=dict)

    def get(self, section: str, key: str, default=None):
        return self.sections.get(section, {}).get(key, default)

    def line_of(self, section: str, key: str):
        return self.lines.get((section, key))

    def error(self, message: str, section: str | None = None, key: str | None = None) -> SpecError:
        line = self.line_of(section, key) if section else None
        return SpecError(message, line, self.source)

    # typed accessors -----------------------------------------------------

    @property
    def name(self) -> str:
        return self.get("ring", "name", Path(self.source).stem)

    @property
    def engine(self) -> str:
        return self.get("ring", "engine", "presented")

    @property
    def p(self) -> int:
        return self.int_value("ring", "characteristic")

    def int_value(self, section: str, key: str, default=None):
        raw = self.get(section, key)
        if raw is None:
            if default is None:
                raise self.error(f"missing required key {key!r} in [{section}]")
            return default
        try:
            return int(raw)
        except ValueError:
            raise self.error(f"{key} must be an integer, got {raw!r}", section, key) from None

    def list_value(self, section: str, key: str) -> list[str]:
        raw = self.get(section, key)
        return split_top(raw) if raw else []

    def vectors(self, section: str, key: str) -> list[tuple]:
        try:
            return [parse_vector(x) for x in self.list_value(section, key)]
        except ValueError as exc:
            raise self.error(str(exc), section, key) from None

    def flags(self, section: str, key: str) -> list[str]:
        return [x.strip().lower() for x in self.list_value(section, key)]

    def bool_value(self, section: str, key: str, default: bool = False) -> bool:
        raw = self.get(section, key)
        if raw is None:
            return default
        low = raw.strip().lower()
        if low in ("yes", "true", "1"):
            return True
        if low in ("no", "false", "0"):
            return False
        raise self.error(f"{key} must be yes or no, got {raw!r}", section, key)


def parse_spec(text: str, source: str = "<string>") -> RingSpec:
    spec = RingSpec(source)
    section = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise SpecError(f"malformed section header {line!r}", lineno, source)
            section = line[1:-1].strip().lower()
            if section not in SECTIONS:
                raise SpecError(f"unknown section [{section}]", lineno, source)
            if section in spec.sections:
                raise SpecError(f"section [{section}] appears twice", lineno, source)
            spec.sections[section] = {}
            continue
        if section is None:
            raise SpecError("key outside any section", lineno, source)
        if "=" not in line:
            raise SpecError(f"expected 'key = value', got {line!r}", lineno, source)
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.lower()
        if key not in KNOWN_KEYS[section]:
            raise SpecError(f"unknown key {key!r} in [{section}]", lineno, source)
        if key in spec.sections[section]:
            raise SpecError(f"duplicate key {key!r} in [{section}]", lineno, source)
        spec.sections[section][key] = value
        spec.lines[(section, key)] = lineno
    _validate_shape(spec)
    return spec


def _validate_shape(spec: RingSpec) -> None:
    if "ring" not in spec.sections:
        raise SpecError("missing [ring] section", None, spec.source)
    if "parameter" not in spec.sections:
        raise SpecError("missing [parameter] section", None, spec.source)
    if spec.engine not in ("presented", "semigroup"):
        raise spec.error(f"engine must be presented or semigroup, got {spec.engine!r}", "ring", "engine")
    spec.int_value("ring", "characteristic")
    key = "variables" if spec.engine == "presented" else "generators"
    if not spec.get("ring", key):
        raise spec.error(f"[ring] needs {key} for the {spec.engine} engine")
    for k in ("assume", "fails"):
        for h in spec.flags("ring", k):
            if h not in HYPOTHESIS_NAMES:
                raise spec.error(f"unknown hypothesis {h!r}", "ring", k)


def load_spec(path) -> RingSpec:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc.strerror}") from None
    return parse_spec(text, str(path))
