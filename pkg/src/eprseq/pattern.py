"""A tiny language for sequence forms.

A form is a run of letters from {A, S, N} with repeat groups written
``(...)*``; a group may be repeated any number of times or left out.  An
optional side condition on the length follows a semicolon::

    ASA(SA)*N
    ASSS(S)*AN; n even

Catalog files hold one form per line as ``<id>. <form>``.
"""

from __future__ import annotations

import functools
import importlib.resources
import re
from dataclasses import dataclass, field

from .errors import PatternSyntaxError, UsageError

ALPHABET = "ASN"
MAX_ENUM_N = 24


@dataclass(frozen=True)
class Condition:
    """``n even``, ``n odd`` or ``n >= k``."""

    kind: str
    value: int = 0

    def holds(self, n):
        if self.kind == "even":
            return n % 2 == 0
        if self.kind == "odd":
            return n % 2 == 1
        return n >= self.value

    def __str__(self):
        return f"n >= {self.value}" if self.kind == "min" else f"n {self.kind}"


@dataclass(frozen=True)
class FormPattern:
    items: tuple  # each item is a letter string (fixed) or a tuple (group,)
    condition: Condition | None = None
    label: str = ""

    def __str__(self):
        body = "".join(it if isinstance(it, str) else f"({it[0]})*" for it in self.items)
        return body if self.condition is None else f"{body}; {self.condition}"

    @property
    def letters(self):
        return set("".join(it if isinstance(it, str) else it[0] for it in self.items))

    @property
    def min_length(self):
        return sum(len(it) for it in self.items if isinstance(it, str))

    def matches(self, s):
        return matches(self, s)


_COND_RE = re.compile(r"^n\s*(?:(even|odd)|>=\s*(\d+))$")


def parse_pattern(text, label=""):
    if not isinstance(text, str):
        raise UsageError(f"pattern must be a string, got {text!r}")
    body, _, cond_text = text.partition(";")
    condition = None
    if _:
        m = _COND_RE.match(cond_text.strip())
        if not m:
            raise PatternSyntaxError("bad side condition", text, len(body) + 1)
        condition = Condition(m.group(1)) if m.group(1) else Condition("min", int(m.group(2)))
    items = []
    run = []
    i = 0
    stripped = body.rstrip()
    while i < len(stripped):
        ch = stripped[i]
        if ch in ALPHABET:
            run.append(ch)
            i += 1
        elif ch == "(":
            close = stripped.find(")", i)
            if close < 0:
                raise PatternSyntaxError("unclosed group", text, i)
            inner = stripped[i + 1 : close]
            if not inner:
                raise PatternSyntaxError("empty group", text, i)
            for off, c in enumerate(inner):
                if c not in ALPHABET:
                    raise PatternSyntaxError(f"unexpected {c!r}", text, i + 1 + off)
            if close + 1 >= len(stripped) or stripped[close + 1] != "*":
                raise PatternSyntaxError("group must be followed by '*'", text, close + 1)
            if run:
                items.append("".join(run))
                run = []
            items.append((inner,))
            i = close + 2
        elif ch.isspace() and not items and not run:
            i += 1
        else:
            raise PatternSyntaxError(f"unexpected {ch!r}", text, i)
    if run:
        items.append("".join(run))
    if not items:
        raise PatternSyntaxError("empty pattern", text, 0)
    return FormPattern(tuple(items), condition, label)


def _as_pattern(p):
    return p if isinstance(p, FormPattern) else parse_pattern(p)


def matches(p, s, n=None):
    """Whether ``s`` is generated by ``p``; the side condition uses n = len(s)."""
    p = _as_pattern(p)
    n = len(s) if n is None else n
    if p.condition is not None and not p.condition.holds(n):
        return False
    items = p.items

    @functools.lru_cache(maxsize=None)
    def go(item, pos):
        if item == len(items):
            return pos == len(s)
        it = items[item]
        if isinstance(it, str):
            return s.startswith(it, pos) and go(item + 1, pos + len(it))
        unit = it[0]
        # greedy: take as many copies as possible, then back off
        reps = 0
        while s.startswith(unit, pos + reps * len(unit)):
            reps += 1
        for r in range(reps, -1, -1):
            if go(item + 1, pos + r * len(unit)):
                return True
        return False

    return go(0, 0)


def expand(p, n):
    """All length-n strings generated by ``p``."""
    p = _as_pattern(p)
    if p.condition is not None and not p.condition.holds(n):
        return set()
    out = set()

    def rec(item, prefix):
        if len(prefix) > n:
            return
        if item == len(p.items):
            if len(prefix) == n:
                out.add(prefix)
            return
        it = p.items[item]
        if isinstance(it, str):
            rec(item + 1, prefix + it)
            return
        unit = it[0]
        cur = prefix
        while len(cur) <= n:
            rec(item + 1, cur)
            cur += unit

    rec(0, "")
    return out


@dataclass(frozen=True)
class Catalog:
    """Numbered forms for one field.

    ``alphabet`` and ``min_n`` delimit the sequences the catalog speaks
    about; ``complete`` says it lists every attainable sequence in that
    scope (not just some of them).
    """

    name: str
    q: int
    forms: tuple
    complete: bool = True
    alphabet: str = ALPHABET
    min_n: int = 1
    description: str = ""
    ids: tuple = field(default=())

    def __post_init__(self):
        ids = tuple(f.label for f in self.forms)
        if len(set(ids)) != len(ids):
            raise UsageError(f"catalog {self.name} has duplicate form ids")
        object.__setattr__(self, "ids", ids)

    def in_scope(self, s):
        return len(s) >= self.min_n and set(s) <= set(self.alphabet)

    def __iter__(self):
        return iter(self.forms)

    def __len__(self):
        return len(self.forms)


def catalog_match(s, catalog):
    """Ids of all forms in ``catalog`` matching ``s``."""
    return [f.label for f in catalog.forms if matches(f, s)]


def enumerate_catalog(catalog, n):
    """Every length-n sequence matching some form, restricted to the catalog's scope."""
    if not 1 <= n <= MAX_ENUM_N:
        raise UsageError(f"n = {n} out of range 1..{MAX_ENUM_N}")
    out = set()
    for f in catalog.forms:
        out |= expand(f, n)
    return {s for s in out if set(s) <= set(catalog.alphabet)}


_LINE_RE = re.compile(r"^\s*(\w+)\.\s*(.+?)\s*$")


def parse_catalog(text, name, q, **kwargs):
    forms = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _LINE_RE.match(line)
        if not m:
            raise UsageError(f"{name}:{lineno}: expected '<id>. <pattern>'")
        try:
            forms.append(parse_pattern(m.group(2), label=m.group(1)))
        except PatternSyntaxError as exc:
            raise UsageError(f"{name}:{lineno}: {exc}") from None
    return Catalog(name, q, tuple(forms), **kwargs)


def format_catalog(catalog):
    return "\n".join(f"{f.label}. {f}" for f in catalog.forms) + "\n"


def _read_builtin(fname):
    return importlib.resources.files("eprseq.catalogs").joinpath(fname).read_text()


@functools.lru_cache(maxsize=None)
def builtin_catalog(name):
    name = name.lower()
    if name == "f2":
        return parse_catalog(
            _read_builtin("f2.txt"),
            "f2",
            2,
            complete=True,
            description="all epr-sequences of symmetric matrices over GF(2)",
        )
    if name == "f3":
        return parse_catalog(
            _read_builtin("f3.txt"),
            "f3",
            3,
            complete=True,
            alphabet="AN",
            min_n=3,
            description="epr-sequences over GF(3) with no S, length >= 3",
        )
    raise UsageError(f"unknown catalog {name!r}; choose f2 or f3")
