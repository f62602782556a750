"""Network, version, selection, and event types plus the entry-condition language.

Entry conditions are boolean expressions over option names with AND/OR and
the literal TRUE (no negation). Option names are unique across a version, so
a reference pins both the option and the system owning it; references must
point at strictly earlier systems, keeping the entry graph acyclic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping

from slakit.timebase import TimeSpan

SYSTEM_NAME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_-]*$")
OPTION_NAME_RE = re.compile(r"^[A-Za-z0-9][A-Za-z0-9_-]*$")
NETWORK_ID_RE = re.compile(r"^[A-Za-z0-9_-]+$")


class NetworkDefinitionError(ValueError):
    """The proposed systems violate a network invariant."""


# -- entry-condition expressions ----------------------------------------------


@dataclass(frozen=True)
class TrueEntry:
    """Always entered; the entry of root systems."""


@dataclass(frozen=True)
class OptionRef:
    option: str


@dataclass(frozen=True)
class AllOf:
    terms: tuple["EntryExpr", ...]


@dataclass(frozen=True)
class AnyOf:
    terms: tuple["EntryExpr", ...]


EntryExpr = TrueEntry | OptionRef | AllOf | AnyOf

_TOKEN_RE = re.compile(r"\s*(\(|\)|AND\b|OR\b|TRUE\b|[A-Za-z0-9][A-Za-z0-9_-]*)")


def parse_entry(text: str) -> EntryExpr:
    """Parse ``TRUE``, option names, AND/OR (AND binds tighter), and parens."""
    tokens: list[str] = []
    pos = 0
    stripped = text.strip()
    while pos < len(stripped):
        m = _TOKEN_RE.match(stripped, pos)
        if not m:
            raise NetworkDefinitionError(f"bad entry condition near {stripped[pos:pos+20]!r}")
        tokens.append(m.group(1))
        pos = m.end()
    if not tokens:
        raise NetworkDefinitionError("empty entry condition")

    def parse_or(i: int) -> tuple[EntryExpr, int]:
        term, i = parse_and(i)
        terms = [term]
        while i < len(tokens) and tokens[i] == "OR":
            term, i = parse_and(i + 1)
            terms.append(term)
        return (terms[0] if len(terms) == 1 else AnyOf(tuple(terms))), i

    def parse_and(i: int) -> tuple[EntryExpr, int]:
        term, i = parse_atom(i)
        terms = [term]
        while i < len(tokens) and tokens[i] == "AND":
            term, i = parse_atom(i + 1)
            terms.append(term)
        return (terms[0] if len(terms) == 1 else AllOf(tuple(terms))), i

    def parse_atom(i: int) -> tuple[EntryExpr, int]:
        if i >= len(tokens):
            raise NetworkDefinitionError(f"entry condition ends early: {text!r}")
        tok = tokens[i]
        if tok == "(":
            expr, i = parse_or(i + 1)
            if i >= len(tokens) or tokens[i] != ")":
                raise NetworkDefinitionError(f"unbalanced parentheses in {text!r}")
            return expr, i + 1
        if tok == "TRUE":
            return TrueEntry(), i + 1
        if tok in (")", "AND", "OR"):
            raise NetworkDefinitionError(f"unexpected {tok!r} in entry condition {text!r}")
        return OptionRef(tok), i + 1

    expr, i = parse_or(0)
    if i != len(tokens):
        raise NetworkDefinitionError(f"trailing tokens in entry condition {text!r}")
    return expr


def format_entry(expr: EntryExpr) -> str:
    """Canonical text form; parse_entry(format_entry(e)) == e."""
    if isinstance(expr, TrueEntry):
        return "TRUE"
    if isinstance(expr, OptionRef):
        return expr.option
    if isinstance(expr, AllOf):
        return " AND ".join(
            f"({format_entry(t)})" if isinstance(t, AnyOf) else format_entry(t)
            for t in expr.terms
        )
    if isinstance(expr, AnyOf):
        return " OR ".join(format_entry(t) for t in expr.terms)
    raise TypeError(f"not an entry expression: {expr!r}")


def entry_options(expr: EntryExpr) -> frozenset[str]:
    """All option names the expression references."""
    if isinstance(expr, TrueEntry):
        return frozenset()
    if isinstance(expr, OptionRef):
        return frozenset({expr.option})
    return frozenset().union(*(entry_options(t) for t in expr.terms))


def eval_entry(expr: EntryExpr, selected: frozenset[str] | set[str]) -> bool:
    """Evaluate over the set of selected option names."""
    if isinstance(expr, TrueEntry):
        return True
    if isinstance(expr, OptionRef):
        return expr.option in selected
    if isinstance(expr, AllOf):
        return all(eval_entry(t, selected) for t in expr.terms)
    return any(eval_entry(t, selected) for t in expr.terms)


# -- network structure ---------------------------------------------------------


@dataclass(frozen=True)
class System:
    """A named choice set with >= 2 options, opened by its entry condition."""

    name: str
    entry: EntryExpr
    options: tuple[str, ...]

    @classmethod
    def make(cls, name: str, entry: str | EntryExpr, options: Iterable[str]) -> "System":
        expr = parse_entry(entry) if isinstance(entry, str) else entry
        return cls(name=name, entry=expr, options=tuple(options))


@dataclass(frozen=True)
class NetworkVersion:
    """An immutable snapshot of the systems; versions number from 1."""

    version: int
    systems: tuple[System, ...]

    def system(self, name: str) -> System:
        for sys_ in self.systems:
            if sys_.name == name:
                return sys_
        raise KeyError(name)

    def owner_of(self, option: str) -> str:
        """System name owning an option (options are unique per version)."""
        for sys_ in self.systems:
            if option in sys_.options:
                return sys_.name
        raise KeyError(option)


@dataclass(frozen=True)
class SystemNetwork:
    """A named network and its full version history (append-only)."""

    network_id: str
    name: str
    versions: tuple[NetworkVersion, ...]
    deleted: bool = False

    def version(self, number: int) -> NetworkVersion:
        if not 1 <= number <= len(self.versions):
            raise KeyError(f"network {self.network_id} has no version {number}")
        return self.versions[number - 1]

    @property
    def head(self) -> NetworkVersion:
        return self.versions[-1]


def check_systems(systems: Iterable[System]) -> tuple[System, ...]:
    """Validate version invariants; returns the systems as a tuple.

    Checks: name syntax, unique system names, >= 2 unique options per system,
    option names unique across the version, entry references resolve, and the
    entry graph is acyclic (references point at strictly earlier systems).
    """
    systems = tuple(systems)
    problems: list[str] = []
    names: set[str] = set()
    owner: dict[str, str] = {}
    for sys_ in systems:
        if not SYSTEM_NAME_RE.match(sys_.name):
            problems.append(f"bad system name {sys_.name!r}")
        if sys_.name in names:
            problems.append(f"duplicate system name {sys_.name}")
        names.add(sys_.name)
        if len(sys_.options) < 2:
            problems.append(f"system {sys_.name} needs at least 2 options")
        for opt in sys_.options:
            if not OPTION_NAME_RE.match(opt):
                problems.append(f"bad option name {opt!r} in system {sys_.name}")
            elif opt in owner:
                problems.append(
                    f"option {opt} appears in both {owner[opt]} and {sys_.name}"
                )
            else:
                owner[opt] = sys_.name

    deps: dict[str, set[str]] = {}
    for sys_ in systems:
        dep_systems: set[str] = set()
        for opt in entry_options(sys_.entry):
            if opt not in owner:
                problems.append(
                    f"entry of {sys_.name} references unknown option {opt!r}"
                )
            else:
                dep_systems.add(owner[opt])
        deps[sys_.name] = dep_systems

    # cycle detection over the system dependency graph
    state: dict[str, int] = {}

    def visit(node: str, trail: list[str]) -> None:
        if state.get(node) == 2:
            return
        if state.get(node) == 1:
            cycle = " -> ".join(trail[trail.index(node):] + [node])
            problems.append(f"entry conditions form a cycle: {cycle}")
            return
        state[node] = 1
        for dep in sorted(deps.get(node, ())):
            visit(dep, trail + [node])
        state[node] = 2

    for sys_ in systems:
        visit(sys_.name, [])

    if problems:
        raise NetworkDefinitionError("; ".join(sorted(set(problems))))
    return systems


def topological_systems(version: NetworkVersion) -> list[System]:
    """Systems ordered so every entry dependency precedes its dependents."""
    owner = {opt: s.name for s in version.systems for opt in s.options}
    by_name = {s.name: s for s in version.systems}
    deps = {
        s.name: {owner[o] for o in entry_options(s.entry) if o in owner}
        for s in version.systems
    }
    ordered: list[System] = []
    done: set[str] = set()

    def visit(name: str) -> None:
        if name in done:
            return
        for dep in sorted(deps[name]):
            visit(dep)
        done.add(name)
        ordered.append(by_name[name])

    for s in version.systems:
        visit(s.name)
    return ordered


# -- selections and events -----------------------------------------------------


@dataclass(frozen=True)
class Selection:
    """Chosen (system, option) pairs; at most one option per system."""

    choices: frozenset[tuple[str, str]]

    def __post_init__(self) -> None:
        systems = [s for s, _ in self.choices]
        if len(systems) != len(set(systems)):
            raise ValueError(f"selection picks two options in one system: {sorted(self.choices)}")

    @classmethod
    def from_dict(cls, mapping: Mapping[str, str]) -> "Selection":
        return cls(frozenset(mapping.items()))

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, str]]) -> "Selection":
        return cls(frozenset(pairs))

    def as_dict(self) -> dict[str, str]:
        return dict(sorted(self.choices))

    def options(self) -> frozenset[str]:
        return frozenset(opt for _, opt in self.choices)

    def option_for(self, system: str) -> str | None:
        for s, o in self.choices:
            if s == system:
                return o
        return None

    def __len__(self) -> int:
        return len(self.choices)


@dataclass(frozen=True)
class IndexEvent:
    """A time-stamped selection pinned to the network version it was made on."""

    event_id: str
    occasion_id: str
    network_id: str
    network_version: int
    selection: Selection
    span: TimeSpan
    note: str = ""
    author: str = ""
    created_at: str = ""
