"""Selection validity and bounded enumeration.

A selection is valid when every system whose entry condition holds over the
chosen options has exactly one chosen option, and no other system has any.
"""

from __future__ import annotations

from dataclasses import dataclass

from slakit.networks.model import (
    NetworkVersion,
    Selection,
    eval_entry,
    topological_systems,
)


class UnknownNameError(KeyError):
    """Selection referenced a system/option absent from the version."""


class EnumerationBoundError(ValueError):
    """Version has too many systems for exhaustive enumeration."""


@dataclass(frozen=True)
class SelectionViolation:
    """One rule breach; kind is 'unselected' (entered, no choice) or
    'not_entered' (choice in a closed system)."""

    system: str
    kind: str
    message: str


def _check_names(version: NetworkVersion, selection: Selection) -> None:
    systems = {s.name: s for s in version.systems}
    for sys_name, opt in selection.choices:
        sys_ = systems.get(sys_name)
        if sys_ is None:
            raise UnknownNameError(f"unknown system {sys_name!r}")
        if opt not in sys_.options:
            raise UnknownNameError(f"system {sys_name} has no option {opt!r}")


def validate_selection(
    version: NetworkVersion, selection: Selection
) -> list[SelectionViolation]:
    """Empty list iff the selection is valid for this version.

    Raises UnknownNameError when the selection references names the version
    does not define (that is an addressing error, not a rule violation).
    """
    _check_names(version, selection)
    chosen = selection.options()
    violations: list[SelectionViolation] = []
    for sys_ in version.systems:
        entered = eval_entry(sys_.entry, chosen)
        picked = selection.option_for(sys_.name)
        if entered and picked is None:
            violations.append(
                SelectionViolation(
                    system=sys_.name,
                    kind="unselected",
                    message=f"system {sys_.name} is entered but has no selected option",
                )
            )
        elif not entered and picked is not None:
            violations.append(
                SelectionViolation(
                    system=sys_.name,
                    kind="not_entered",
                    message=f"system {sys_.name} is not entered but {picked} is selected",
                )
            )
    return violations


def enumerate_valid_selections(
    version: NetworkVersion, bound: int = 12
) -> set[Selection]:
    """Exactly the selections validate_selection accepts.

    Walks systems in topological order branching only on entered systems, so
    the work is proportional to the number of valid selections rather than
    the full choice product. Refuses versions beyond ``bound`` systems.
    """
    if len(version.systems) > bound:
        raise EnumerationBoundError(
            f"{len(version.systems)} systems exceeds the enumeration bound {bound}"
        )
    ordered = topological_systems(version)
    results: set[Selection] = set()

    def walk(idx: int, picks: tuple[tuple[str, str], ...]) -> None:
        if idx == len(ordered):
            results.add(Selection.from_pairs(picks))
            return
        sys_ = ordered[idx]
        chosen = frozenset(o for _, o in picks)
        if eval_entry(sys_.entry, chosen):
            for opt in sys_.options:
                walk(idx + 1, picks + ((sys_.name, opt),))
        else:
            walk(idx + 1, picks)

    walk(0, ())
    return results
