"""Shipped starter network for indexing decision-making occasions.

One MOVE system tags a stretch of talk as raising an issue, an action, or a
decision; when a decision is tagged, the REALISATION system records whether
it surfaced through verbal or mental process wording.
"""

from __future__ import annotations

from slakit.networks.model import System, TrueEntry, parse_entry


def decision_moves_systems() -> tuple[System, ...]:
    return (
        System(name="MOVE", entry=TrueEntry(), options=("issue", "action", "decision")),
        System(
            name="REALISATION",
            entry=parse_entry("decision"),
            options=("verbal", "mental"),
        ),
    )
