"""System networks: versioned choice taxonomies and time-stamped selections.

A network is a list of systems; each system offers options and opens
("enters") when its entry condition over previously chosen options holds.
Revisions never rewrite history: every committed version stays retrievable
and every recorded index event pins the version it was made against.
"""

from slakit.networks.model import (
    AllOf,
    AnyOf,
    EntryExpr,
    IndexEvent,
    NetworkDefinitionError,
    NetworkVersion,
    OptionRef,
    Selection,
    System,
    SystemNetwork,
    TrueEntry,
    entry_options,
    eval_entry,
    format_entry,
    parse_entry,
)
from slakit.networks.selections import (
    EnumerationBoundError,
    SelectionViolation,
    UnknownNameError,
    enumerate_valid_selections,
    validate_selection,
)
from slakit.networks.merge import index_tier_content, merge_events_into_transcript
from slakit.networks.presets import decision_moves_systems
from slakit.networks import xmlio

__all__ = [
    "AllOf",
    "AnyOf",
    "EntryExpr",
    "IndexEvent",
    "NetworkDefinitionError",
    "NetworkVersion",
    "OptionRef",
    "Selection",
    "System",
    "SystemNetwork",
    "TrueEntry",
    "entry_options",
    "eval_entry",
    "format_entry",
    "parse_entry",
    "EnumerationBoundError",
    "SelectionViolation",
    "UnknownNameError",
    "enumerate_valid_selections",
    "validate_selection",
    "index_tier_content",
    "merge_events_into_transcript",
    "decision_moves_systems",
    "xmlio",
]
