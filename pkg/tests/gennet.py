"""Random system-network generator plus a from-scratch validity oracle.

The oracle enumerates the full per-system choice product and applies the
entry/selection rules directly, sharing no code with the production
validator or enumerator (it interprets the entry AST with its own walker).
"""

from __future__ import annotations

import itertools
import random

from slakit.networks import (
    AllOf,
    AnyOf,
    NetworkVersion,
    OptionRef,
    Selection,
    System,
    TrueEntry,
)


def random_version(
    rng: random.Random, max_systems: int = 4, max_options: int = 3
) -> NetworkVersion:
    """Acyclic by construction: entries reference only earlier systems."""
    n_systems = rng.randint(1, max_systems)
    systems = []
    pool: list[str] = []  # options of earlier systems
    opt_counter = 0
    for si in range(n_systems):
        n_options = rng.randint(2, max_options)
        options = tuple(f"o{opt_counter + i}" for i in range(n_options))
        opt_counter += n_options
        entry = _random_entry(rng, pool)
        systems.append(System(name=f"SYS{si}", entry=entry, options=options))
        pool.extend(options)
    return NetworkVersion(version=1, systems=tuple(systems))


def _random_entry(rng: random.Random, pool: list[str]):
    if not pool or rng.random() < 0.35:
        return TrueEntry()
    picks = rng.sample(pool, min(len(pool), rng.randint(1, 3)))
    if len(picks) == 1:
        return OptionRef(picks[0])
    refs = tuple(OptionRef(p) for p in picks)
    if rng.random() < 0.5:
        return AllOf(refs)
    if rng.random() < 0.5:
        return AnyOf(refs)
    return AnyOf((AllOf(refs[:2]), *(r for r in refs[2:])))


def _holds(entry, chosen: set[str]) -> bool:
    """Independent entry evaluator for the oracle."""
    if isinstance(entry, TrueEntry):
        return True
    if isinstance(entry, OptionRef):
        return entry.option in chosen
    if isinstance(entry, AllOf):
        for term in entry.terms:
            if not _holds(term, chosen):
                return False
        return True
    if isinstance(entry, AnyOf):
        for term in entry.terms:
            if _holds(term, chosen):
                return True
        return False
    raise TypeError(entry)


def brute_force_choices(version: NetworkVersion):
    """Every per-system choice combination (None or one option per system)."""
    per_system = [[None, *sys_.options] for sys_ in version.systems]
    for combo in itertools.product(*per_system):
        yield tuple(
            (sys_.name, opt)
            for sys_, opt in zip(version.systems, combo)
            if opt is not None
        )


def brute_force_is_valid(version: NetworkVersion, pairs: tuple[tuple[str, str], ...]) -> bool:
    """Direct rule application: entered iff entry holds, entered iff selected."""
    chosen = {opt for _, opt in pairs}
    selected_systems = {sys_name for sys_name, _ in pairs}
    for sys_ in version.systems:
        entered = _holds(sys_.entry, chosen)
        if entered != (sys_.name in selected_systems):
            return False
    return True


def brute_force_valid_selections(version: NetworkVersion) -> set[Selection]:
    return {
        Selection.from_pairs(pairs)
        for pairs in brute_force_choices(version)
        if brute_force_is_valid(version, pairs)
    }
