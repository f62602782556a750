// Network picker state machine (pure). A system's options stay disabled
// until its entry condition holds over the current picks; changing an
// earlier pick cascades away any picks whose systems fall closed. Commit is
// possible exactly when every entered visible system has one pick, so every
// committed selection passes the server's validation.
import { evalEntry, parseEntry } from "./entry.js";
export function initPicker(systems, hidden = []) {
    return {
        systems: systems.map((s) => ({
            name: s.name,
            entry: parseEntry(s.entry),
            entryText: s.entry,
            options: [...s.options],
        })),
        picks: {},
        hidden: new Set(hidden),
    };
}
function pickedOptions(picks) {
    return new Set(Object.values(picks));
}
export function entered(state, systemName) {
    const system = state.systems.find((s) => s.name === systemName);
    if (!system)
        return false;
    return evalEntry(system.entry, pickedOptions(state.picks));
}
/** Drop picks of systems that are no longer entered (until stable). */
function settle(state) {
    let picks = { ...state.picks };
    for (;;) {
        const chosen = new Set(Object.values(picks));
        const stale = state.systems.filter((s) => picks[s.name] !== undefined && !evalEntry(s.entry, chosen));
        if (stale.length === 0)
            break;
        for (const s of stale)
            delete picks[s.name];
    }
    return { ...state, picks };
}
/** Pick an option; a no-op (returns null) when the system is not entered,
 * hidden, or the option unknown. */
export function pick(state, systemName, option) {
    const system = state.systems.find((s) => s.name === systemName);
    if (!system || state.hidden.has(systemName))
        return null;
    if (!system.options.includes(option))
        return null;
    if (!entered(state, systemName))
        return null;
    return settle({ ...state, picks: { ...state.picks, [systemName]: option } });
}
/** Clear one system's pick (cascades dependents closed). */
export function unpick(state, systemName) {
    if (state.picks[systemName] === undefined)
        return state;
    const picks = { ...state.picks };
    delete picks[systemName];
    return settle({ ...state, picks });
}
/** What the panel renders: per system, whether its options are enabled. */
export function viewSystems(state) {
    const chosen = pickedOptions(state.picks);
    return state.systems
        .filter((s) => !state.hidden.has(s.name))
        .map((s) => {
        const isEntered = evalEntry(s.entry, chosen);
        const picked = state.picks[s.name] ?? null;
        return {
            name: s.name,
            entryText: s.entryText,
            entered: isEntered,
            picked,
            options: s.options.map((o) => ({
                name: o,
                enabled: isEntered,
                selected: picked === o,
            })),
        };
    });
}
/** Commit is blocked while an entered visible system lacks a pick, or while
 * a hidden system is entered (it could never be satisfied). */
export function committable(state) {
    const chosen = pickedOptions(state.picks);
    return state.systems.every((s) => {
        const isEntered = evalEntry(s.entry, chosen);
        if (state.hidden.has(s.name))
            return !isEntered && state.picks[s.name] === undefined;
        return isEntered === (state.picks[s.name] !== undefined);
    });
}
export function selectionOf(state) {
    return { ...state.picks };
}
/** Every selection the picker can ever commit, by exhaustive walk of the
 * action space (pick/unpick). Used to check equivalence with the server. */
export function reachableCommittableSelections(systems, hidden = []) {
    const seen = new Set();
    const results = new Map();
    const stack = [initPicker(systems, hidden)];
    const keyOf = (picks) => JSON.stringify(Object.entries(picks).sort(([a], [b]) => (a < b ? -1 : 1)));
    while (stack.length > 0) {
        const state = stack.pop();
        const key = keyOf(state.picks);
        if (seen.has(key))
            continue;
        seen.add(key);
        if (committable(state))
            results.set(key, selectionOf(state));
        for (const system of state.systems) {
            for (const option of system.options) {
                const next = pick(state, system.name, option);
                if (next)
                    stack.push(next);
            }
            if (state.picks[system.name] !== undefined)
                stack.push(unpick(state, system.name));
        }
    }
    return [...results.values()];
}
