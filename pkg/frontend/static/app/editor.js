// Transcript editor core. The affordances are the contract: speakers come
// from the occasion's declared participants, terminators from the fixed
// three, tier codes from the configured registry, and tiers attach to an
// existing utterance chosen from the list. There is no raw-text path, so
// the editor cannot express a structurally invalid edit.
import { ApiCallError } from "./api.js";
export const TERMINATORS = [".", "?", "!"];
export const DEFAULT_TIER_REGISTRY = ["com", "act", "spa", "gap"];
/** The dialog's text field holds words only: bare terminator tokens drop
 * (the terminator is chosen separately) and whitespace collapses. */
export function sanitizeUtteranceText(raw) {
    return raw
        .split(/\s+/)
        .filter((tok) => tok !== "" && !TERMINATORS.includes(tok))
        .join(" ");
}
/** Tier content is one line; line breaks collapse to spaces. */
export function sanitizeTierContent(raw) {
    return raw.replace(/[\r\n]+/g, " ").trim();
}
export class TranscriptEditor {
    constructor(api, occasionId, tierRegistry = [...DEFAULT_TIER_REGISTRY], onChange = () => { }) {
        this.api = api;
        this.onChange = onChange;
        this.state = {
            occasionId,
            participants: [],
            utteranceCount: 0,
            episodeCount: 1,
            revision: 0,
            tierRegistry,
            lastError: null,
        };
    }
    absorb(summary) {
        this.state = {
            ...this.state,
            participants: summary.participants,
            utteranceCount: summary.utterance_count,
            episodeCount: summary.episode_count,
            revision: summary.revision,
            lastError: null,
        };
        this.onChange(this.state);
        return this.state;
    }
    async load() {
        return this.absorb(await this.api.occasion(this.state.occasionId));
    }
    /** The dialog's choice lists; submit stays disabled off these lists. */
    speakerChoices() {
        return [...this.state.participants];
    }
    terminatorChoices() {
        return TERMINATORS;
    }
    tierChoices() {
        return [...this.state.tierRegistry];
    }
    utteranceChoices() {
        return Array.from({ length: this.state.utteranceCount }, (_, i) => `${this.state.occasionId}.${i}`);
    }
    canSubmitUtterance(speaker, terminator) {
        return (this.state.participants.includes(speaker) &&
            TERMINATORS.includes(terminator));
    }
    async appendUtterance(speaker, text, terminator, timing) {
        if (!this.canSubmitUtterance(speaker, terminator)) {
            this.state.lastError = "BLOCKED_CLIENT_SIDE";
            this.onChange(this.state);
            return this.state;
        }
        try {
            const summary = await this.api.appendUtterance(this.state.occasionId, {
                speaker,
                text: sanitizeUtteranceText(text),
                terminator,
                span: timing?.span,
                loop_id: timing?.loopId,
            });
            return this.absorb(summary);
        }
        catch (err) {
            return this.fail(err);
        }
    }
    async attachTier(utteranceId, code, content) {
        if (!this.state.tierRegistry.includes(code) || !this.utteranceChoices().includes(utteranceId)) {
            this.state.lastError = "BLOCKED_CLIENT_SIDE";
            this.onChange(this.state);
            return this.state;
        }
        try {
            return this.absorb(await this.api.attachTier(utteranceId, code, sanitizeTierContent(content)));
        }
        catch (err) {
            return this.fail(err);
        }
    }
    async newEpisode(headers = [], placeId) {
        try {
            return this.absorb(await this.api.newEpisode(this.state.occasionId, {
                headers,
                place_id: placeId,
            }));
        }
        catch (err) {
            return this.fail(err);
        }
    }
    async addParticipant(contactId) {
        try {
            return this.absorb(await this.api.addParticipant(this.state.occasionId, contactId));
        }
        catch (err) {
            return this.fail(err);
        }
    }
    /** Failures leave no client-side state change: re-sync from the server. */
    async fail(err) {
        const code = err instanceof ApiCallError ? err.code : String(err);
        await this.load();
        this.state.lastError = code;
        this.onChange(this.state);
        return this.state;
    }
}
