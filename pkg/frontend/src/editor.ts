// Transcript editor core. The affordances are the contract: speakers come
// from the occasion's declared participants, terminators from the fixed
// three, tier codes from the configured registry, and tiers attach to an
// existing utterance chosen from the list. There is no raw-text path, so
// the editor cannot express a structurally invalid edit.

import { ApiCallError, ApiClient, DocSummary, SpanJson } from "./api.js";

export const TERMINATORS = [".", "?", "!"] as const;
export type Terminator = (typeof TERMINATORS)[number];

export const DEFAULT_TIER_REGISTRY = ["com", "act", "spa", "gap"] as const;

/** The dialog's text field holds words only: bare terminator tokens drop
 * (the terminator is chosen separately) and whitespace collapses. */
export function sanitizeUtteranceText(raw: string): string {
  return raw
    .split(/\s+/)
    .filter((tok) => tok !== "" && !(TERMINATORS as readonly string[]).includes(tok))
    .join(" ");
}

/** Tier content is one line; line breaks collapse to spaces. */
export function sanitizeTierContent(raw: string): string {
  return raw.replace(/[\r\n]+/g, " ").trim();
}

export interface EditorState {
  occasionId: string;
  participants: string[];
  utteranceCount: number;
  episodeCount: number;
  revision: number;
  tierRegistry: string[];
  lastError: string | null;
}

export interface ViewFilter {
  speakers: string[] | null;
  tierCodes: string[] | null;
  collapsedEpisodes: number[];
}

export class TranscriptEditor {
  state: EditorState;

  constructor(
    private api: ApiClient,
    occasionId: string,
    tierRegistry: string[] = [...DEFAULT_TIER_REGISTRY],
    private onChange: (state: EditorState) => void = () => {},
  ) {
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

  private absorb(summary: DocSummary): EditorState {
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

  async load(): Promise<EditorState> {
    return this.absorb(await this.api.occasion(this.state.occasionId));
  }

  /** The dialog's choice lists; submit stays disabled off these lists. */
  speakerChoices(): string[] {
    return [...this.state.participants];
  }
  terminatorChoices(): readonly Terminator[] {
    return TERMINATORS;
  }
  tierChoices(): string[] {
    return [...this.state.tierRegistry];
  }
  utteranceChoices(): string[] {
    return Array.from(
      { length: this.state.utteranceCount },
      (_, i) => `${this.state.occasionId}.${i}`,
    );
  }

  canSubmitUtterance(speaker: string, terminator: string): boolean {
    return (
      this.state.participants.includes(speaker) &&
      (TERMINATORS as readonly string[]).includes(terminator)
    );
  }

  async appendUtterance(
    speaker: string,
    text: string,
    terminator: Terminator,
    timing?: { span?: SpanJson; loopId?: string },
  ): Promise<EditorState> {
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
    } catch (err) {
      return this.fail(err);
    }
  }

  async attachTier(utteranceId: string, code: string, content: string): Promise<EditorState> {
    if (!this.state.tierRegistry.includes(code) || !this.utteranceChoices().includes(utteranceId)) {
      this.state.lastError = "BLOCKED_CLIENT_SIDE";
      this.onChange(this.state);
      return this.state;
    }
    try {
      return this.absorb(
        await this.api.attachTier(utteranceId, code, sanitizeTierContent(content)),
      );
    } catch (err) {
      return this.fail(err);
    }
  }

  async newEpisode(
    headers: { kind: string; value: string }[] = [],
    placeId?: string,
  ): Promise<EditorState> {
    try {
      return this.absorb(
        await this.api.newEpisode(this.state.occasionId, {
          headers,
          place_id: placeId,
        }),
      );
    } catch (err) {
      return this.fail(err);
    }
  }

  async addParticipant(contactId: string): Promise<EditorState> {
    try {
      return this.absorb(await this.api.addParticipant(this.state.occasionId, contactId));
    } catch (err) {
      return this.fail(err);
    }
  }

  /** Failures leave no client-side state change: re-sync from the server. */
  private async fail(err: unknown): Promise<EditorState> {
    const code = err instanceof ApiCallError ? err.code : String(err);
    await this.load();
    this.state.lastError = code;
    this.onChange(this.state);
    return this.state;
  }
}
