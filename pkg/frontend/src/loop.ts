// Loop panel: mirrors the server's loop session; the panel state is always
// the last server response, and a rejected edit re-syncs from the server.

import { ApiCallError, ApiClient, LoopJson } from "./api.js";

export interface LoopPanelState {
  loop: LoopJson | null;
  playing: boolean;
  atEnd: boolean;
  lastError: string | null;
}

export function emptyPanel(): LoopPanelState {
  return { loop: null, playing: false, atEnd: false, lastError: null };
}

export class LoopPanel {
  state: LoopPanelState = emptyPanel();

  constructor(
    private api: ApiClient,
    private occasionId: string,
    private onChange: (state: LoopPanelState) => void = () => {},
  ) {}

  private emit(): LoopPanelState {
    this.onChange(this.state);
    return this.state;
  }

  async create(startMs: number, durationMs: number, offsetMs: number): Promise<LoopPanelState> {
    const loop = await this.api.createLoop(this.occasionId, {
      start_ms: startMs,
      duration_ms: durationMs,
      offset_ms: offsetMs,
    });
    this.state = { loop, playing: false, atEnd: false, lastError: null };
    return this.emit();
  }

  /** Advance by the offset; LoopAtEnd flips atEnd and disables the control. */
  async advance(): Promise<LoopPanelState> {
    const current = this.state.loop;
    if (!current || this.state.atEnd) return this.state;
    try {
      const loop = await this.api.advanceLoop(current.loop_id);
      this.state = { ...this.state, loop, atEnd: loop.at_end, lastError: null };
    } catch (err) {
      if (err instanceof ApiCallError && err.code === "LOOP_AT_END") {
        const loop = await this.api.getLoop(current.loop_id);
        this.state = { ...this.state, loop, atEnd: true, lastError: err.code };
      } else {
        await this.resync();
        this.state.lastError = err instanceof ApiCallError ? err.code : String(err);
      }
    }
    return this.emit();
  }

  /** Edit fields; on rejection the panel reverts to the server state. */
  async edit(fields: {
    start_ms?: number;
    duration_ms?: number;
    offset_ms?: number;
  }): Promise<LoopPanelState> {
    if (!this.state.loop) return this.state;
    const wasPlaying = this.state.playing;
    try {
      const loop = await this.api.patchLoop(this.state.loop.loop_id, fields);
      // a duration change mid-play restarts the loop cleanly at the new region
      this.state = { loop, playing: wasPlaying, atEnd: loop.at_end, lastError: null };
    } catch (err) {
      await this.resync();
      this.state.lastError = err instanceof ApiCallError ? err.code : String(err);
    }
    return this.emit();
  }

  async resync(): Promise<LoopPanelState> {
    if (this.state.loop) {
      try {
        const loop = await this.api.getLoop(this.state.loop.loop_id);
        this.state = { ...this.state, loop, atEnd: loop.at_end };
      } catch {
        this.state = emptyPanel();
      }
    }
    return this.emit();
  }

  togglePlay(): LoopPanelState {
    if (this.state.loop) this.state = { ...this.state, playing: !this.state.playing };
    return this.emit();
  }

  /** Keyboard map: space toggles playback, ArrowRight advances. */
  async onKey(key: string): Promise<LoopPanelState> {
    if (key === " ") return this.togglePlay();
    if (key === "ArrowRight" && !this.state.atEnd) return this.advance();
    return this.state;
  }

  advanceEnabled(): boolean {
    return this.state.loop !== null && !this.state.atEnd;
  }
}
