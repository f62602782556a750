// Criterion 11: >= 1000 fuzzed UI interactions against the live service
// never trigger server validation errors E003-E006. The fuzzer only drives
// the affordances the panels expose (dropdown choices, registry codes,
// picker-gated options, loop controls), with deliberately nasty free text.

import { beforeAll, describe, expect, inject, it } from "vitest";

import { ApiCallError, ApiClient, NetworkJson } from "../src/api.js";
import { TranscriptEditor } from "../src/editor.js";
import { LoopPanel } from "../src/loop.js";
import {
  PickerState,
  committable,
  initPicker,
  pick,
  selectionOf,
  unpick,
} from "../src/picker.js";
import { Workspace, bootstrapOccasion, choice, prng, randInt } from "./helpers.js";

const FORBIDDEN = new Set(["E003", "E004", "E005", "E006"]);

const TEXT_POOL = [
  "so",
  "we",
  "agree",
  "budget",
  "deferred",
  "why not",
  ".",
  "?",
  "!",
  "item 4.2",
  "naïve",
  "multi\nline",
  "",
  "   spaced   out   ",
];

const HEADER_POOL: { kind: string; value: string }[] = [
  { kind: "Situation", value: "fuzz meeting" },
  { kind: "Date", value: "2004-06-01" },
  { kind: "Activities", value: "review" },
  { kind: "Room Layout", value: "circle" },
];

let api: ApiClient;
let ws: Workspace;
let network: NetworkJson;

beforeAll(async () => {
  api = new ApiClient(inject("baseUrl"));
  ws = await bootstrapOccasion(api, 4.0, ["ROD", "DAL"]);
  network = await api.network("decision-moves");
});

describe("criterion 11: UI closure under fuzzing", () => {
  it("1000+ random interactions never hit E003-E006", async () => {
    const rand = prng(0x5eed);
    const editor = new TranscriptEditor(api, ws.occasionId);
    await editor.load();
    const panel = new LoopPanel(api, ws.occasionId);
    let picker: PickerState = initPicker(network.versions[0]!.systems);

    const seen: string[] = [];
    const offending: string[] = [];
    let interactions = 0;

    const record = (err: unknown) => {
      if (err instanceof ApiCallError) {
        seen.push(err.code);
        if (FORBIDDEN.has(err.code)) offending.push(err.code + ": " + err.message);
      } else if (err) {
        offending.push(String(err));
      }
    };

    while (interactions < 1000) {
      const dice = rand();
      interactions += 1;
      try {
        if (dice < 0.34) {
          // utterance dialog: speaker + terminator from the dropdowns
          const speakers = editor.speakerChoices();
          const words = Array.from({ length: randInt(rand, 0, 5) }, () =>
            choice(rand, TEXT_POOL),
          ).join(" ");
          const useLoop = panel.state.loop !== null && rand() < 0.5;
          await editor.appendUtterance(
            choice(rand, speakers),
            words,
            choice(rand, editor.terminatorChoices()),
            useLoop && panel.state.loop ? { loopId: panel.state.loop.loop_id } : undefined,
          );
          if (editor.state.lastError && FORBIDDEN.has(editor.state.lastError)) {
            offending.push(`append -> ${editor.state.lastError}`);
          }
        } else if (dice < 0.52) {
          // tier dialog: registry code, existing utterance
          const targets = editor.utteranceChoices();
          if (targets.length === 0) continue;
          await editor.attachTier(
            choice(rand, targets),
            choice(rand, editor.tierChoices()),
            choice(rand, TEXT_POOL),
          );
          if (editor.state.lastError && FORBIDDEN.has(editor.state.lastError)) {
            offending.push(`tier -> ${editor.state.lastError}`);
          }
        } else if (dice < 0.57) {
          await editor.newEpisode(
            Array.from({ length: randInt(rand, 0, 2) }, () => choice(rand, HEADER_POOL)),
          );
          if (editor.state.lastError && FORBIDDEN.has(editor.state.lastError)) {
            offending.push(`episode -> ${editor.state.lastError}`);
          }
        } else if (dice < 0.67) {
          // loop form: any numbers; invariant rejections are legitimate
          const start = randInt(rand, 0, ws.durationMs + 500);
          const duration = randInt(rand, 1, ws.durationMs + 500);
          const offset = randInt(rand, 1, 2000);
          await panel.create(start, duration, offset).catch(record);
        } else if (dice < 0.77) {
          await panel.advance();
          if (panel.state.lastError && FORBIDDEN.has(panel.state.lastError)) {
            offending.push(`advance -> ${panel.state.lastError}`);
          }
        } else if (dice < 0.82) {
          await panel.edit({
            [choice(rand, ["start_ms", "duration_ms", "offset_ms"] as const)]: randInt(
              rand,
              1,
              ws.durationMs + 500,
            ),
          });
          if (panel.state.lastError && FORBIDDEN.has(panel.state.lastError)) {
            offending.push(`edit -> ${panel.state.lastError}`);
          }
        } else if (dice < 0.97) {
          // picker walk: random gated picks, commit when allowed
          for (let step = 0; step < randInt(rand, 1, 4); step += 1) {
            const system = choice(rand, picker.systems);
            if (rand() < 0.25 && picker.picks[system.name] !== undefined) {
              picker = unpick(picker, system.name);
            } else {
              const next = pick(picker, system.name, choice(rand, system.options));
              if (next) picker = next;
            }
          }
          if (committable(picker) && Object.keys(picker.picks).length > 0 && panel.state.loop) {
            await api
              .recordIndexEvent(ws.occasionId, {
                network_id: network.network_id,
                version: network.head_version,
                selection: selectionOf(picker),
                loop_id: panel.state.loop.loop_id,
              })
              .catch(record);
            picker = initPicker(network.versions[0]!.systems);
          }
        } else {
          // contacts panel: only offers contacts not yet declared
          const fresh = Object.entries(ws.contactIds).filter(
            ([code]) => !editor.state.participants.includes(code),
          );
          if (fresh.length > 0) {
            await editor.addParticipant(choice(rand, fresh)[1]);
            if (editor.state.lastError && FORBIDDEN.has(editor.state.lastError)) {
              offending.push(`participant -> ${editor.state.lastError}`);
            }
          }
        }
      } catch (err) {
        record(err);
      }
    }

    expect(interactions).toBeGreaterThanOrEqual(1000);
    expect(offending).toEqual([]);
    for (const code of seen) {
      expect(FORBIDDEN.has(code), `server returned ${code}`).toBe(false);
    }

    // the persisted document never left the valid set
    const validation = await api.validate(ws.occasionId);
    expect(validation.diagnostics.filter((d) => d.severity === "error")).toEqual([]);
    const chat = await api.exportText(ws.occasionId, "chat");
    expect(chat.endsWith("@End\n")).toBe(true);
  }, 300_000);
});
