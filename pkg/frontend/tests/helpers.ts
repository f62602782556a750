// Shared test helpers: seeded PRNG, WAV synthesis, occasion bootstrap.

import { ApiClient } from "../src/api.js";

/** mulberry32: small deterministic PRNG for reproducible fuzzing. */
export function prng(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export function randInt(rand: () => number, low: number, high: number): number {
  return low + Math.floor(rand() * (high - low + 1));
}

export function choice<T>(rand: () => number, items: readonly T[]): T {
  const item = items[Math.floor(rand() * items.length)];
  if (item === undefined) throw new Error("choice from empty list");
  return item;
}

/** Mono 16-bit PCM WAV of a sine tone. */
export function sineWav(seconds: number, rate = 8000, freq = 440): Uint8Array {
  const frames = Math.round(seconds * rate);
  const dataBytes = frames * 2;
  const buffer = new ArrayBuffer(44 + dataBytes);
  const view = new DataView(buffer);
  const ascii = (offset: number, text: string) => {
    for (let i = 0; i < text.length; i += 1) view.setUint8(offset + i, text.charCodeAt(i));
  };
  ascii(0, "RIFF");
  view.setUint32(4, 36 + dataBytes, true);
  ascii(8, "WAVE");
  ascii(12, "fmt ");
  view.setUint32(16, 16, true);
  view.setUint16(20, 1, true); // PCM
  view.setUint16(22, 1, true); // mono
  view.setUint32(24, rate, true);
  view.setUint32(28, rate * 2, true);
  view.setUint16(32, 2, true);
  view.setUint16(34, 16, true);
  ascii(36, "data");
  view.setUint32(40, dataBytes, true);
  for (let i = 0; i < frames; i += 1) {
    const sample = Math.round(Math.sin((2 * Math.PI * freq * i) / rate) * 32000);
    view.setInt16(44 + i * 2, sample, true);
  }
  return new Uint8Array(buffer);
}

let counter = 0;

export function uniqueId(prefix: string): string {
  counter += 1;
  return `${prefix}-${Date.now().toString(36)}-${counter}`;
}

export interface Workspace {
  api: ApiClient;
  projectId: string;
  occasionId: string;
  contactIds: Record<string, string>;
  durationMs: number;
}

/** Poll until the waveform sidecar finishes building (ingest is async). */
export async function waitWaveformReady(api: ApiClient, occasionId: string): Promise<void> {
  for (let attempt = 0; attempt < 100; attempt += 1) {
    const tile = await api.waveform(occasionId, 0, 0, 1);
    if (tile.status === "ready") return;
    await new Promise((resolve) => setTimeout(resolve, 50));
  }
  throw new Error(`waveform for ${occasionId} never became ready`);
}

/** Contacts + project + occasion with media, ready for transcription. */
export async function bootstrapOccasion(
  api: ApiClient,
  seconds = 4.0,
  participantCodes: string[] = ["ROD", "DAL"],
): Promise<Workspace> {
  const allCodes = ["ROD", "DAL", "PHL"];
  const contactIds: Record<string, string> = {};
  const existing = await api.listContacts();
  for (const contact of existing.contacts) contactIds[contact.code] = contact.contact_id;
  for (const code of allCodes) {
    if (!contactIds[code]) {
      const created = await api.createContact({ code, name: `Name${code}`, role: "Analyst" });
      contactIds[code] = created.contact_id;
    }
  }
  const project = await api.createProject(`study-${uniqueId("p")}`);
  const occasionId = uniqueId("occ");
  await api.createOccasion(project.project_id, {
    occasion_id: occasionId,
    title: "fuzz occasion",
    participants: participantCodes.map((code) => ({ contact_id: contactIds[code] })),
  });
  const ingest = (await api.ingestMedia(occasionId, sineWav(seconds))) as { duration_ms: number };
  await waitWaveformReady(api, occasionId);
  return {
    api,
    projectId: project.project_id,
    occasionId,
    contactIds,
    durationMs: ingest.duration_ms,
  };
}
