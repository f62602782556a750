// Typed client for the transcoder service. Every call resolves to the parsed
// body or throws ApiCallError carrying the server's structured error code.

export interface ApiErrorBody {
  error: { code: string; message: string };
}

export class ApiCallError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
  ) {
    super(`${status} ${code}: ${message}`);
  }
}

export interface SpanJson {
  start_ms: number;
  end_ms: number;
}

export interface LoopJson {
  loop_id: string;
  occasion_id: string;
  start_ms: number;
  duration_ms: number;
  offset_ms: number;
  media_duration_ms: number;
  at_end: boolean;
  span: SpanJson;
}

export interface DocSummary {
  occasion_id: string;
  revision: number;
  episode_count: number;
  utterance_count: number;
  participants: string[];
  diagnostics: { code: string; line: number; message: string; severity: string }[];
  utterance_id?: string;
  span?: SpanJson;
}

export interface OccasionView extends DocSummary {
  has_media: boolean;
  waveform_ready: boolean;
  duration_ms: number | null;
}

export interface WaveformTile {
  status: string;
  level: number;
  from_bucket: number;
  peaks: [number, number][];
  level_count: number;
  bucket_count: number;
  base_bucket: number;
  sample_rate: number;
  total_samples: number;
  duration_ms: number;
}

export interface SystemJson {
  name: string;
  entry: string;
  options: string[];
}

export interface NetworkJson {
  network_id: string;
  name: string;
  deleted: boolean;
  head_version: number;
  versions: { version: number; systems: SystemJson[] }[];
}

export interface ContactJson {
  contact_id: string;
  revision: number;
  code: string;
  name: string;
  role: string;
}

export interface EventJson {
  event_id: string;
  network_id: string;
  version: number;
  selection: Record<string, string>;
  span: SpanJson;
  merged_tiers?: number;
  standalone_comment?: boolean;
}

async function parseBody(response: Response): Promise<unknown> {
  const text = await response.text();
  if (!text) return null;
  try {
    return JSON.parse(text);
  } catch {
    return text;
  }
}

export class ApiClient {
  constructor(public baseUrl: string) {}

  private async request(method: string, path: string, body?: unknown): Promise<unknown> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.headers = { "content-type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const response = await fetch(this.baseUrl + path, init);
    const parsed = await parseBody(response);
    if (!response.ok) {
      const err = parsed as ApiErrorBody | null;
      const code = err && typeof err === "object" && err.error ? err.error.code : "HTTP";
      const message =
        err && typeof err === "object" && err.error ? err.error.message : String(parsed);
      throw new ApiCallError(response.status, code, message);
    }
    return parsed;
  }

  get(path: string): Promise<unknown> {
    return this.request("GET", path);
  }
  post(path: string, body?: unknown): Promise<unknown> {
    return this.request("POST", path, body);
  }
  patch(path: string, body: unknown): Promise<unknown> {
    return this.request("PATCH", path, body);
  }

  // -- typed wrappers -------------------------------------------------------

  createContact(contact: { code: string; name: string; role: string }): Promise<ContactJson> {
    return this.post("/contacts", contact) as Promise<ContactJson>;
  }

  listContacts(): Promise<{ contacts: ContactJson[] }> {
    return this.get("/contacts") as Promise<{ contacts: ContactJson[] }>;
  }

  createProject(title: string): Promise<{ project_id: string }> {
    return this.post("/projects", { title }) as Promise<{ project_id: string }>;
  }

  createOccasion(
    projectId: string,
    body: { occasion_id?: string; title?: string; participants: { contact_id?: string; code?: string; name?: string; role?: string }[] },
  ): Promise<DocSummary> {
    return this.post(`/projects/${projectId}/occasions`, body) as Promise<DocSummary>;
  }

  occasion(occasionId: string): Promise<OccasionView> {
    return this.get(`/occasions/${occasionId}`) as Promise<OccasionView>;
  }

  async ingestMedia(occasionId: string, wav: ArrayBuffer | Uint8Array): Promise<unknown> {
    const response = await fetch(`${this.baseUrl}/occasions/${occasionId}/media`, {
      method: "POST",
      headers: { "content-type": "audio/wav" },
      body: wav as BodyInit,
    });
    const parsed = await parseBody(response);
    if (!response.ok) {
      const err = parsed as ApiErrorBody;
      throw new ApiCallError(response.status, err.error.code, err.error.message);
    }
    return parsed;
  }

  waveform(
    occasionId: string,
    level: number,
    fromBucket: number,
    count?: number,
  ): Promise<WaveformTile> {
    const params = new URLSearchParams({ level: String(level), from: String(fromBucket) });
    if (count !== undefined) params.set("count", String(count));
    return this.get(`/occasions/${occasionId}/waveform?${params}`) as Promise<WaveformTile>;
  }

  async excerpt(occasionId: string, startMs: number, endMs: number): Promise<ArrayBuffer> {
    const response = await fetch(
      `${this.baseUrl}/occasions/${occasionId}/excerpt?start_ms=${startMs}&end_ms=${endMs}`,
    );
    if (!response.ok) {
      const err = (await response.json()) as ApiErrorBody;
      throw new ApiCallError(response.status, err.error.code, err.error.message);
    }
    return response.arrayBuffer();
  }

  createLoop(
    occasionId: string,
    body: { start_ms: number; duration_ms: number; offset_ms: number },
  ): Promise<LoopJson> {
    return this.post(`/occasions/${occasionId}/loops`, body) as Promise<LoopJson>;
  }

  advanceLoop(loopId: string): Promise<LoopJson> {
    return this.post(`/loops/${loopId}/advance`) as Promise<LoopJson>;
  }

  patchLoop(
    loopId: string,
    fields: { start_ms?: number; duration_ms?: number; offset_ms?: number },
  ): Promise<LoopJson> {
    return this.patch(`/loops/${loopId}`, fields) as Promise<LoopJson>;
  }

  getLoop(loopId: string): Promise<LoopJson> {
    return this.get(`/loops/${loopId}`) as Promise<LoopJson>;
  }

  appendUtterance(
    occasionId: string,
    body: {
      speaker: string;
      text: string;
      terminator: string;
      span?: SpanJson;
      loop_id?: string;
    },
  ): Promise<DocSummary> {
    return this.post(`/occasions/${occasionId}/utterances`, body) as Promise<DocSummary>;
  }

  attachTier(utteranceId: string, code: string, content: string): Promise<DocSummary> {
    return this.post(`/utterances/${utteranceId}/tiers`, { code, content }) as Promise<DocSummary>;
  }

  newEpisode(
    occasionId: string,
    body: { headers?: { kind: string; value: string }[]; place_id?: string },
  ): Promise<DocSummary> {
    return this.post(`/occasions/${occasionId}/episodes`, body) as Promise<DocSummary>;
  }

  addParticipant(occasionId: string, contactId: string): Promise<DocSummary> {
    return this.post(`/occasions/${occasionId}/participants`, {
      contact_id: contactId,
    }) as Promise<DocSummary>;
  }

  createNetwork(body: {
    name: string;
    network_id?: string;
    systems: SystemJson[];
  }): Promise<NetworkJson> {
    return this.post("/networks", body) as Promise<NetworkJson>;
  }

  network(networkId: string): Promise<NetworkJson> {
    return this.get(`/networks/${networkId}`) as Promise<NetworkJson>;
  }

  networkVersion(networkId: string, version: number): Promise<{ version: number; systems: SystemJson[] }> {
    return this.get(`/networks/${networkId}/versions/${version}`) as Promise<{
      version: number;
      systems: SystemJson[];
    }>;
  }

  validSelections(networkId: string, version: number): Promise<{ selections: Record<string, string>[] }> {
    return this.get(`/networks/${networkId}/versions/${version}/selections`) as Promise<{
      selections: Record<string, string>[];
    }>;
  }

  recordIndexEvent(
    occasionId: string,
    body: {
      network_id: string;
      version: number;
      selection: Record<string, string>;
      span?: SpanJson;
      loop_id?: string;
      note?: string;
    },
  ): Promise<EventJson> {
    return this.post(`/occasions/${occasionId}/index-events`, body) as Promise<EventJson>;
  }

  validate(occasionId: string): Promise<{ diagnostics: { code: string; severity: string }[] }> {
    return this.get(`/occasions/${occasionId}/validate`) as Promise<{
      diagnostics: { code: string; severity: string }[];
    }>;
  }

  reportJson(occasionId: string, kind: string): Promise<unknown> {
    return this.get(`/occasions/${occasionId}/reports/${kind}`);
  }

  async reportSvg(occasionId: string, kind: string): Promise<string> {
    const response = await fetch(
      `${this.baseUrl}/occasions/${occasionId}/reports/${kind}?format=svg`,
    );
    if (!response.ok) {
      const err = (await response.json()) as ApiErrorBody;
      throw new ApiCallError(response.status, err.error.code, err.error.message);
    }
    return response.text();
  }

  async exportText(occasionId: string, format: "chat" | "sla-xml"): Promise<string> {
    const response = await fetch(
      `${this.baseUrl}/occasions/${occasionId}/export?format=${format}`,
    );
    if (!response.ok) {
      const err = (await response.json()) as ApiErrorBody;
      throw new ApiCallError(response.status, err.error.code, err.error.message);
    }
    return response.text();
  }

  createPlace(body: {
    situation: string;
    activities?: string;
    room_layout?: string;
  }): Promise<{ place_id: string }> {
    return this.post("/places", body) as Promise<{ place_id: string }>;
  }
}
