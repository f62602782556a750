// Typed client for the transcoder service. Every call resolves to the parsed
// body or throws ApiCallError carrying the server's structured error code.
export class ApiCallError extends Error {
    constructor(status, code, message) {
        super(`${status} ${code}: ${message}`);
        this.status = status;
        this.code = code;
    }
}
async function parseBody(response) {
    const text = await response.text();
    if (!text)
        return null;
    try {
        return JSON.parse(text);
    }
    catch {
        return text;
    }
}
export class ApiClient {
    constructor(baseUrl) {
        this.baseUrl = baseUrl;
    }
    async request(method, path, body) {
        const init = { method };
        if (body !== undefined) {
            init.headers = { "content-type": "application/json" };
            init.body = JSON.stringify(body);
        }
        const response = await fetch(this.baseUrl + path, init);
        const parsed = await parseBody(response);
        if (!response.ok) {
            const err = parsed;
            const code = err && typeof err === "object" && err.error ? err.error.code : "HTTP";
            const message = err && typeof err === "object" && err.error ? err.error.message : String(parsed);
            throw new ApiCallError(response.status, code, message);
        }
        return parsed;
    }
    get(path) {
        return this.request("GET", path);
    }
    post(path, body) {
        return this.request("POST", path, body);
    }
    patch(path, body) {
        return this.request("PATCH", path, body);
    }
    // -- typed wrappers -------------------------------------------------------
    createContact(contact) {
        return this.post("/contacts", contact);
    }
    listContacts() {
        return this.get("/contacts");
    }
    createProject(title) {
        return this.post("/projects", { title });
    }
    createOccasion(projectId, body) {
        return this.post(`/projects/${projectId}/occasions`, body);
    }
    occasion(occasionId) {
        return this.get(`/occasions/${occasionId}`);
    }
    async ingestMedia(occasionId, wav) {
        const response = await fetch(`${this.baseUrl}/occasions/${occasionId}/media`, {
            method: "POST",
            headers: { "content-type": "audio/wav" },
            body: wav,
        });
        const parsed = await parseBody(response);
        if (!response.ok) {
            const err = parsed;
            throw new ApiCallError(response.status, err.error.code, err.error.message);
        }
        return parsed;
    }
    waveform(occasionId, level, fromBucket, count) {
        const params = new URLSearchParams({ level: String(level), from_bucket: String(fromBucket) });
        if (count !== undefined)
            params.set("count", String(count));
        return this.get(`/occasions/${occasionId}/waveform?${params}`);
    }
    async excerpt(occasionId, startMs, endMs) {
        const response = await fetch(`${this.baseUrl}/occasions/${occasionId}/excerpt?start_ms=${startMs}&end_ms=${endMs}`);
        if (!response.ok) {
            const err = (await response.json());
            throw new ApiCallError(response.status, err.error.code, err.error.message);
        }
        return response.arrayBuffer();
    }
    createLoop(occasionId, body) {
        return this.post(`/occasions/${occasionId}/loops`, body);
    }
    advanceLoop(loopId) {
        return this.post(`/loops/${loopId}/advance`);
    }
    patchLoop(loopId, fields) {
        return this.patch(`/loops/${loopId}`, fields);
    }
    getLoop(loopId) {
        return this.get(`/loops/${loopId}`);
    }
    appendUtterance(occasionId, body) {
        return this.post(`/occasions/${occasionId}/utterances`, body);
    }
    attachTier(utteranceId, code, content) {
        return this.post(`/utterances/${utteranceId}/tiers`, { code, content });
    }
    newEpisode(occasionId, body) {
        return this.post(`/occasions/${occasionId}/episodes`, body);
    }
    addParticipant(occasionId, contactId) {
        return this.post(`/occasions/${occasionId}/participants`, {
            contact_id: contactId,
        });
    }
    createNetwork(body) {
        return this.post("/networks", body);
    }
    network(networkId) {
        return this.get(`/networks/${networkId}`);
    }
    networkVersion(networkId, version) {
        return this.get(`/networks/${networkId}/versions/${version}`);
    }
    validSelections(networkId, version) {
        return this.get(`/networks/${networkId}/versions/${version}/selections`);
    }
    recordIndexEvent(occasionId, body) {
        return this.post(`/occasions/${occasionId}/index-events`, body);
    }
    validate(occasionId) {
        return this.get(`/occasions/${occasionId}/validate`);
    }
    reportJson(occasionId, kind) {
        return this.get(`/occasions/${occasionId}/reports/${kind}`);
    }
    async reportSvg(occasionId, kind) {
        const response = await fetch(`${this.baseUrl}/occasions/${occasionId}/reports/${kind}?format=svg`);
        if (!response.ok) {
            const err = (await response.json());
            throw new ApiCallError(response.status, err.error.code, err.error.message);
        }
        return response.text();
    }
    async exportText(occasionId, format) {
        const response = await fetch(`${this.baseUrl}/occasions/${occasionId}/export?format=${format}`);
        if (!response.ok) {
            const err = (await response.json());
            throw new ApiCallError(response.status, err.error.code, err.error.message);
        }
        return response.text();
    }
    createPlace(body) {
        return this.post("/places", body);
    }
}
