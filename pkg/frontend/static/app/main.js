// SPA wiring. All state lives in the panel classes; this file only renders
// them into the page and forwards events.
import { ApiCallError, ApiClient } from "./api.js";
import { TranscriptEditor, TERMINATORS } from "./editor.js";
import { LoopPanel } from "./loop.js";
import { committable, initPicker, pick, selectionOf, unpick, viewSystems, } from "./picker.js";
import { ReportViewer, coverageSummary, effortSummary } from "./reports.js";
import { bucketRange, drawTile, dragToSpan, pickLevel } from "./waveform.js";
const api = new ApiClient("");
function el(id) {
    const node = document.getElementById(id);
    if (!node)
        throw new Error(`missing #${id}`);
    return node;
}
function note(id, text, isError = false) {
    const node = el(id);
    node.textContent = text;
    node.className = isError ? "note error" : "note";
}
let occasionId = "";
let editor = null;
let loopPanel = null;
let picker = null;
let network = null;
let viewer = null;
let lastTile = null;
let dragStartX = null;
// -- occasion setup -----------------------------------------------------------
async function openOccasion() {
    occasionId = el("occasion-id").value.trim();
    if (!occasionId)
        return;
    editor = new TranscriptEditor(api, occasionId, undefined, renderEditor);
    loopPanel = new LoopPanel(api, occasionId, renderLoop);
    viewer = new ReportViewer(api, occasionId);
    try {
        await editor.load();
        note("occasion-note", `occasion ${occasionId} open`);
        await refreshWaveform();
        await refreshReports();
    }
    catch (err) {
        note("occasion-note", String(err), true);
    }
}
async function uploadMedia(files) {
    if (!files || files.length === 0 || !occasionId)
        return;
    const file = files[0];
    if (!file)
        return;
    try {
        await api.ingestMedia(occasionId, await file.arrayBuffer());
        note("occasion-note", "media ingested; building waveform");
        await refreshWaveform();
    }
    catch (err) {
        note("occasion-note", String(err), true);
    }
}
// -- waveform -----------------------------------------------------------------
function viewport() {
    const canvas = el("waveform");
    const duration = lastTile ? lastTile.duration_ms : 1;
    return { startMs: 0, endMs: duration, widthPx: canvas.width, heightPx: canvas.height };
}
async function refreshWaveform() {
    if (!occasionId)
        return;
    try {
        const probe = await api.waveform(occasionId, 0, 0, 1);
        if (probe.status !== "ready") {
            note("waveform-note", "waveform still building; try refresh");
            return;
        }
        lastTile = probe;
        const view = { ...viewport(), endMs: probe.duration_ms };
        const meta = {
            sampleRate: probe.sample_rate,
            totalSamples: probe.total_samples,
            baseBucket: probe.base_bucket,
            levelCount: probe.level_count,
            durationMs: probe.duration_ms,
        };
        const level = pickLevel(meta, view);
        const range = bucketRange(meta, view, level);
        const tile = await api.waveform(occasionId, level, range.from, range.count);
        lastTile = tile;
        drawTile(el("waveform"), tile, view, loopPanel?.state.loop ?? null);
        note("waveform-note", `level ${level}, ${tile.peaks.length} buckets`);
    }
    catch (err) {
        if (err instanceof ApiCallError && err.status === 404) {
            note("waveform-note", "no media ingested yet");
        }
        else {
            note("waveform-note", String(err), true);
        }
    }
}
function onWaveformMouse(event, kind) {
    if (!lastTile)
        return;
    const canvas = el("waveform");
    const x = event.clientX - canvas.getBoundingClientRect().left;
    if (kind === "down") {
        dragStartX = x;
        return;
    }
    if (dragStartX === null)
        return;
    const span = dragToSpan(dragStartX, x, viewport(), lastTile.duration_ms);
    dragStartX = null;
    if (span && loopPanel) {
        const offset = Math.max(1, Math.round((span.end_ms - span.start_ms) / 2));
        void loopPanel
            .create(span.start_ms, span.end_ms - span.start_ms, offset)
            .then(() => refreshWaveform());
    }
}
// -- loop panel ----------------------------------------------------------------
function renderLoop() {
    const state = loopPanel?.state;
    const status = el("loop-status");
    if (!state || !state.loop) {
        status.textContent = "no loop; drag on the waveform or use the form";
        el("loop-advance").disabled = true;
        return;
    }
    const loop = state.loop;
    status.textContent =
        `loop [${loop.span.start_ms}, ${loop.span.end_ms}) ms, offset ${loop.offset_ms}` +
            (state.atEnd ? " - at end" : "") +
            (state.playing ? " - playing" : "");
    el("loop-advance").disabled = !loopPanel?.advanceEnabled();
    void refreshWaveform();
}
async function createLoopFromForm() {
    if (!loopPanel)
        return;
    const start = Number(el("loop-start").value);
    const duration = Number(el("loop-duration").value);
    const offset = Number(el("loop-offset").value);
    try {
        await loopPanel.create(start, duration, offset);
    }
    catch (err) {
        note("loop-note", String(err), true);
    }
}
// -- picker ----------------------------------------------------------------------
async function loadNetwork() {
    const id = el("network-id").value.trim();
    try {
        network = await api.network(id);
        const head = network.versions[network.versions.length - 1];
        picker = initPicker(head ? head.systems : []);
        renderPicker();
        note("picker-note", `network ${id} v${network.head_version} loaded`);
    }
    catch (err) {
        note("picker-note", String(err), true);
    }
}
function renderPicker() {
    const host = el("picker-systems");
    host.textContent = "";
    if (!picker)
        return;
    for (const system of viewSystems(picker)) {
        const group = document.createElement("fieldset");
        group.disabled = !system.entered;
        const legend = document.createElement("legend");
        legend.textContent = `${system.name} (entry: ${system.entryText})`;
        group.appendChild(legend);
        for (const option of system.options) {
            const label = document.createElement("label");
            const radio = document.createElement("input");
            radio.type = "radio";
            radio.name = `sys-${system.name}`;
            radio.checked = option.selected;
            radio.disabled = !option.enabled;
            radio.addEventListener("change", () => {
                if (!picker)
                    return;
                const next = pick(picker, system.name, option.name);
                if (next)
                    picker = next;
                renderPicker();
            });
            label.appendChild(radio);
            label.appendChild(document.createTextNode(option.name));
            group.appendChild(label);
        }
        if (system.picked) {
            const clear = document.createElement("button");
            clear.textContent = "clear";
            clear.addEventListener("click", () => {
                if (!picker)
                    return;
                picker = unpick(picker, system.name);
                renderPicker();
            });
            group.appendChild(clear);
        }
        host.appendChild(group);
    }
    el("picker-commit").disabled = !committable(picker);
}
async function commitSelection() {
    if (!picker || !network || !occasionId || !loopPanel?.state.loop) {
        note("picker-note", "need an open occasion, a network, and an active loop", true);
        return;
    }
    try {
        const event = await api.recordIndexEvent(occasionId, {
            network_id: network.network_id,
            version: network.head_version,
            selection: selectionOf(picker),
            loop_id: loopPanel.state.loop.loop_id,
        });
        note("picker-note", `event ${event.event_id} committed over [${event.span.start_ms}, ${event.span.end_ms})`);
        picker = initPicker(network.versions[network.versions.length - 1]?.systems ?? []);
        renderPicker();
        await refreshReports();
    }
    catch (err) {
        note("picker-note", String(err), true);
    }
}
// -- transcript editor --------------------------------------------------------------
function renderEditor() {
    if (!editor)
        return;
    const speakerSelect = el("utt-speaker");
    speakerSelect.textContent = "";
    for (const code of editor.speakerChoices()) {
        const option = document.createElement("option");
        option.value = code;
        option.textContent = code;
        speakerSelect.appendChild(option);
    }
    const tierSelect = el("tier-code");
    tierSelect.textContent = "";
    for (const code of editor.tierChoices()) {
        const option = document.createElement("option");
        option.value = code;
        option.textContent = `%${code}`;
        tierSelect.appendChild(option);
    }
    const uttSelect = el("tier-utterance");
    uttSelect.textContent = "";
    for (const id of editor.utteranceChoices()) {
        const option = document.createElement("option");
        option.value = id;
        option.textContent = id;
        uttSelect.appendChild(option);
    }
    note("editor-note", `${editor.state.utteranceCount} utterances in ${editor.state.episodeCount} episode(s)` +
        (editor.state.lastError ? ` - last error ${editor.state.lastError}` : ""));
    void renderTranscript();
}
async function renderTranscript() {
    if (!occasionId)
        return;
    try {
        el("transcript").textContent = await api.exportText(occasionId, "chat");
    }
    catch {
        el("transcript").textContent = "";
    }
}
async function submitUtterance() {
    if (!editor)
        return;
    const speaker = el("utt-speaker").value;
    const text = el("utt-text").value;
    const terminator = el("utt-terminator").value;
    const useLoop = el("utt-use-loop").checked && loopPanel?.state.loop;
    await editor.appendUtterance(speaker, text, terminator, useLoop && loopPanel?.state.loop ? { loopId: loopPanel.state.loop.loop_id } : undefined);
    el("utt-text").value = "";
}
async function submitTier() {
    if (!editor)
        return;
    await editor.attachTier(el("tier-utterance").value, el("tier-code").value, el("tier-content").value);
    el("tier-content").value = "";
}
// -- reports ----------------------------------------------------------------------------
async function refreshReports() {
    if (!viewer)
        return;
    try {
        const coverage = await viewer.coverage();
        const effort = await viewer.effort();
        note("report-note", `${coverageSummary(coverage)}; ${effortSummary(effort)}`);
        el("report-svg").innerHTML = await viewer.timelineSvg("coverage");
    }
    catch (err) {
        if (err instanceof ApiCallError && err.code === "NO_MEDIA") {
            note("report-note", "reports appear once media is ingested");
        }
        else {
            note("report-note", String(err), true);
        }
    }
}
function downloadExport(format) {
    if (!occasionId || !viewer)
        return;
    void api.exportText(occasionId, format).then((text) => {
        const mime = format === "chat" ? "text/plain" : "application/xml";
        const url = viewer.downloadUrl(text, mime);
        const a = document.createElement("a");
        a.href = url;
        a.download = format === "chat" ? `${occasionId}.cha` : `${occasionId}.xml`;
        a.click();
        URL.revokeObjectURL(url);
    });
}
// -- bootstrap -------------------------------------------------------------------------------
export function install() {
    const terminatorSelect = el("utt-terminator");
    for (const t of TERMINATORS) {
        const option = document.createElement("option");
        option.value = t;
        option.textContent = t;
        terminatorSelect.appendChild(option);
    }
    el("occasion-open").addEventListener("click", () => void openOccasion());
    el("media-file").addEventListener("change", (e) => void uploadMedia(e.target.files));
    el("waveform-refresh").addEventListener("click", () => void refreshWaveform());
    const canvas = el("waveform");
    canvas.addEventListener("mousedown", (e) => onWaveformMouse(e, "down"));
    canvas.addEventListener("mouseup", (e) => onWaveformMouse(e, "up"));
    el("loop-create").addEventListener("click", () => void createLoopFromForm());
    el("loop-advance").addEventListener("click", () => void loopPanel?.advance());
    el("loop-play").addEventListener("click", () => loopPanel?.togglePlay());
    document.addEventListener("keydown", (e) => {
        if (e.target instanceof HTMLInputElement || e.target instanceof HTMLSelectElement)
            return;
        void loopPanel?.onKey(e.key);
    });
    el("network-load").addEventListener("click", () => void loadNetwork());
    el("picker-commit").addEventListener("click", () => void commitSelection());
    el("utt-submit").addEventListener("click", () => void submitUtterance());
    el("tier-submit").addEventListener("click", () => void submitTier());
    el("episode-submit").addEventListener("click", () => void editor?.newEpisode([]));
    el("report-refresh").addEventListener("click", () => void refreshReports());
    el("download-chat").addEventListener("click", () => downloadExport("chat"));
    el("download-xml").addEventListener("click", () => downloadExport("sla-xml"));
}
if (typeof document !== "undefined" && document.getElementById("occasion-open")) {
    install();
}
