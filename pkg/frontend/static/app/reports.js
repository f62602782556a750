// Report viewer: numeric summaries plus the server-rendered SVG timeline,
// with client-side download links for deliverables.
export function coverageSummary(report) {
    const pct = (report.coverage_ratio * 100).toFixed(1);
    return `${report.covered_ms} of ${report.duration_ms} ms indexed (${pct}%)`;
}
export function effortSummary(report) {
    const [tLow, tHigh] = report.transcription_minutes;
    const [iLow, iHigh] = report.indexing_minutes;
    return (`record ${report.record_minutes.toFixed(1)} min; ` +
        `transcription ${tLow.toFixed(1)}-${tHigh.toFixed(1)} min; ` +
        `indexing ${iLow.toFixed(1)}-${iHigh.toFixed(1)} min`);
}
export class ReportViewer {
    constructor(api, occasionId) {
        this.api = api;
        this.occasionId = occasionId;
    }
    async coverage() {
        return (await this.api.reportJson(this.occasionId, "coverage"));
    }
    async effort() {
        return (await this.api.reportJson(this.occasionId, "effort"));
    }
    async timelineSvg(kind) {
        return this.api.reportSvg(this.occasionId, kind);
    }
    /** Object URL for a download button; caller revokes after use. */
    downloadUrl(content, mime) {
        return URL.createObjectURL(new Blob([content], { type: mime }));
    }
}
