// Report viewer: numeric summaries plus the server-rendered SVG timeline,
// with client-side download links for deliverables.

import { ApiClient } from "./api.js";

export interface CoverageJson {
  kind: string;
  duration_ms: number;
  covered_ms: number;
  coverage_ratio: number;
  intervals: [number, number][];
  networks: { network_id: string; covered_ms: number; intervals: [number, number][] }[];
}

export interface EffortJson {
  kind: string;
  record_minutes: number;
  transcription_minutes: [number, number];
  indexing_minutes: [number, number];
}

export function coverageSummary(report: CoverageJson): string {
  const pct = (report.coverage_ratio * 100).toFixed(1);
  return `${report.covered_ms} of ${report.duration_ms} ms indexed (${pct}%)`;
}

export function effortSummary(report: EffortJson): string {
  const [tLow, tHigh] = report.transcription_minutes;
  const [iLow, iHigh] = report.indexing_minutes;
  return (
    `record ${report.record_minutes.toFixed(1)} min; ` +
    `transcription ${tLow.toFixed(1)}-${tHigh.toFixed(1)} min; ` +
    `indexing ${iLow.toFixed(1)}-${iHigh.toFixed(1)} min`
  );
}

export class ReportViewer {
  constructor(
    private api: ApiClient,
    private occasionId: string,
  ) {}

  async coverage(): Promise<CoverageJson> {
    return (await this.api.reportJson(this.occasionId, "coverage")) as CoverageJson;
  }

  async effort(): Promise<EffortJson> {
    return (await this.api.reportJson(this.occasionId, "effort")) as EffortJson;
  }

  async timelineSvg(kind: "coverage" | "locations"): Promise<string> {
    return this.api.reportSvg(this.occasionId, kind);
  }

  /** Object URL for a download button; caller revokes after use. */
  downloadUrl(content: string, mime: string): string {
    return URL.createObjectURL(new Blob([content], { type: mime }));
  }
}
