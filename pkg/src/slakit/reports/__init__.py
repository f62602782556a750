"""Indexing deliverables: coverage, code locations, effort estimates, SVG."""

from slakit.reports.reports import (
    CoverageReport,
    EffortEstimate,
    LocationReport,
    NetworkCoverage,
    OptionLocation,
    ReportError,
    code_location_report,
    coverage_report,
    effort_estimate,
    report_to_json,
    union_intervals,
)
from slakit.reports.svg import render_timeline_svg

__all__ = [
    "CoverageReport",
    "EffortEstimate",
    "LocationReport",
    "NetworkCoverage",
    "OptionLocation",
    "ReportError",
    "code_location_report",
    "coverage_report",
    "effort_estimate",
    "report_to_json",
    "union_intervals",
    "render_timeline_svg",
]
