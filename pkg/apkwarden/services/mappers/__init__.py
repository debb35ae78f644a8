from apkwarden.services.mappers.report import (
    category_counts,
    from_flow_schema,
    from_verdict_schema,
    to_error_detail,
    to_error_report,
    to_finding_schema,
    to_flow_schema,
    to_report_schema,
    to_summary_schema,
    to_tracker_schema,
    to_verdict_schema,
)

__all__ = [
    "category_counts",
    "from_flow_schema",
    "from_verdict_schema",
    "to_error_detail",
    "to_error_report",
    "to_finding_schema",
    "to_flow_schema",
    "to_report_schema",
    "to_summary_schema",
    "to_tracker_schema",
    "to_verdict_schema",
]
