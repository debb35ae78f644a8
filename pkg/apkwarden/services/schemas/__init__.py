from apkwarden.services.schemas.keywords import KeywordDatabaseExport, SynonymSchema
from apkwarden.services.schemas.report import (
    SCHEMA_VERSION,
    ApkInfoSchema,
    CallEdgeSchema,
    CorpusFailureSchema,
    CorpusStatsSchema,
    ErrorDetailSchema,
    ErrorReportSchema,
    FindingSchema,
    FlowEndpointSchema,
    FlowSchema,
    LocationSchema,
    MalwareVerdictSchema,
    MatrixCellSchema,
    MetaSchema,
    MethodSchema,
    ScanReportSchema,
    SummarySchema,
    TrackerSchema,
    WarningSchema,
)

__all__ = [
    "SCHEMA_VERSION",
    "ApkInfoSchema",
    "CallEdgeSchema",
    "CorpusFailureSchema",
    "CorpusStatsSchema",
    "ErrorDetailSchema",
    "ErrorReportSchema",
    "FindingSchema",
    "FlowEndpointSchema",
    "FlowSchema",
    "KeywordDatabaseExport",
    "LocationSchema",
    "MalwareVerdictSchema",
    "MatrixCellSchema",
    "MetaSchema",
    "MethodSchema",
    "ScanReportSchema",
    "SummarySchema",
    "SynonymSchema",
    "TrackerSchema",
    "WarningSchema",
]
