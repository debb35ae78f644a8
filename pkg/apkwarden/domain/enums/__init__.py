from apkwarden.domain.enums.channel import Channel, SourceKind
from apkwarden.domain.enums.component_kind import ComponentKind
from apkwarden.domain.enums.entry_kind import EntryKind
from apkwarden.domain.enums.flow_status import FlowStatus
from apkwarden.domain.enums.invoke_kind import InvokeKind
from apkwarden.domain.enums.launch_mode import LaunchMode
from apkwarden.domain.enums.pii_origin import PiiBinding, PiiOrigin
from apkwarden.domain.enums.rule_category import AssessmentCategory, RuleCategory
from apkwarden.domain.enums.severity import Severity
from apkwarden.domain.enums.verdict_source import VerdictSource

__all__ = [
    "AssessmentCategory",
    "Channel",
    "ComponentKind",
    "EntryKind",
    "FlowStatus",
    "InvokeKind",
    "LaunchMode",
    "PiiBinding",
    "PiiOrigin",
    "RuleCategory",
    "Severity",
    "SourceKind",
    "VerdictSource",
]
