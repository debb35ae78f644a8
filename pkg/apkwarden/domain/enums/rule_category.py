from __future__ import annotations
from enum import StrEnum


class RuleCategory(StrEnum):
    ManifestWeakness = "ManifestWeakness"
    SecurityVulnerability = "SecurityVulnerability"


class AssessmentCategory(StrEnum):
    """Report sections."""

    manifest_weaknesses = "manifest_weaknesses"
    security_vulnerabilities = "security_vulnerabilities"
    privacy_leaks = "privacy_leaks"
    malware = "malware"
