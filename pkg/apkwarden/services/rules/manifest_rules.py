# apkwarden/services/rules/manifest_rules.py
from __future__ import annotations

from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from apkwarden.domain.entities.manifest import ManifestModel
from apkwarden.domain.entities.rules import Finding, Location, Matcher, Rule
from apkwarden.domain.enums.launch_mode import LaunchMode
from apkwarden.services.rules.loader import default_rules

# (evidence, manifest element path)
Hit = Tuple[str, str]

_RISKY_LAUNCH_MODES = frozenset({LaunchMode.singleTask, LaunchMode.singleInstance})


def _backup(m: ManifestModel, _: Matcher) -> Iterator[Hit]:
    value = m.flags.allow_backup
    if value is None:
        yield "android:allowBackup is not set (defaults to true)", "manifest/application"
    elif value:
        yield "android:allowBackup=true", "manifest/application"


def _debuggable(m: ManifestModel, _: Matcher) -> Iterator[Hit]:
    if m.flags.debuggable:
        yield "android:debuggable=true", "manifest/application"


def _cleartext(m: ManifestModel, _: Matcher) -> Iterator[Hit]:
    flags = m.flags
    if flags.uses_cleartext_traffic:
        yield "android:usesCleartextTraffic=true", "manifest/application"
    elif flags.uses_cleartext_traffic is None and flags.network_security_config is None:
        yield (
            "android:usesCleartextTraffic is not set and no networkSecurityConfig is declared",
            "manifest/application",
        )


def _component_path(tag: str, name: str) -> str:
    return f"manifest/application/{tag}[@name={name}]"


def _launch_mode(m: ManifestModel, _: Matcher) -> Iterator[Hit]:
    for c in m.components:
        if c.launch_mode in _RISKY_LAUNCH_MODES:
            yield f"{c.name} uses launchMode={c.launch_mode}", _component_path(
                c.tag or c.kind.lower(), c.name
            )


def _unprotected(m: ManifestModel, _: Matcher) -> Iterator[Hit]:
    for c in m.components:
        if not c.effectively_exported:
            continue
        if c.permission or m.application_permission:
            continue
        why = "exported=true" if c.exported else "exported through an intent filter"
        yield (
            f"{c.kind} {c.name} is {why} without android:permission",
            _component_path(c.tag or c.kind.lower(), c.name),
        )


def _dangerous_permission(m: ManifestModel, matcher: Matcher) -> Iterator[Hit]:
    dangerous = set(matcher.params.get("permissions", ()))
    for perm in m.permissions:
        if perm in dangerous:
            yield f"requests {perm}", f"manifest/uses-permission[@name={perm}]"


CHECKS: Dict[str, Callable[[ManifestModel, Matcher], Iterator[Hit]]] = {
    "backup": _backup,
    "debuggable": _debuggable,
    "cleartext": _cleartext,
    "launch_mode": _launch_mode,
    "unprotected": _unprotected,
    "dangerous_permission": _dangerous_permission,
}


def evaluate_manifest_rules(
    m: ManifestModel, rules: Optional[Sequence[Rule]] = None
) -> List[Finding]:
    """Manifest-weakness findings for the manifest rules in ``rules`` (default: shipped set)."""
    rules = default_rules() if rules is None else rules
    findings: List[Finding] = []
    for rule in rules:
        if not rule.is_manifest:
            continue
        for matcher in rule.matchers:
            for evidence, path in CHECKS[matcher.params["check"]](m, matcher):
                findings.append(
                    Finding(
                        rule_id=rule.id,
                        category=rule.category,
                        severity=rule.severity,
                        evidence=evidence,
                        location=Location.in_manifest(path),
                    )
                )
    return sorted(set(findings), key=Finding.sort_key)
