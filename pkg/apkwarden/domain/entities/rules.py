# apkwarden/domain/entities/rules.py
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Mapping, Optional, Tuple

from apkwarden.domain.entities.dex import MethodId, MethodRef
from apkwarden.domain.entities.patterns import MethodPattern
from apkwarden.domain.enums.rule_category import RuleCategory
from apkwarden.domain.enums.severity import Severity

MATCHER_KINDS = frozenset(
    {
        "invoke",
        "invoke_const_arg",
        "invoke_nonconst_arg",
        "invoke_const_derived_arg",
        "invoke_result_flows",
        "const_string_regex",
        "manifest",
    }
)


@dataclass(frozen=True)
class Matcher:
    """Declarative matcher; ``params`` holds the kind-specific keys from the rules file."""

    kind: str
    methods: Tuple[MethodPattern, ...] = ()
    params: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.kind not in MATCHER_KINDS:
            raise ValueError(f"unknown matcher kind: {self.kind!r}")

    # hash by identity of the declaration, params is a plain dict
    def __hash__(self) -> int:
        return hash((self.kind, self.methods))


@dataclass(frozen=True)
class Rule:
    id: str
    category: RuleCategory
    severity: Severity
    matchers: Tuple[Matcher, ...]
    description: str = ""
    requires_pii: bool = False

    def __post_init__(self) -> None:
        if not self.matchers:
            raise ValueError(f"rule {self.id}: at least one matcher is required")
        manifest = {m.kind == "manifest" for m in self.matchers}
        if len(manifest) > 1:
            raise ValueError(f"rule {self.id}: manifest matchers cannot mix with code matchers")

    @property
    def is_manifest(self) -> bool:
        return self.matchers[0].kind == "manifest"

    def __hash__(self) -> int:
        return hash(self.id)


@dataclass(frozen=True)
class Location:
    """Code site (entry, class, method, offset) or a manifest element path."""

    entry: str
    class_descriptor: Optional[str] = None
    method: Optional[str] = None
    offset: Optional[int] = None
    manifest_path: Optional[str] = None

    @classmethod
    def in_code(cls, method: MethodId, offset: Optional[int]) -> "Location":
        return cls(
            entry=method.provenance or "",
            class_descriptor=method.class_descriptor,
            method=method.signature,
            offset=offset,
        )

    @classmethod
    def in_manifest(cls, path: str) -> "Location":
        return cls(entry="AndroidManifest.xml", manifest_path=path)

    def sort_key(self) -> tuple:
        return (
            self.entry,
            self.manifest_path or "",
            self.class_descriptor or "",
            self.method or "",
            -1 if self.offset is None else self.offset,
        )

    def __str__(self) -> str:
        if self.manifest_path is not None:
            return f"{self.entry}:{self.manifest_path}"
        off = f"@0x{self.offset:x}" if self.offset is not None else ""
        return f"{self.entry}:{self.class_descriptor}->{self.method}{off}"


@dataclass(frozen=True)
class Candidate:
    """A matcher hit before reachability/PII confirmation."""

    rule: Rule
    method: MethodId
    site: Optional[int]
    evidence: str
    callee: Optional[MethodRef] = None
    arg_registers: Tuple[int, ...] = ()

    @property
    def location(self) -> Location:
        return Location.in_code(self.method, self.site)


@dataclass(frozen=True)
class Finding:
    rule_id: str
    category: RuleCategory
    severity: Severity
    evidence: str
    location: Location
    pii_tag: Optional[str] = None
    confirmed_called: bool = False

    def sort_key(self) -> tuple:
        return (self.rule_id, self.location.sort_key(), self.evidence)
