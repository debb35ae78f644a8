# apkwarden/domain/entities/taint.py
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Tuple, Union

from apkwarden.domain.entities.dex import MethodId, MethodRef
from apkwarden.domain.entities.patterns import MethodPattern
from apkwarden.domain.enums.channel import Channel, SourceKind
from apkwarden.domain.enums.flow_status import FlowStatus


@dataclass(frozen=True)
class TaintPattern:
    role: str  # "source" | "sink"
    label: Union[Channel, SourceKind]
    pattern: MethodPattern
    line: int = 0

    def matches(self, ref: MethodRef, ancestors=()) -> bool:
        return self.pattern.matches(ref, ancestors)

    def __str__(self) -> str:
        return str(self.pattern)


@dataclass(frozen=True)
class TaintSpec:
    sources: Tuple[TaintPattern, ...] = ()
    sinks: Tuple[TaintPattern, ...] = ()

    def __len__(self) -> int:
        return len(self.sources) + len(self.sinks)

    def source_for(self, ref: MethodRef, ancestors=()) -> Optional[TaintPattern]:
        for p in self.sources:
            if p.matches(ref, ancestors):
                return p
        return None

    def sink_for(self, ref: MethodRef, ancestors=()) -> Optional[TaintPattern]:
        for p in self.sinks:
            if p.matches(ref, ancestors):
                return p
        return None


@dataclass(frozen=True, order=True)
class CallEdge:
    caller: MethodId
    callee: MethodId
    site: int

    def __str__(self) -> str:
        return f"{self.caller} -[0x{self.site:x}]-> {self.callee}"


@dataclass(frozen=True, order=True)
class FlowEndpoint:
    method: MethodId
    site: int
    pattern: str
    label: str


@dataclass(frozen=True)
class FlowPath:
    source: FlowEndpoint
    sink: FlowEndpoint
    call_chain: Tuple[CallEdge, ...] = ()
    pii_tag: Optional[str] = None
    status: FlowStatus = FlowStatus.Candidate

    @property
    def channel(self) -> str:
        return self.sink.label

    def sort_key(self) -> tuple:
        return (self.source, self.sink, len(self.call_chain), self.call_chain, self.pii_tag or "")


@dataclass(frozen=True)
class TaintLabel:
    """A fact "this value came from ``source``" plus the call edges crossed since then."""

    source: FlowEndpoint
    kind: SourceKind
    pii_tag: Optional[str] = None
    chain: Tuple[CallEdge, ...] = field(default=())
