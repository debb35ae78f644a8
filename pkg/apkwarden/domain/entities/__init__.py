from apkwarden.domain.entities.apk import ApkArchive, ApkEntry
from apkwarden.domain.entities.dex import (
    ClassDef,
    DexFile,
    FieldRef,
    Instruction,
    Invocation,
    MethodBody,
    MethodId,
    MethodRef,
    Prototype,
)
from apkwarden.domain.entities.manifest import Component, ManifestFlags, ManifestModel
from apkwarden.domain.entities.patterns import MethodPattern
from apkwarden.domain.entities.report import ApkInfo, ReportMeta, ScanReport
from apkwarden.domain.entities.pii import (
    EmbeddingStore,
    KeywordDatabase,
    PiiLocation,
    PiiVariable,
    Synonym,
)
from apkwarden.domain.entities.rules import Candidate, Finding, Location, Matcher, Rule
from apkwarden.domain.entities.taint import (
    CallEdge,
    FlowEndpoint,
    FlowPath,
    TaintLabel,
    TaintPattern,
    TaintSpec,
)
from apkwarden.domain.entities.trackers import MalwareVerdict, TrackerMatch, TrackerSignature
from apkwarden.domain.entities.warnings import ScanWarning
from apkwarden.domain.entities.widget import WidgetDecl
from apkwarden.domain.entities.xml import (
    ResourceRef,
    TypedValue,
    ValueType,
    XmlAttribute,
    XmlDocument,
    XmlElement,
)

__all__ = [
    "ApkArchive",
    "ApkEntry",
    "ApkInfo",
    "CallEdge",
    "Candidate",
    "ClassDef",
    "Component",
    "DexFile",
    "EmbeddingStore",
    "FieldRef",
    "Finding",
    "FlowEndpoint",
    "FlowPath",
    "Instruction",
    "Invocation",
    "KeywordDatabase",
    "Location",
    "MalwareVerdict",
    "ManifestFlags",
    "ManifestModel",
    "Matcher",
    "MethodBody",
    "MethodId",
    "MethodPattern",
    "MethodRef",
    "PiiLocation",
    "PiiVariable",
    "Prototype",
    "ReportMeta",
    "ResourceRef",
    "Rule",
    "ScanReport",
    "ScanWarning",
    "Synonym",
    "TaintLabel",
    "TaintPattern",
    "TaintSpec",
    "TrackerMatch",
    "TrackerSignature",
    "TypedValue",
    "ValueType",
    "WidgetDecl",
    "XmlAttribute",
    "XmlDocument",
    "XmlElement",
]
