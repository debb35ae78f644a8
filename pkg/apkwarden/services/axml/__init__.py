from apkwarden.services.axml.errors import (
    AxmlError,
    BadMagic,
    NotAManifest,
    StringIndexOutOfRange,
    TruncatedChunk,
    UnbalancedElements,
)
from apkwarden.services.axml.layout import DEFAULT_WIDGET_SUFFIXES, extract_layout_widgets
from apkwarden.services.axml.manifest import extract_manifest
from apkwarden.services.axml.parser import parse_axml

__all__ = [
    "parse_axml",
    "extract_manifest",
    "extract_layout_widgets",
    "DEFAULT_WIDGET_SUFFIXES",
    "AxmlError",
    "BadMagic",
    "TruncatedChunk",
    "StringIndexOutOfRange",
    "UnbalancedElements",
    "NotAManifest",
]
