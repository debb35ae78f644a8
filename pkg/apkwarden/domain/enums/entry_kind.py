from __future__ import annotations
from enum import StrEnum


class EntryKind(StrEnum):
    Manifest = "Manifest"
    Dex = "Dex"
    LayoutXml = "LayoutXml"
    ResourceTable = "ResourceTable"
    Other = "Other"
