# apkwarden/services/pii/index.py
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, Mapping, Optional, Tuple

from apkwarden.domain.entities.dex import FieldRef, MethodId
from apkwarden.domain.entities.pii import PiiVariable
from apkwarden.domain.enums.pii_origin import PiiBinding

Site = Tuple[MethodId, int]


@dataclass(frozen=True)
class PiiIndex:
    """Lookup view of code-side PII variables, as consumed by the taint engine."""

    text_sites: Mapping[Site, str] = field(default_factory=dict)
    fields: Mapping[str, str] = field(default_factory=dict)
    literals: Mapping[Site, str] = field(default_factory=dict)
    method_literals: Mapping[MethodId, str] = field(default_factory=dict)

    @classmethod
    def from_variables(cls, pii: Iterable[PiiVariable]) -> "PiiIndex":
        text_sites: Dict[Site, str] = {}
        fields: Dict[str, str] = {}
        literals: Dict[Site, str] = {}
        method_literals: Dict[MethodId, str] = {}
        for v in pii:
            loc = v.location
            if v.binding == PiiBinding.ViewText and loc.method and loc.offset is not None:
                text_sites.setdefault((loc.method, loc.offset), v.matched_keyword)
            elif v.binding == PiiBinding.Field and loc.field:
                fields.setdefault(loc.field, v.matched_keyword)
            elif v.binding == PiiBinding.Literal and loc.method and loc.offset is not None:
                literals.setdefault((loc.method, loc.offset), v.matched_keyword)
                method_literals.setdefault(loc.method, v.matched_keyword)
        return cls(text_sites, fields, literals, method_literals)

    def __bool__(self) -> bool:
        return bool(self.text_sites or self.fields or self.literals)

    def text_site(self, method: MethodId, offset: int) -> Optional[str]:
        return self.text_sites.get((method, offset))

    def field_tag(self, ref: Optional[FieldRef]) -> Optional[str]:
        return self.fields.get(str(ref)) if ref is not None else None

    def literal(self, method: MethodId, offset: int) -> Optional[str]:
        return self.literals.get((method, offset))

    def method_literal(self, method: MethodId) -> Optional[str]:
        return self.method_literals.get(method)
