# apkwarden/services/pii/binding.py
from __future__ import annotations

import re
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from apkwarden.common.logging import get_logger
from apkwarden.domain.entities.dex import DexFile, MethodBody, MethodId
from apkwarden.domain.entities.pii import KeywordDatabase, PiiLocation, PiiVariable
from apkwarden.domain.enums.pii_origin import PiiBinding, PiiOrigin
from apkwarden.services.dex.code import decode_code
from apkwarden.services.dex.dataflow import (
    ReachingDefinitions,
    argument_registers,
    result_register,
)
from apkwarden.services.dex.parser import resource_id_names
from apkwarden.services.dex.program import Program
from apkwarden.services.pii.matcher import KeywordTokens, keyword_tokens, match_identifier

log = get_logger(__name__)

VIEW_LOOKUPS = frozenset({"findViewById", "requireViewById"})
TEXT_GETTERS = frozenset({"getText", "getEditableText"})

_IGET_OBJECT = 0x54
_SGET_OBJECT = 0x62
_IPUT_OBJECT = 0x5B
_SPUT_OBJECT = 0x69
_IDENTIFIER_LIKE = re.compile(r"^[A-Za-z][A-Za-z0-9_ ]{0,63}$")
_R_CLASS = re.compile(r"/R(\$[a-z]+)?;$")
_FIELD_ROUNDS = 3


def _bodies(dex: DexFile, program: Optional[Program]) -> List[Tuple[MethodId, MethodBody]]:
    out = []
    for cls in dex.classes:
        for m in cls.methods:
            if not m.has_code:
                continue
            mid = MethodId.of(dex.provenance, m.ref)
            body = program.body(mid) if program is not None else None
            out.append((mid, body if body is not None else decode_code(dex, m)))
    return out


def _ids_of_widgets(
    pii: Sequence[PiiVariable], id_names: Mapping[int, str]
) -> Dict[int, PiiVariable]:
    by_name = {name: rid for rid, name in id_names.items()}
    out: Dict[int, PiiVariable] = {}
    for v in pii:
        if v.is_code:
            continue
        rid = v.resource_id
        if rid is None and v.origin == PiiOrigin.WidgetId:
            rid = by_name.get(v.identifier)
        if rid is not None:
            out.setdefault(rid, v)
    return out


class _ViewBinder:
    """Follows views looked up by a PII widget id to the text-getter calls made on them."""

    def __init__(
        self,
        dex: DexFile,
        bodies: List[Tuple[MethodId, MethodBody]],
        ids: Dict[int, PiiVariable],
    ):
        self.dex = dex
        self.bodies = bodies
        self.ids = ids
        self.view_fields: Dict[str, PiiVariable] = {}
        self.sites: Dict[Tuple[MethodId, int], PiiVariable] = {}

    def run(self) -> List[PiiVariable]:
        for _ in range(_FIELD_ROUNDS):
            known = len(self.view_fields)
            for mid, body in self.bodies:
                self._method(mid, body)
            if len(self.view_fields) == known:
                break
        return list(self.sites.values())

    def _relevant(self, body: MethodBody) -> bool:
        for ins in body.instructions:
            if ins.is_invoke and ins.method is not None and ins.method.name in VIEW_LOOKUPS:
                return True
            if ins.opcode in (_IGET_OBJECT, _SGET_OBJECT) and str(ins.field) in self.view_fields:
                return True
        return False

    def _seeds(
        self, body: MethodBody, rd: ReachingDefinitions
    ) -> Iterator[Tuple[int, int, PiiVariable]]:
        for ins in body.instructions:
            if ins.is_invoke and ins.method is not None and ins.method.name in VIEW_LOOKUPS:
                args = argument_registers(ins)
                res = result_register(body, ins)
                if not args or res is None:
                    continue
                for value in rd.constant_values(ins.offset, args[-1]) or ():
                    var = self.ids.get(value) if isinstance(value, int) else None
                    if var is not None:
                        yield ins.next_offset, res, var
                        break
            elif ins.opcode in (_IGET_OBJECT, _SGET_OBJECT) and ins.field is not None:
                var = self.view_fields.get(str(ins.field))
                if var is not None:
                    yield ins.offset, ins.registers[0], var

    def _method(self, mid: MethodId, body: MethodBody) -> None:
        if not self._relevant(body):
            return
        rd = ReachingDefinitions(body)
        work = list(self._seeds(body, rd))
        seen = set()
        while work:
            d, reg, var = work.pop()
            if (d, reg) in seen:
                continue
            seen.add((d, reg))
            for use in rd.uses_of(d, reg):
                op = use.opcode
                if 0x01 <= op <= 0x09:
                    work.append((use.offset, use.registers[0], var))
                elif use.is_invoke and use.method is not None and use.method.name in TEXT_GETTERS:
                    if argument_registers(use)[:1] == [reg]:
                        self.sites.setdefault(
                            (mid, use.offset),
                            PiiVariable(
                                origin=PiiOrigin.CodeIdentifier,
                                matched_keyword=var.matched_keyword,
                                identifier=var.identifier,
                                location=PiiLocation(self.dex.provenance, mid, use.offset),
                                resource_id=var.resource_id,
                                binding=PiiBinding.ViewText,
                            ),
                        )
                elif op in (_IPUT_OBJECT, _SPUT_OBJECT) and use.registers[0] == reg and use.field:
                    self.view_fields.setdefault(str(use.field), var)


def _named_fields(dex: DexFile, keywords: KeywordTokens) -> Iterator[PiiVariable]:
    for cls in dex.classes:
        if _R_CLASS.search(cls.descriptor):
            continue
        for f in cls.fields:
            kw = match_identifier(f.ref.name, keywords)
            if kw is not None:
                yield PiiVariable(
                    origin=PiiOrigin.CodeIdentifier,
                    matched_keyword=kw,
                    identifier=f.ref.name,
                    location=PiiLocation(entry=dex.provenance, field=str(f.ref)),
                    binding=PiiBinding.Field,
                )


def _named_literals(
    dex: DexFile, bodies: List[Tuple[MethodId, MethodBody]], keywords: KeywordTokens
) -> Iterator[PiiVariable]:
    for mid, body in bodies:
        for ins in body.instructions:
            s = ins.string
            if s is None or not _IDENTIFIER_LIKE.match(s):
                continue
            kw = match_identifier(s, keywords)
            if kw is not None:
                yield PiiVariable(
                    origin=PiiOrigin.CodeIdentifier,
                    matched_keyword=kw,
                    identifier=s,
                    location=PiiLocation(dex.provenance, mid, ins.offset),
                    binding=PiiBinding.Literal,
                )


def _sort_key(v: PiiVariable) -> tuple:
    loc = v.location
    return (
        v.binding.value if v.binding else "",
        loc.entry,
        str(loc.method) if loc.method else "",
        -1 if loc.offset is None else loc.offset,
        loc.field or "",
        v.identifier,
    )


def bind_pii_to_code(
    dex: DexFile,
    pii: Sequence[PiiVariable],
    *,
    keywords: KeywordDatabase | Iterable[str] | None = None,
    id_names: Optional[Mapping[int, str]] = None,
    program: Optional[Program] = None,
) -> List[PiiVariable]:
    """
    Extend ``pii`` with code-side variables of one DEX file:

    - text-getter calls on views looked up (``findViewById``) with the resource id of a PII
      widget, directly or through a field the view was stored in;
    - fields and identifier-like string literals whose tokens contain a keyword.

    ``keywords`` defaults to the keywords already matched in ``pii``; ``id_names`` (compiled
    id -> name) defaults to this DEX file's ``R$id`` values.
    """
    if keywords is None:
        kw_list: Iterable[str] = dict.fromkeys(v.matched_keyword for v in pii)
    elif isinstance(keywords, KeywordDatabase):
        kw_list = keywords.keywords
    else:
        kw_list = keywords
    tokens = keyword_tokens(kw_list)
    names = id_names if id_names is not None else resource_id_names([dex])
    bodies = _bodies(dex, program)

    added: List[PiiVariable] = []
    ids = _ids_of_widgets(pii, names)
    if ids:
        added.extend(_ViewBinder(dex, bodies, ids).run())
    if tokens:
        added.extend(_named_fields(dex, tokens))
        added.extend(_named_literals(dex, bodies, tokens))
    log.debug("%s: %d code-side PII variables", dex.provenance, len(added))
    return list(pii) + sorted(set(added), key=_sort_key)
