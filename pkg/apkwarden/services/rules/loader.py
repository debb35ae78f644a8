# apkwarden/services/rules/loader.py
from __future__ import annotations

import re
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, List, Mapping, Tuple

import yaml

from apkwarden.common.settings import PACKAGE_DATA
from apkwarden.domain.entities.patterns import MethodPattern
from apkwarden.domain.entities.rules import MATCHER_KINDS, Matcher, Rule
from apkwarden.domain.enums.rule_category import RuleCategory
from apkwarden.domain.enums.severity import Severity
from apkwarden.domain.errors import DataFileError

MANIFEST_CHECKS = frozenset(
    {"backup", "debuggable", "cleartext", "launch_mode", "unprotected", "dangerous_permission"}
)
_ARG_KINDS = frozenset({"invoke_const_arg", "invoke_nonconst_arg", "invoke_const_derived_arg"})


def _patterns(raw: Any, key: str) -> Tuple[MethodPattern, ...]:
    if isinstance(raw, str):
        raw = [raw]
    if not isinstance(raw, list) or not raw:
        raise ValueError(f"'{key}' must be a non-empty list of method patterns")
    return tuple(MethodPattern.parse(str(p)) for p in raw)


def _matcher(raw: Mapping[str, Any]) -> Matcher:
    if not isinstance(raw, Mapping):
        raise ValueError("matcher must be a mapping")
    kind = str(raw.get("kind", ""))
    if kind not in MATCHER_KINDS:
        raise ValueError(f"unknown matcher kind: {kind!r}")
    params: Dict[str, Any] = {k: v for k, v in raw.items() if k not in ("kind", "methods")}
    methods: Tuple[MethodPattern, ...] = ()
    if kind == "manifest":
        check = params.get("check")
        if check not in MANIFEST_CHECKS:
            raise ValueError(f"unknown manifest check: {check!r}")
        if check == "dangerous_permission":
            params["permissions"] = tuple(str(p) for p in params.get("permissions") or ())
            if not params["permissions"]:
                raise ValueError("dangerous_permission needs a 'permissions' list")
    elif kind == "const_string_regex":
        params["regex"] = re.compile(str(params.get("regex", "")))
        params["exclude"] = frozenset(str(x) for x in params.get("exclude") or ())
    else:
        methods = _patterns(raw.get("methods"), "methods")
        if kind in _ARG_KINDS:
            arg = params.get("arg", 0)
            if not isinstance(arg, int) or arg < 0:
                raise ValueError("'arg' must be a non-negative integer")
            params["arg"] = arg
        if "regex" in params:
            params["regex"] = re.compile(str(params["regex"]))
        if "values" in params:
            params["values"] = tuple(params["values"] or ())
        if kind == "invoke_result_flows":
            params["to"] = _patterns(params.get("to"), "to")
            params["through"] = frozenset(str(n) for n in params.get("through") or ())
    return Matcher(kind=kind, methods=methods, params=params)


def _rule(raw: Mapping[str, Any]) -> Rule:
    rid = str(raw.get("id") or "").strip()
    if not rid:
        raise ValueError("rule without an id")
    try:
        matchers = tuple(_matcher(m) for m in raw.get("matchers") or ())
        return Rule(
            id=rid,
            category=RuleCategory(raw.get("category")),
            severity=Severity(raw.get("severity")),
            matchers=matchers,
            description=str(raw.get("description") or ""),
            requires_pii=bool(raw.get("requires_pii", False)),
        )
    except (ValueError, re.error) as e:
        raise ValueError(f"rule {rid}: {e}") from None


def parse_rules(raw: Any, *, source: str = "<rules>") -> List[Rule]:
    if not isinstance(raw, Mapping) or not isinstance(raw.get("rules"), list):
        raise DataFileError("rules file must be a mapping with a 'rules' list", entry=source)
    if raw.get("version", 1) != 1:
        raise DataFileError(f"unsupported rules file version {raw.get('version')!r}", entry=source)
    rules: List[Rule] = []
    seen = set()
    for i, entry in enumerate(raw["rules"]):
        try:
            rule = _rule(entry if isinstance(entry, Mapping) else {})
        except ValueError as e:
            raise DataFileError(f"record {i}: {e}", entry=source) from None
        if rule.id in seen:
            raise DataFileError(f"duplicate rule id {rule.id}", entry=source)
        seen.add(rule.id)
        rules.append(rule)
    return rules


def load_rules(path: Path | str) -> List[Rule]:
    p = Path(path)
    try:
        raw = yaml.safe_load(p.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise DataFileError("rules file not found", entry=str(p)) from None
    except yaml.YAMLError as e:
        raise DataFileError(f"invalid YAML: {e}", entry=str(p)) from None
    return parse_rules(raw, source=str(p))


@lru_cache(maxsize=1)
def _default_rules() -> Tuple[Rule, ...]:
    return tuple(load_rules(PACKAGE_DATA / "rules.yaml"))


def default_rules() -> List[Rule]:
    return list(_default_rules())
