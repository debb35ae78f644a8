# apkwarden/services/axml/manifest.py
from __future__ import annotations

from typing import List, Optional

from apkwarden.domain.entities.manifest import Component, ManifestFlags, ManifestModel
from apkwarden.domain.entities.xml import AttrValue, ResourceRef, XmlDocument, XmlElement
from apkwarden.domain.enums.component_kind import ComponentKind
from apkwarden.domain.enums.launch_mode import LaunchMode
from apkwarden.services.axml import constants as c
from apkwarden.services.axml.errors import NotAManifest

_PERMISSION_TAGS = ("uses-permission", "uses-permission-sdk-23", "uses-permission-sdk-m")


def _bool(value: AttrValue) -> Optional[bool]:
    """Tri-state: explicit booleans only; references and junk read as absent."""
    if isinstance(value, bool):
        return value
    if isinstance(value, str):
        v = value.strip().lower()
        if v in ("true", "false"):
            return v == "true"
    return None


def _str(value: AttrValue) -> Optional[str]:
    if value is None or isinstance(value, bool):
        return None
    if isinstance(value, ResourceRef):
        return str(value)
    return str(value) or None


def _int(value: AttrValue) -> Optional[int]:
    if isinstance(value, bool) or value is None:
        return None
    if isinstance(value, int):
        return value
    try:
        return int(str(value))
    except ValueError:
        return None


def qualify(package: str, name: str) -> str:
    """Resolve ``.Main`` / ``Main`` component names against the manifest package."""
    if name.startswith("."):
        return package + name
    if "." not in name:
        return f"{package}.{name}"
    return name


def _component(el: XmlElement, kind: ComponentKind, package: str) -> Optional[Component]:
    raw = _str(el.get("name", c.ATTR_NAME))
    if raw is None:
        return None
    return Component(
        kind=kind,
        name=qualify(package, raw),
        exported=_bool(el.get("exported", c.ATTR_EXPORTED)),
        permission=_str(el.get("permission", c.ATTR_PERMISSION)),
        launch_mode=LaunchMode.from_attr(el.get("launchMode", c.ATTR_LAUNCH_MODE)),
        intent_filters=len(el.find_all("intent-filter")),
        tag=el.name,
    )


def extract_manifest(doc: XmlDocument) -> ManifestModel:
    root = doc.root
    if root.name != "manifest":
        raise NotAManifest(f"root element is <{root.name}>, not <manifest>")

    package = _str(root.get("package")) or ""
    permissions: List[str] = []
    declared: List[str] = []
    min_sdk = target_sdk = None
    for child in root.children:
        if child.name in _PERMISSION_TAGS:
            name = _str(child.get("name", c.ATTR_NAME))
            if name and name not in permissions:
                permissions.append(name)
        elif child.name == "permission":
            name = _str(child.get("name", c.ATTR_NAME))
            if name:
                declared.append(name)
        elif child.name == "uses-sdk":
            min_sdk = _int(child.get("minSdkVersion", c.ATTR_MIN_SDK))
            target_sdk = _int(child.get("targetSdkVersion", c.ATTR_TARGET_SDK))

    components: List[Component] = []
    flags = ManifestFlags()
    app_name = app_permission = None
    for app in root.find_all("application")[:1]:
        nsc = app.get("networkSecurityConfig", c.ATTR_NETWORK_SECURITY_CONFIG)
        flags = ManifestFlags(
            allow_backup=_bool(app.get("allowBackup", c.ATTR_ALLOW_BACKUP)),
            debuggable=_bool(app.get("debuggable", c.ATTR_DEBUGGABLE)),
            uses_cleartext_traffic=_bool(app.get("usesCleartextTraffic", c.ATTR_USES_CLEARTEXT)),
            network_security_config=nsc if isinstance(nsc, (ResourceRef, str)) else None,
        )
        raw_app = _str(app.get("name", c.ATTR_NAME))
        app_name = qualify(package, raw_app) if raw_app else None
        app_permission = _str(app.get("permission", c.ATTR_PERMISSION))
        for el in app.children:
            kind = ComponentKind.from_tag(el.name)
            if kind is None:
                continue
            comp = _component(el, kind, package)
            if comp is not None:
                components.append(comp)

    return ManifestModel(
        package=package,
        permissions=tuple(permissions),
        components=tuple(components),
        flags=flags,
        application_name=app_name,
        application_permission=app_permission,
        declared_permissions=tuple(declared),
        min_sdk=min_sdk,
        target_sdk=target_sdk,
    )
