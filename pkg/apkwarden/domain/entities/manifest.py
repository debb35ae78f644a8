# apkwarden/domain/entities/manifest.py
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Tuple

from apkwarden.domain.enums.component_kind import ComponentKind
from apkwarden.domain.enums.launch_mode import LaunchMode
from apkwarden.domain.entities.xml import ResourceRef


@dataclass(frozen=True)
class Component:
    kind: ComponentKind
    name: str
    exported: Optional[bool] = None
    permission: Optional[str] = None
    launch_mode: LaunchMode = LaunchMode.standard
    intent_filters: int = 0
    tag: str = ""

    @property
    def descriptor(self) -> str:
        """Class descriptor of the component class (``com.x.Main`` -> ``Lcom/x/Main;``)."""
        return "L" + self.name.replace(".", "/") + ";"

    @property
    def effectively_exported(self) -> bool:
        if self.exported is not None:
            return self.exported
        return self.intent_filters > 0


@dataclass(frozen=True)
class ManifestFlags:
    """Tri-state application flags: None means the attribute is absent."""

    allow_backup: Optional[bool] = None
    debuggable: Optional[bool] = None
    uses_cleartext_traffic: Optional[bool] = None
    network_security_config: Optional[ResourceRef | str] = None


@dataclass(frozen=True)
class ManifestModel:
    package: str
    permissions: Tuple[str, ...] = ()
    components: Tuple[Component, ...] = ()
    flags: ManifestFlags = field(default_factory=ManifestFlags)
    application_name: Optional[str] = None
    application_permission: Optional[str] = None
    declared_permissions: Tuple[str, ...] = ()
    min_sdk: Optional[int] = None
    target_sdk: Optional[int] = None

    def components_of(self, kind: ComponentKind) -> list[Component]:
        return [c for c in self.components if c.kind == kind]

    @property
    def application_descriptor(self) -> Optional[str]:
        if not self.application_name:
            return None
        return "L" + self.application_name.replace(".", "/") + ";"
