# apkwarden/domain/policies/entry_points.py
from __future__ import annotations

from dataclasses import dataclass, field
from fnmatch import fnmatchcase
from typing import Mapping, Tuple

from apkwarden.domain.enums.component_kind import ComponentKind


@dataclass(frozen=True)
class EntryPointPolicy:
    """
    Which methods the framework may call directly.

    - ``lifecycle``: method names per component kind, matched on the component class and its
      in-program superclasses (an inherited ``onCreate`` is still an entry point).
    - ``application``: lifecycle names of the manifest's Application subclass.
    - ``constructors``: treat ``<init>``/``<clinit>`` of component classes as entry points.
    - ``registration``: glob patterns of listener-registration calls (``set*Listener``).
    - ``callbacks``: method names made reachable on an object passed to a registration call.
    """

    lifecycle: Mapping[ComponentKind, Tuple[str, ...]] = field(default_factory=dict)
    application: Tuple[str, ...] = ()
    constructors: bool = True
    registration: Tuple[str, ...] = ()
    callbacks: Tuple[str, ...] = ()

    def lifecycle_names(self, kind: ComponentKind) -> Tuple[str, ...]:
        names = self.lifecycle.get(kind, ())
        if self.constructors:
            names = names + ("<init>", "<clinit>")
        return names

    def is_registration(self, method_name: str) -> bool:
        return any(fnmatchcase(method_name, g) for g in self.registration)

    def is_callback(self, method_name: str) -> bool:
        return method_name in self.callbacks

    @classmethod
    def from_mapping(cls, raw: Mapping) -> "EntryPointPolicy":
        lifecycle = {}
        for key, names in (raw.get("lifecycle") or {}).items():
            kind = ComponentKind.from_tag(str(key).lower())
            if kind is None:
                raise ValueError(f"unknown component kind in entry-point policy: {key!r}")
            lifecycle[kind] = tuple(str(n) for n in names or ())
        return cls(
            lifecycle=lifecycle,
            application=tuple(str(n) for n in raw.get("application") or ()),
            constructors=bool(raw.get("constructors", True)),
            registration=tuple(str(n) for n in raw.get("registration") or ()),
            callbacks=tuple(str(n) for n in raw.get("callbacks") or ()),
        )
