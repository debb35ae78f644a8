# apkwarden/domain/policies/framework_types.py
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, List, Mapping, Tuple


@dataclass(frozen=True)
class FrameworkTypes:
    """
    Direct supertypes of platform classes an app extends without shipping their bytecode.

    The program only sees its own classes, so ``MainActivity``'s ancestry stops at
    ``Activity``. This table continues it (``Activity`` -> ``ContextThemeWrapper`` -> ... ->
    ``Context``) so a source or sink declared on a framework base class matches a call
    dispatched through an app subclass.
    """

    supertypes: Mapping[str, Tuple[str, ...]] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.supertypes)

    def closure(self, descriptor: str) -> Tuple[str, ...]:
        """Framework supertypes of ``descriptor``, nearest first, excluding itself."""
        out: List[str] = []
        queue = [descriptor]
        seen = {descriptor}
        while queue:
            for parent in self.supertypes.get(queue.pop(0), ()):
                if parent not in seen:
                    seen.add(parent)
                    out.append(parent)
                    queue.append(parent)
        return tuple(out)

    def extend(self, descriptor: str, visible: Iterable[str]) -> Tuple[str, ...]:
        """``visible`` ancestors followed by the framework ancestry of each of them."""
        out = list(visible)
        seen = {descriptor, *out}
        for start in [descriptor, *out]:
            for parent in self.closure(start):
                if parent not in seen:
                    seen.add(parent)
                    out.append(parent)
        return tuple(out)

    @classmethod
    def from_mapping(cls, raw: Mapping) -> "FrameworkTypes":
        table = raw.get("supertypes") or {}
        if not isinstance(table, Mapping):
            raise ValueError("supertypes must be a mapping of class -> [supertypes]")
        supertypes = {}
        for child, parents in table.items():
            if isinstance(parents, str):
                parents = [parents]
            names = tuple(str(p) for p in parents or ())
            for name in (str(child), *names):
                if not (name.startswith("L") and name.endswith(";")):
                    raise ValueError(f"not a class descriptor: {name!r}")
            supertypes[str(child)] = names
        return cls(supertypes=supertypes)
