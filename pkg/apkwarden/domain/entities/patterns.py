# apkwarden/domain/entities/patterns.py
from __future__ import annotations

from dataclasses import dataclass
from fnmatch import fnmatchcase
from typing import Iterable, Optional

from apkwarden.domain.entities.dex import MethodRef


@dataclass(frozen=True)
class MethodPattern:
    """
    Method-signature pattern used by rules and by the source/sink list.

    Text form: ``<class>-><name>[(<params>)[<return>]]`` where ``class`` may be ``*`` and
    ``name`` may contain ``*`` globs, e.g. ``Landroid/util/Log;->*``,
    ``Ljava/security/MessageDigest;->getInstance(Ljava/lang/String;)``,
    ``*->hashCode()I``. Omitting the parameter list matches any overload.
    """

    class_descriptor: str
    name: str
    params: Optional[str] = None
    return_type: Optional[str] = None

    @classmethod
    def parse(cls, text: str) -> "MethodPattern":
        text = text.strip()
        if "->" not in text:
            raise ValueError(f"method pattern needs '->': {text!r}")
        cls_part, rest = text.split("->", 1)
        cls_part = cls_part.strip()
        if cls_part != "*" and not (cls_part.startswith("L") and cls_part.endswith(";")):
            raise ValueError(f"bad class descriptor in pattern: {text!r}")
        params: Optional[str] = None
        ret: Optional[str] = None
        name = rest
        if "(" in rest:
            name, sig = rest.split("(", 1)
            if ")" not in sig:
                raise ValueError(f"unterminated parameter list: {text!r}")
            params, ret_part = sig.split(")", 1)
            ret = ret_part or None
        if not name:
            raise ValueError(f"empty method name in pattern: {text!r}")
        return cls(cls_part, name, params, ret)

    @classmethod
    def of(cls, class_descriptor: str, name: str, params: str = "*") -> "MethodPattern":
        """Build from the columns of the source/sink file (``*`` params = any overload)."""
        p: Optional[str] = None
        if params != "*":
            p = params[1:-1] if params.startswith("(") and params.endswith(")") else params
        return cls(class_descriptor, name, p, None)

    def matches(self, ref: MethodRef, ancestors: Iterable[str] = ()) -> bool:
        if not fnmatchcase(ref.name, self.name):
            return False
        if self.params is not None and "".join(ref.prototype.parameters) != self.params:
            return False
        if self.return_type is not None and ref.prototype.return_type != self.return_type:
            return False
        if self.class_descriptor == "*" or self.class_descriptor == ref.class_descriptor:
            return True
        return self.class_descriptor in ancestors

    def __str__(self) -> str:
        out = f"{self.class_descriptor}->{self.name}"
        if self.params is not None:
            out += f"({self.params})" + (self.return_type or "")
        return out
