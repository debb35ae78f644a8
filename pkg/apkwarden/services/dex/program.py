# apkwarden/services/dex/program.py
from __future__ import annotations

import threading
from collections import defaultdict
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple

from apkwarden.domain.entities.dex import (
    ClassDef,
    DexFile,
    EncodedMethod,
    MethodBody,
    MethodId,
    MethodRef,
)
from apkwarden.services.dex.code import decode_code


class Program:
    """
    All DEX files of one APK viewed as a single class space.

    The first definition of a class descriptor wins (multidex order), every method keeps its
    defining entry as provenance. Method bodies are decoded lazily and cached; the cache is
    guarded so one Program can be shared by concurrent readers.
    """

    def __init__(self, dexes: Sequence[DexFile]):
        self.dexes: Tuple[DexFile, ...] = tuple(dexes)
        self._classes: Dict[str, Tuple[DexFile, ClassDef]] = {}
        for dex in self.dexes:
            for cls in dex.classes:
                self._classes.setdefault(cls.descriptor, (dex, cls))
        self._methods: Dict[MethodId, Tuple[DexFile, EncodedMethod]] = {}
        for desc, (dex, cls) in self._classes.items():
            for m in cls.methods:
                self._methods.setdefault(MethodId.of(dex.provenance, m.ref), (dex, m))
        self._subtypes: Dict[str, Set[str]] = defaultdict(set)
        for desc, (_dex, cls) in self._classes.items():
            for parent in ((cls.superclass,) if cls.superclass else ()) + cls.interfaces:
                self._subtypes[parent].add(desc)
        self._bodies: Dict[MethodId, MethodBody] = {}
        self._lock = threading.Lock()

    # ---- classes -----------------------------------------------------------------------
    def __contains__(self, descriptor: str) -> bool:
        return descriptor in self._classes

    def class_def(self, descriptor: str) -> Optional[ClassDef]:
        hit = self._classes.get(descriptor)
        return hit[1] if hit else None

    def class_descriptors(self) -> List[str]:
        return list(self._classes)

    def superclasses(self, descriptor: str) -> List[str]:
        """Superclass chain through program classes, ending with the first external one."""
        out: List[str] = []
        seen = {descriptor}
        cur = self.class_def(descriptor)
        while cur is not None and cur.superclass and cur.superclass not in seen:
            out.append(cur.superclass)
            seen.add(cur.superclass)
            cur = self.class_def(cur.superclass)
        return out

    def ancestors(self, descriptor: str) -> List[str]:
        """Superclasses and all implemented interfaces (program-visible), nearest first."""
        out: List[str] = []
        queue = [descriptor]
        seen = {descriptor}
        while queue:
            cls = self.class_def(queue.pop(0))
            if cls is None:
                continue
            for parent in ((cls.superclass,) if cls.superclass else ()) + cls.interfaces:
                if parent not in seen:
                    seen.add(parent)
                    out.append(parent)
                    queue.append(parent)
        return out

    def subtypes(self, descriptor: str) -> List[str]:
        """All program classes that extend or implement ``descriptor``, transitively."""
        out: List[str] = []
        queue = [descriptor]
        seen = {descriptor}
        while queue:
            for sub in sorted(self._subtypes.get(queue.pop(0), ())):
                if sub not in seen:
                    seen.add(sub)
                    out.append(sub)
                    queue.append(sub)
        return out

    # ---- methods -----------------------------------------------------------------------
    def method_ids(self) -> Iterator[MethodId]:
        """Defined methods: DEX order, class order, direct then virtual."""
        for dex in self.dexes:
            for cls in dex.classes:
                if self._classes[cls.descriptor][0] is not dex:
                    continue
                for m in cls.methods:
                    yield MethodId.of(dex.provenance, m.ref)

    def encoded(self, mid: MethodId) -> Optional[EncodedMethod]:
        hit = self._methods.get(mid)
        return hit[1] if hit else None

    def declared(self, descriptor: str, name: str, proto: str) -> Optional[MethodId]:
        hit = self._classes.get(descriptor)
        if hit is None:
            return None
        dex, cls = hit
        m = cls.find_method(name, proto)
        return MethodId.of(dex.provenance, m.ref) if m else None

    def resolve(self, descriptor: str, name: str, proto: str) -> Optional[MethodId]:
        """Walk the superclass chain from ``descriptor`` to the first declaration."""
        for cls in [descriptor] + self.superclasses(descriptor):
            mid = self.declared(cls, name, proto)
            if mid is not None:
                return mid
        return None

    def is_concrete(self, mid: MethodId) -> bool:
        m = self.encoded(mid)
        return m is not None and m.has_code

    def is_static(self, mid: MethodId) -> bool:
        m = self.encoded(mid)
        return m is not None and m.is_static

    def dispatch_targets(self, ref: MethodRef) -> List[MethodId]:
        """
        Class Hierarchy Analysis: the concrete declaration reached from the declared
        receiver type plus every concrete override in its program subtypes.
        """
        proto = ref.prototype.descriptor
        out: List[MethodId] = []
        base = self.resolve(ref.class_descriptor, ref.name, proto)
        if base is not None and self.is_concrete(base):
            out.append(base)
        for sub in self.subtypes(ref.class_descriptor):
            mid = self.declared(sub, ref.name, proto)
            if mid is not None and self.is_concrete(mid) and mid not in out:
                out.append(mid)
        return out

    def body(self, mid: MethodId) -> Optional[MethodBody]:
        with self._lock:
            cached = self._bodies.get(mid)
        if cached is not None:
            return cached
        hit = self._methods.get(mid)
        if hit is None or not hit[1].has_code:
            return None
        body = decode_code(hit[0], hit[1])
        with self._lock:
            self._bodies.setdefault(mid, body)
        return body

    def bodies(self) -> Iterator[Tuple[MethodId, MethodBody]]:
        for mid in self.method_ids():
            b = self.body(mid)
            if b is not None:
                yield mid, b
