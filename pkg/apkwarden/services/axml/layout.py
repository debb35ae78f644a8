# apkwarden/services/axml/layout.py
from __future__ import annotations

from typing import Iterable, List, Mapping, Optional, Tuple

from apkwarden.domain.entities.widget import WidgetDecl
from apkwarden.domain.entities.xml import AttrValue, ResourceRef, XmlDocument, XmlElement
from apkwarden.services.axml import constants as c

DEFAULT_WIDGET_SUFFIXES: Tuple[str, ...] = ("EditText", "TextView", "AutoCompleteTextView")


def _widget_class(el: XmlElement) -> str:
    # <view class="com.x.FancyEditText"/> names the widget through an attribute
    if el.name == "view":
        cls = el.get("class")
        if isinstance(cls, str) and cls:
            return cls
    return el.name


def _is_widget(class_name: str, suffixes: Iterable[str]) -> bool:
    simple = class_name.rsplit(".", 1)[-1]
    return any(simple.endswith(s) for s in suffixes)


def _text(
    value: AttrValue, attr: str, unresolved: List[str]
) -> Optional[str]:
    if isinstance(value, ResourceRef):
        unresolved.append(f"{attr}={value}")
        return None
    if isinstance(value, str):
        if value.startswith("@") and "/" in value:
            unresolved.append(f"{attr}={value}")
            return None
        return value or None
    return None


def _id(
    value: AttrValue, id_names: Mapping[int, str], unresolved: List[str]
) -> Tuple[Optional[str], Optional[int]]:
    if isinstance(value, ResourceRef):
        name = id_names.get(value.res_id)
        if name is None:
            unresolved.append(f"id={value}")
        return name, value.res_id
    if isinstance(value, str) and value:
        return value.rsplit("/", 1)[-1], None
    return None, None


def extract_layout_widgets(
    doc: XmlDocument,
    source_file: str,
    *,
    suffixes: Iterable[str] = DEFAULT_WIDGET_SUFFIXES,
    id_names: Optional[Mapping[int, str]] = None,
) -> List[WidgetDecl]:
    """
    One WidgetDecl per text-bearing widget (class name ends with one of ``suffixes``), in
    document order. ``id_names`` maps compiled ``@id`` resource ids to their names (taken
    from the app's ``R$id`` class); ``@string`` indirections are recorded as unresolved.
    Widgets with neither an id name nor any text are dropped.
    """
    suffixes = tuple(suffixes)
    names = id_names or {}
    out: List[WidgetDecl] = []
    for el in doc.root.iter():
        cls = _widget_class(el)
        if not _is_widget(cls, suffixes):
            continue
        unresolved: List[str] = []
        id_name, res_id = _id(el.get("id", c.ATTR_ID), names, unresolved)
        hint = _text(el.get("hint", c.ATTR_HINT), "hint", unresolved)
        text = _text(el.get("text", c.ATTR_TEXT), "text", unresolved)
        if id_name is None and hint is None and text is None:
            continue
        out.append(
            WidgetDecl(
                widget_class=cls,
                source_file=source_file,
                id_name=id_name,
                hint_text=hint,
                text=text,
                resource_id=res_id,
                unresolved=tuple(unresolved),
            )
        )
    return out
