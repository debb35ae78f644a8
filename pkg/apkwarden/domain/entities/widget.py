from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple


@dataclass(frozen=True)
class WidgetDecl:
    """
    One text-bearing widget from a layout file. ``unresolved`` lists attributes whose value
    is a ``@string`` style reference that cannot be resolved without the resource table.
    """

    widget_class: str
    source_file: str
    id_name: Optional[str] = None
    hint_text: Optional[str] = None
    text: Optional[str] = None
    resource_id: Optional[int] = None
    unresolved: Tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not self.widget_class:
            raise ValueError("widget_class must be non-empty")
