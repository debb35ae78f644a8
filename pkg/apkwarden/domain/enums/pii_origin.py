from __future__ import annotations
from enum import StrEnum


class PiiOrigin(StrEnum):
    WidgetId = "WidgetId"
    WidgetHint = "WidgetHint"
    WidgetText = "WidgetText"
    CodeIdentifier = "CodeIdentifier"


class PiiBinding(StrEnum):
    """How a code-side PII variable is tied to the bytecode."""

    ViewText = "ViewText"  # text-getter call on a view looked up by a PII widget id
    Field = "Field"  # field whose name carries a keyword
    Literal = "Literal"  # const-string whose text carries a keyword
