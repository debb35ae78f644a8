from apkwarden.services.pii.binding import bind_pii_to_code
from apkwarden.services.pii.embeddings import load_embeddings, load_embeddings_file
from apkwarden.services.pii.errors import (
    BadHeader,
    DimensionMismatch,
    EmbeddingError,
    NonFiniteValue,
)
from apkwarden.services.pii.index import PiiIndex
from apkwarden.services.pii.keywords import (
    cosine,
    expand_keywords,
    export_keyword_db,
    load_keyword_db,
    nearest,
)
from apkwarden.services.pii.matcher import identify_pii_variables

__all__ = [
    "BadHeader",
    "DimensionMismatch",
    "EmbeddingError",
    "NonFiniteValue",
    "PiiIndex",
    "bind_pii_to_code",
    "cosine",
    "expand_keywords",
    "export_keyword_db",
    "identify_pii_variables",
    "load_embeddings",
    "load_embeddings_file",
    "load_keyword_db",
    "nearest",
]
