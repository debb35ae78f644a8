# apkwarden/services/schemas/keywords.py
from __future__ import annotations

from typing import Dict, List

from pydantic import BaseModel, Field


class SynonymSchema(BaseModel):
    word: str
    similarity: float = Field(..., description="Cosine similarity, 6 decimal places")
    accepted: bool = True


class KeywordDatabaseExport(BaseModel):
    schema_version: int = 1
    k: int = Field(5, ge=0)
    seeds: List[str]
    expansions: Dict[str, List[SynonymSchema]] = Field(default_factory=dict)
    keywords: List[str] = Field(default_factory=list, description="Seeds plus accepted synonyms")
