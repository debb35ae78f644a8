from apkwarden.services.rules.confirm import confirm_candidates
from apkwarden.services.rules.loader import default_rules, load_rules, parse_rules
from apkwarden.services.rules.manifest_rules import evaluate_manifest_rules
from apkwarden.services.rules.matchers import extract_candidate_methods

__all__ = [
    "confirm_candidates",
    "default_rules",
    "evaluate_manifest_rules",
    "extract_candidate_methods",
    "load_rules",
    "parse_rules",
]
