from apkwarden.services.trackers.detector import detect_in_descriptors, detect_trackers
from apkwarden.services.trackers.signatures import (
    default_tracker_signatures,
    load_tracker_signatures,
    parse_tracker_signatures,
)

__all__ = [
    "default_tracker_signatures",
    "detect_in_descriptors",
    "detect_trackers",
    "load_tracker_signatures",
    "parse_tracker_signatures",
]
