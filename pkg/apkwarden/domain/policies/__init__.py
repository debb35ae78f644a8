from apkwarden.domain.policies.entry_points import EntryPointPolicy
from apkwarden.domain.policies.framework_types import FrameworkTypes
from apkwarden.domain.policies.exit_status import (
    EXIT_HIGH,
    EXIT_OK,
    EXIT_TOOL_ERROR,
    EXIT_WARNING,
    exit_code_for,
    highest_severity,
)

__all__ = [
    "EntryPointPolicy",
    "FrameworkTypes",
    "EXIT_OK",
    "EXIT_WARNING",
    "EXIT_HIGH",
    "EXIT_TOOL_ERROR",
    "exit_code_for",
    "highest_severity",
]
