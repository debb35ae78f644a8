from apkwarden.services.dex.code import all_invocations, decode_code, decode_method
from apkwarden.services.dex.dataflow import (
    RESULT,
    ReachingDefinitions,
    argument_registers,
    param_registers,
    register_effects,
    result_register,
)
from apkwarden.services.dex.parser import parse_dex, resource_id_names
from apkwarden.services.dex.program import Program

__all__ = [
    "RESULT",
    "Program",
    "ReachingDefinitions",
    "all_invocations",
    "argument_registers",
    "decode_code",
    "decode_method",
    "param_registers",
    "parse_dex",
    "register_effects",
    "resource_id_names",
    "result_register",
]
