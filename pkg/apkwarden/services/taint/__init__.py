from apkwarden.services.taint.callgraph import (
    CallGraph,
    boundary_node,
    build_call_graph,
    find_entry_points,
)
from apkwarden.services.taint.confirm import confirm_flows
from apkwarden.services.taint.engine import TaintEngine, find_flows
from apkwarden.services.taint.entry_points import (
    default_entry_point_policy,
    load_entry_point_policy,
)
from apkwarden.services.taint.framework_types import (
    default_framework_types,
    load_framework_types,
)
from apkwarden.services.taint.spec_loader import load_taint_spec, parse_taint_spec

__all__ = [
    "CallGraph",
    "TaintEngine",
    "boundary_node",
    "build_call_graph",
    "confirm_flows",
    "default_entry_point_policy",
    "default_framework_types",
    "find_entry_points",
    "find_flows",
    "load_entry_point_policy",
    "load_framework_types",
    "load_taint_spec",
    "parse_taint_spec",
]
