"""Exact junction-tree inference for discrete belief networks."""

from ._core import (
    CapExceeded,
    CompiledNetwork,
    CycleError,
    Error,
    EvidenceError,
    ImpossibleEvidence,
    Network,
    ParseError,
    Session,
    ValidationError,
    compile,
    count_update_operations,
    generate_network,
    load_network,
    merge_networks,
    oracle_posteriors,
    parse_network,
    serialize_network,
)

__all__ = [
    "CapExceeded",
    "CompiledNetwork",
    "CycleError",
    "Error",
    "EvidenceError",
    "ImpossibleEvidence",
    "Network",
    "ParseError",
    "Session",
    "ValidationError",
    "compile",
    "count_update_operations",
    "generate_network",
    "load_network",
    "merge_networks",
    "oracle_posteriors",
    "parse_network",
    "serialize_network",
]
