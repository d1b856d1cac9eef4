"""Certified immersions of F(k,l) chains and transitive tournaments in digraphs."""

from ._core import DEFAULT_BACKEND as KERNEL_BACKEND
from .certify import (
    ImmersionCertificate,
    Violation,
    ViolationKind,
    compose,
    route_tt_in_f,
    verify,
)
from .gen import gen_out_regular, gen_reduction_fixture
from .menger import CutCertificate, paths_or_cut
from .multidigraph import MultiDigraph, parse_digraph, format_digraph, read_digraph, write_digraph
from .oracle import SearchLimits, exhaustive_immersion
from .patterns import Pattern, bound_c1, bound_dprime, bound_f, build_pattern
from .solver import find_f, find_tt

__all__ = [
    "KERNEL_BACKEND",
    "CutCertificate",
    "ImmersionCertificate",
    "MultiDigraph",
    "Pattern",
    "SearchLimits",
    "Violation",
    "ViolationKind",
    "bound_c1",
    "bound_dprime",
    "bound_f",
    "build_pattern",
    "compose",
    "exhaustive_immersion",
    "find_f",
    "find_tt",
    "format_digraph",
    "gen_out_regular",
    "gen_reduction_fixture",
    "parse_digraph",
    "paths_or_cut",
    "read_digraph",
    "route_tt_in_f",
    "verify",
    "write_digraph",
]
