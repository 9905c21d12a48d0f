"""Python access to the spanlab spanner constructions and checkers."""

import json

from . import _spanlab
from ._spanlab import (
    GraphError,
    build_emulator,
    build_hybrid,
    build_lb_graph,
    build_sourcewise_additive,
    build_sourcewise_additive4,
    build_sourcewise_mult,
    lb_audit,
    random_graph,
    run_cli,
    sample_sources,
)


def verify(n, edges, candidate, spec, sources=None):
    """Stretch report as a dict; see StretchSpec.parse for spec strings."""
    return json.loads(_spanlab.verify(n, edges, candidate, sources, spec))


def verify_emulator(n, edges, emulator, sources, beta):
    return json.loads(_spanlab.verify_emulator(n, edges, emulator, sources, beta))


def meta(result):
    return json.loads(result["meta"])


__all__ = [
    "GraphError",
    "build_emulator",
    "build_hybrid",
    "build_lb_graph",
    "build_sourcewise_additive",
    "build_sourcewise_additive4",
    "build_sourcewise_mult",
    "lb_audit",
    "meta",
    "random_graph",
    "run_cli",
    "sample_sources",
    "verify",
    "verify_emulator",
]
