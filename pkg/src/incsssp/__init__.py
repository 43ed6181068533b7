"""Incremental single-source shortest paths with synchronized propagation.

Directed weighted graphs under edge insertions: a deterministic engine that
batches propagation along power-of-two windows, a randomized twin-structure
variant safe against adaptive adversaries, an exact oracle for checking
every approximation claim, and adversarial workload generators.
"""

from .engine import Config, IncrementalSSSP, UNREACHABLE
from .errors import (AlreadyPreprocessed, BudgetExceeded, DuplicateEdge,
                     IncSSSPError, InvalidConfig, InvalidParams, NotAPath,
                     ParseError, PhaseFull, TooDense, Unreachable,
                     VertexOutOfRange, WeightOutOfRange)
from .graph import Edge, Graph
from .lazy import CAP, EstimateTable, bucket
from .det import DeterministicRange, batch_index, bounded_dijkstra
from .rand import FixingSample, RandomizedRange
from .short import ShortDistanceTree
from .oracle import (ExactDistances, VerifyReport, additive_error_histogram,
                     brute_force_distances, dijkstra, exact_distances_fast,
                     phase_error_audit, phase_error_bound, verify)
from .workloads import (QuadraticErrorParams, InsertionStream, adaptive_run,
                        quadratic_error_stream, random_stream)
from .cli import parse_stream, serialize_stream, run

__all__ = [
    "Config", "IncrementalSSSP", "UNREACHABLE",
    "AlreadyPreprocessed", "BudgetExceeded", "DuplicateEdge", "IncSSSPError",
    "InvalidConfig", "InvalidParams", "NotAPath", "ParseError", "PhaseFull",
    "TooDense", "Unreachable", "VertexOutOfRange", "WeightOutOfRange",
    "Edge", "Graph", "CAP", "EstimateTable", "bucket",
    "DeterministicRange", "batch_index", "bounded_dijkstra",
    "FixingSample", "RandomizedRange", "ShortDistanceTree",
    "ExactDistances", "VerifyReport", "additive_error_histogram",
    "brute_force_distances", "dijkstra", "exact_distances_fast",
    "phase_error_audit", "phase_error_bound", "verify",
    "QuadraticErrorParams", "InsertionStream", "adaptive_run", "quadratic_error_stream",
    "random_stream", "parse_stream", "serialize_stream", "run",
]
