"""Adaptive partition of N-dimensional boxes for one-point-based methods."""

from .exactnum import ExactScalar, affine_third, make, midpoint, to_float
from .engine import (
    Fifo, LargestDiameter, LowerBound, RandomChoice, RunConfig, Scripted,
    minimize, run, select,
)
from .strategies import STRATEGY_NAMES, SplitOutcome, PartitionState
from .vertexdb import Evaluator, VertexDB

__version__ = "0.1.0"
