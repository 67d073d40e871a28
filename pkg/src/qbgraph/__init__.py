"""Exact engine for quantum Bruhat graphs, their affine lifts, the
level-zero weight poset, and tilted order queries."""

from .affine import AffineElement, AffineRoot, AffineWeyl
from .level_zero import LevelZeroPoset, LevelZeroWeight
from .qbg import BRUHAT, QUANTUM, QbgEdge, QbgGraph, QbgPath, build_qbg
from .root_system import ConfigurationError, RootSystem, build_root_system
from .weyl import WeylElement, WeylGroup

__all__ = [
    "AffineElement",
    "AffineRoot",
    "AffineWeyl",
    "BRUHAT",
    "ConfigurationError",
    "LevelZeroPoset",
    "LevelZeroWeight",
    "QUANTUM",
    "QbgEdge",
    "QbgGraph",
    "QbgPath",
    "RootSystem",
    "WeylElement",
    "WeylGroup",
    "build_qbg",
    "build_root_system",
]
