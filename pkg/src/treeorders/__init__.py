"""Exact constructions on finitely presented tree orders."""

from .brto import SegmentTree
from .common import DomainError, ParseError, Point
from .jumps import JumpFunction
from .ordinal import Ordinal
from .wstree import OrdinalTree

__all__ = [
    "DomainError",
    "JumpFunction",
    "Ordinal",
    "OrdinalTree",
    "ParseError",
    "Point",
    "SegmentTree",
]
