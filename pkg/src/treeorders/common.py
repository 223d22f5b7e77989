"""Shared point type, error classes and exact rational helpers."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional


class DomainError(ValueError):
    """An input violates a mathematical precondition."""


class ParseError(ValueError):
    """Malformed text document."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Point:
    """A point of a presented tree.

    ``pos is None`` means the vertex ``node`` itself.  Otherwise the point lies
    strictly inside the edge that ends at ``node``, at distance ``pos`` above
    the parent vertex (a natural offset for well-stratified trees, a rational
    parameter for segment trees).
    """

    node: str
    pos: Optional[Fraction] = None

    @property
    def is_vertex(self) -> bool:
        return self.pos is None

    def sort_key(self):
        return (self.node, self.pos is not None, self.pos if self.pos is not None else 0)

    def __str__(self) -> str:
        if self.pos is None:
            return self.node
        return f"{self.node}@{fmt_q(self.pos)}"


def vertex(node: str) -> Point:
    return Point(node)


_RAT = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")
_DEC = re.compile(r"^[+-]?\d*\.\d+$|^[+-]?\d+\.\d*$")


def parse_q(text: str) -> Fraction:
    """Parse ``a/b``, an integer, or a decimal literal exactly."""
    text = text.strip()
    m = _RAT.match(text)
    if m:
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Fraction(int(m.group(1)), den)
    if _DEC.match(text):
        return Fraction(text)
    raise ValueError(f"not a rational literal: {text!r}")


def fmt_q(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_point(text: str) -> Point:
    text = text.strip()
    if not text:
        raise ValueError("empty point")
    if "@" in text:
        node, _, pos = text.partition("@")
        if not node:
            raise ValueError(f"missing node in point {text!r}")
        return Point(node, parse_q(pos))
    return Point(text)
