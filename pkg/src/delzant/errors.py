"""Exception hierarchy.

Every domain failure raised by the library derives from :class:`DelzantError`.
Each carries a ``witness`` dict (possibly empty) with the exact data that
explains the failure; the CLI serializes it verbatim.
"""

from __future__ import annotations

from typing import Any


class DelzantError(Exception):
    """Base class for all domain errors."""

    def __init__(self, message: str = "", **witness: Any) -> None:
        super().__init__(message or self.__class__.__name__)
        self.witness = witness

    @property
    def code(self) -> str:
        return self.__class__.__name__


# exactlat
class ZeroVector(DelzantError):
    pass


class ShapeMismatch(DelzantError):
    pass


class NotPrimitive(DelzantError):
    pass


class NotUnimodular(DelzantError):
    pass


# polytope
class Unbounded(DelzantError):
    pass


class Empty(DelzantError):
    pass


class NotFullDim(DelzantError):
    pass


class NotAVertex(DelzantError):
    pass


class NoIntersection(DelzantError):
    pass


class NotParallel(DelzantError):
    pass


class EmptyInterval(DelzantError):
    pass


class OutsidePolytope(DelzantError):
    pass


class NotDelzant(DelzantError):
    pass


# surgery
class TrivialCut(DelzantError):
    pass


class NonDelzantCut(DelzantError):
    pass


class SliceMismatch(DelzantError):
    pass


class NonConvexUnion(DelzantError):
    pass


class NonDelzantGlue(DelzantError):
    pass


class InvalidWeight(DelzantError):
    pass


# bstruct
class InvalidGraph(DelzantError):
    pass


class InvalidBPolytope(DelzantError):
    pass


class BadCutLevel(DelzantError):
    pass


class DecompositionFailure(DelzantError):
    pass


class UnsupportedLoop(DelzantError):
    pass


# homology
class NotGeneric(DelzantError):
    pass


class DuplicateCriticalValue(NotGeneric):
    pass


# cli
class UnsupportedDimension(DelzantError):
    pass
