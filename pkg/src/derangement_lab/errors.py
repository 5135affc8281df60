"""
Exception hierarchy.

Every domain error derives from ``DerangementLabError`` so the CLI can catch
one type per group and keep going. Errors may carry a remediation ``hint``
(shown next to the message) and, when raised while reading a group file,
the ``path`` and ``line`` they came from.
"""
from __future__ import annotations


class DerangementLabError(Exception):
    """Base exception for all derangement-lab errors."""

    default_hint: str | None = None

    def __init__(
        self,
        message: str = "",
        *,
        hint: str | None = None,
        path: str | None = None,
        line: int | None = None,
    ):
        super().__init__(message)
        self.message = message
        self.hint = hint if hint is not None else self.default_hint
        self.path = path
        self.line = line

    def located(self) -> str:
        """Message prefixed with ``path:line`` when known."""
        where = ""
        if self.path:
            where = self.path
            if self.line is not None:
                where += f":{self.line}"
            where += ": "
        elif self.line is not None:
            where = f"line {self.line}: "
        return f"{where}{self.message}"

    def __str__(self) -> str:
        return self.located()


# ----------------------------------------------------------------------------
# Permutations
# ----------------------------------------------------------------------------

class DegreeMismatch(DerangementLabError):
    """Two permutations (or a permutation and a group) disagree on degree."""


class PointOutOfRange(DerangementLabError):
    """A point lies outside {0, …, degree−1} (1-based: outside 1…degree)."""


class MalformedCycles(DerangementLabError):
    """Cycle notation does not parse, or repeats a point."""


# ----------------------------------------------------------------------------
# Groups
# ----------------------------------------------------------------------------

class OrderCapExceeded(DerangementLabError):
    """Enumeration or lattice search would exceed the configured order cap."""

    default_hint = "the instance is beyond desk scale; raise --max-order if you really mean it"


class NotASubgroup(DerangementLabError):
    """A subgroup argument does not live inside the given group."""


class NotAnElement(DerangementLabError):
    """A permutation is not an element of the given group."""


class NotTransitive(DerangementLabError):
    """An operation that needs a transitive group was given an intransitive one."""


class NotABlockSystem(DerangementLabError):
    """A partition is not G-invariant (or not a uniform partition)."""


class InvalidSeries(DerangementLabError):
    """A normal imprimitivity series fails its chain invariants."""


# ----------------------------------------------------------------------------
# Graphs and constructions
# ----------------------------------------------------------------------------

class GraphTooLarge(DerangementLabError):
    """The derangement graph would exceed the vertex cap."""

    default_hint = "raise --max-graph-vertices (memory grows quadratically)"


class NotEquivalent(DerangementLabError):
    """The pigeonhole check was asked about a Kronecker-inequivalent pair."""


class PartTooSmall(DerangementLabError):
    """A partition part is smaller than the required minimum size a."""


class InvalidPartition(DerangementLabError):
    """A family member does not partition the ground set."""


class ConstructionViolation(DerangementLabError):
    """A constructed object failed its own verification. Never expected."""


# ----------------------------------------------------------------------------
# Catalog
# ----------------------------------------------------------------------------

class MalformedGroupFile(DerangementLabError):
    """A group file does not follow the ``degree/name/gen`` format."""


class UnknownGroup(DerangementLabError):
    """A group source is neither a built-in catalog name nor a readable file."""

    default_hint = "run `derangement-lab catalog` to list built-in names"
