"""Soft sets, soft points and soft real numbers over finite parameter sets.

A soft set over a universe ``X`` is a map ``F: E -> P(X)`` from a parameter
set ``E`` to subsets of ``X``.  Everything here is finite and immutable.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from types import MappingProxyType
from typing import Hashable, Iterable, Mapping, Sequence


class SoftStructureError(ValueError):
    """Raised when values of incompatible shape or domain are combined."""


@dataclass(frozen=True)
class ParameterSet:
    """An ordered, duplicate-free, non-empty list of parameter labels."""

    labels: tuple

    def __init__(self, labels: Iterable[Hashable]):
        labels = tuple(labels)
        if not labels:
            raise SoftStructureError("parameter set must be non-empty")
        if len(set(labels)) != len(labels):
            raise SoftStructureError(f"duplicate parameter labels in {labels!r}")
        object.__setattr__(self, "labels", labels)

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def __contains__(self, label) -> bool:
        return label in self.labels


@dataclass(frozen=True)
class SoftReal:
    """A soft real number: one real value per parameter label."""

    params: ParameterSet
    values: tuple

    def __init__(self, params: ParameterSet | Iterable[Hashable], values: Sequence[float] | Mapping):
        if not isinstance(params, ParameterSet):
            params = ParameterSet(params)
        if isinstance(values, Mapping):
            if set(values) != set(params.labels):
                raise SoftStructureError("values must cover exactly the parameter labels")
            values = [values[label] for label in params.labels]
        values = tuple(float(v) for v in values)
        if len(values) != len(params):
            raise SoftStructureError(
                f"expected {len(params)} values, got {len(values)}")
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "values", values)

    @classmethod
    def constant(cls, params: ParameterSet, value: float) -> SoftReal:
        return cls(params, [value] * len(params))

    def __getitem__(self, label) -> float:
        try:
            return self.values[self.params.labels.index(label)]
        except ValueError:
            raise KeyError(label) from None

    def __add__(self, other: SoftReal) -> SoftReal:
        return sr_add(self, other)

    def to_dict(self) -> dict:
        return {"params": [str(p) for p in self.params],
                "values": {str(p): v for p, v in zip(self.params, self.values)}}

    @classmethod
    def from_dict(cls, data: Mapping) -> SoftReal:
        try:
            params = ParameterSet(str(p) for p in data["params"])
            return cls(params, {str(k): v for k, v in data["values"].items()})
        except (KeyError, TypeError, AttributeError) as exc:
            raise SoftStructureError(f"malformed soft real: {exc}") from exc


class Comparison(enum.Enum):
    """Strongest pointwise relation between two soft reals."""

    EQ = "EQ"
    LT = "LT"
    LE = "LE"
    GT = "GT"
    GE = "GE"
    INCOMPARABLE = "INCOMPARABLE"


def _same_params(r: SoftReal, s: SoftReal) -> None:
    if r.params != s.params:
        raise SoftStructureError("soft reals are over different parameter sets")


def sr_add(r: SoftReal, s: SoftReal) -> SoftReal:
    _same_params(r, s)
    return SoftReal(r.params, [a + b for a, b in zip(r.values, s.values)])


def sr_compare(r: SoftReal, s: SoftReal) -> Comparison:
    """Compare two soft reals in the pointwise partial order.

    The outcome is the strongest relation that holds, so ``LT`` is returned
    rather than ``LE`` when every component is strictly smaller.  Crossing
    components give ``INCOMPARABLE``.
    """
    _same_params(r, s)
    pairs = list(zip(r.values, s.values))
    if all(a == b for a, b in pairs):
        return Comparison.EQ
    if all(a < b for a, b in pairs):
        return Comparison.LT
    if all(a <= b for a, b in pairs):
        return Comparison.LE
    if all(a > b for a, b in pairs):
        return Comparison.GT
    if all(a >= b for a, b in pairs):
        return Comparison.GE
    return Comparison.INCOMPARABLE


def sr_le(r: SoftReal, s: SoftReal) -> bool:
    return sr_compare(r, s) in (Comparison.EQ, Comparison.LT, Comparison.LE)


@dataclass(frozen=True)
class SoftPoint:
    """The soft set that is ``{element}`` at ``param`` and empty elsewhere."""

    element: Hashable
    param: Hashable


@dataclass(frozen=True)
class SoftSet:
    params: ParameterSet
    universe: frozenset
    assignment: Mapping

    def __init__(self, params, universe: Iterable[Hashable], assignment: Mapping):
        if not isinstance(params, ParameterSet):
            params = ParameterSet(params)
        universe = frozenset(universe)
        extra = set(assignment) - set(params.labels)
        if extra:
            raise SoftStructureError(f"assignment for unknown parameters {sorted(map(str, extra))}")
        table = {}
        for label in params:
            subset = frozenset(assignment.get(label, ()))
            if not subset <= universe:
                raise SoftStructureError(
                    f"F({label!r}) is not a subset of the universe")
            table[label] = subset
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "universe", universe)
        object.__setattr__(self, "assignment", MappingProxyType(table))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SoftSet):
            return NotImplemented
        return (self.params == other.params and self.universe == other.universe
                and dict(self.assignment) == dict(other.assignment))

    def __hash__(self) -> int:
        return hash((self.params, self.universe,
                     tuple(self.assignment[p] for p in self.params)))

    def __getitem__(self, label) -> frozenset:
        return self.assignment[label]

    @property
    def is_null(self) -> bool:
        return all(not s for s in self.assignment.values())

    @property
    def is_absolute(self) -> bool:
        return all(s == self.universe for s in self.assignment.values())

    def to_dict(self) -> dict:
        return {"params": [str(p) for p in self.params],
                "universe": sorted(str(x) for x in self.universe),
                "assignment": {str(p): sorted(str(x) for x in self.assignment[p])
                               for p in self.params}}

    @classmethod
    def from_dict(cls, data: Mapping) -> SoftSet:
        try:
            return cls([str(p) for p in data["params"]],
                       [str(x) for x in data["universe"]],
                       {str(k): [str(x) for x in v] for k, v in data["assignment"].items()})
        except (KeyError, TypeError, AttributeError) as exc:
            raise SoftStructureError(f"malformed soft set: {exc}") from exc


def null_soft_set(params, universe) -> SoftSet:
    return SoftSet(params, universe, {})


def absolute_soft_set(params, universe) -> SoftSet:
    params = params if isinstance(params, ParameterSet) else ParameterSet(params)
    universe = frozenset(universe)
    return SoftSet(params, universe, {p: universe for p in params})


def _element_key(x):
    # mixed-type universes still need a deterministic order
    return (type(x).__name__, repr(x))


def ss_to_points(s: SoftSet) -> list[SoftPoint]:
    """Decompose a soft set into its soft points, ordered by parameter then element."""
    return [SoftPoint(x, p) for p in s.params
            for x in sorted(s.assignment[p], key=_element_key)]


def ss_from_points(pts: Iterable[SoftPoint], params, universe) -> SoftSet:
    params = params if isinstance(params, ParameterSet) else ParameterSet(params)
    universe = frozenset(universe)
    table: dict = {p: set() for p in params}
    for pt in pts:
        if pt.param not in params:
            raise SoftStructureError(f"point parameter {pt.param!r} not in parameter set")
        if pt.element not in universe:
            raise SoftStructureError(f"point element {pt.element!r} not in universe")
        table[pt.param].add(pt.element)
    return SoftSet(params, universe, table)

