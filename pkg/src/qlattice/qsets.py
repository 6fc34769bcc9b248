"""A finite executable model of collections with indistinguishable elements.

A pure collection is represented up to indistinguishability by a map
from kinds to occupation counts: element-level identity is deliberately
unrepresentable, which is exactly the discriminating power weak
extensionality grants.  Exchanging an element for a fresh one of the
same kind is therefore provably unobservable.
"""

from __future__ import annotations

from dataclasses import dataclass

Kind = str


@dataclass(frozen=True)
class PureQset:
    """Finite multiset of kinds; `counts` maps kind label -> occupancy."""

    counts: tuple[tuple[Kind, int], ...] = ()

    def __post_init__(self):
        items = dict(self.counts)
        for k, c in items.items():
            if c < 0:
                raise ValueError(f"negative count for kind {k!r}")
        cleaned = tuple(sorted((k, c) for k, c in items.items() if c > 0))
        object.__setattr__(self, "counts", cleaned)

    def count(self, kind: Kind) -> int:
        return dict(self.counts).get(kind, 0)

    def as_dict(self) -> dict[Kind, int]:
        return dict(self.counts)


def pure_qset(counts: dict[Kind, int] | None = None) -> PureQset:
    return PureQset(tuple((counts or {}).items()))


def qcard(x: PureQset) -> int:
    """Quasi-cardinal: total occupancy, with no element identities beneath it."""
    return sum(c for _, c in x.counts)


def indistinguishable(x: PureQset, y: PureQset) -> bool:
    """Weak extensionality: equal quantity of elements of each kind."""
    return x.counts == y.counts


def add_one(x: PureQset, kind: Kind) -> PureQset:
    d = x.as_dict()
    d[kind] = d.get(kind, 0) + 1
    return pure_qset(d)


def remove_one(x: PureQset, kind: Kind) -> PureQset:
    d = x.as_dict()
    if d.get(kind, 0) < 1:
        raise ValueError(f"no element of kind {kind!r} to remove")
    d[kind] -= 1
    return pure_qset(d)


def permutation_theorem_check(x: PureQset, kind: Kind) -> bool:
    """Exchange one element for a fresh indistinguishable one; compare.

    The ambient universe is treated as inexhaustible per kind, so a fresh
    element of the same kind always exists outside x.
    """
    if x.count(kind) < 1:
        raise ValueError(f"no element of kind {kind!r} in the collection")
    return indistinguishable(add_one(remove_one(x, kind), kind), x)
