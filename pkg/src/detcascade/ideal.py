from __future__ import annotations

from dataclasses import dataclass

from .polycore import PolyRing, RingMismatchError


@dataclass(frozen=True)
class IdealData:
    """Generator list of a polynomial ideal; zero and duplicate generators are dropped."""

    generators: tuple
    ring: PolyRing
    label: str = ""

    def __post_init__(self):
        seen = []
        seen_set = set()
        for g in self.generators:
            if g.ring != self.ring:
                raise RingMismatchError("generator outside the ideal's ring")
            if g.is_zero() or g in seen_set:
                continue
            seen.append(g)
            seen_set.add(g)
        object.__setattr__(self, "generators", tuple(seen))

    @classmethod
    def of(cls, gens, ring: PolyRing | None = None, label: str = "") -> IdealData:
        gens = list(gens)
        if ring is None:
            if not gens:
                raise ValueError("ring required for an empty generator list")
            ring = gens[0].ring
        return cls(tuple(gens), ring, label)

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def relabel(self, label: str) -> IdealData:
        return IdealData(self.generators, self.ring, label)
