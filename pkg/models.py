"""
Immutable value types shared by every module.

Subsets are integer bit-patterns over a fixed universe size. All values are
frozen after construction; operations return new values.
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, NewType, Optional, Union

from exceptions import (
    CoverageError,
    DuplicateNameError,
    EmptyBlockError,
    EmptyUniverseError,
    OutOfUniverseError,
    OverlapError,
    SemanticError,
    UnknownElementError,
    UniverseMismatchError,
)

RankValue = NewType("RankValue", int)


# ============ BIT HELPERS ============


def popcount(mask: int) -> int:
    return mask.bit_count()


def bits_of(mask: int) -> Iterator[int]:
    """Indices of the set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def submasks(mask: int) -> Iterator[int]:
    """Every submask of `mask` in ascending integer order, including 0 and `mask`."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def mask_of(elements: Iterable[int]) -> int:
    mask = 0
    for e in elements:
        mask |= 1 << e
    return mask


def compress(mask: int, positions: tuple) -> int:
    """Re-index `mask` onto 0..len(positions)-1; bits outside `positions` are dropped."""
    out = 0
    for i, p in enumerate(positions):
        if mask >> p & 1:
            out |= 1 << i
    return out


def expand(mask: int, positions: tuple) -> int:
    """Inverse of `compress`: local index i maps to positions[i]."""
    out = 0
    for i in bits_of(mask):
        out |= 1 << positions[i]
    return out


# ============ SUBSET ============


@dataclass(frozen=True, order=True)
class Subset:
    """A subset of {0..size-1}; canonical order is by bit-pattern value."""

    size: int
    bits: int = 0

    def __post_init__(self):
        if self.size < 0:
            raise ValueError("size must be non-negative")
        if self.bits < 0:
            raise ValueError("bits must be non-negative")
        if self.bits >> self.size:
            raise OutOfUniverseError(self.bits.bit_length() - 1, self.size)

    @classmethod
    def of(cls, size: int, elements: Iterable[int] = ()) -> "Subset":
        mask = 0
        for e in elements:
            if not 0 <= e < size:
                raise OutOfUniverseError(e, size)
            mask |= 1 << e
        return cls(size, mask)

    @classmethod
    def empty(cls, size: int) -> "Subset":
        return cls(size, 0)

    @classmethod
    def full(cls, size: int) -> "Subset":
        return cls(size, (1 << size) - 1)

    def __contains__(self, element: int) -> bool:
        return 0 <= element < self.size and bool(self.bits >> element & 1)

    def __iter__(self) -> Iterator[int]:
        return bits_of(self.bits)

    def __len__(self) -> int:
        return popcount(self.bits)

    def _same_universe(self, other: "Subset") -> None:
        if other.size != self.size:
            raise UniverseMismatchError(self.size, other.size)

    def __or__(self, other: "Subset") -> "Subset":
        self._same_universe(other)
        return Subset(self.size, self.bits | other.bits)

    def __and__(self, other: "Subset") -> "Subset":
        self._same_universe(other)
        return Subset(self.size, self.bits & other.bits)

    def __sub__(self, other: "Subset") -> "Subset":
        self._same_universe(other)
        return Subset(self.size, self.bits & ~other.bits)

    def complement(self) -> "Subset":
        return Subset(self.size, ~self.bits & ((1 << self.size) - 1))

    def issubset(self, other: "Subset") -> bool:
        self._same_universe(other)
        return self.bits & ~other.bits == 0

    def isdisjoint(self, other: "Subset") -> bool:
        self._same_universe(other)
        return self.bits & other.bits == 0

    def add(self, element: int) -> "Subset":
        if not 0 <= element < self.size:
            raise OutOfUniverseError(element, self.size)
        return Subset(self.size, self.bits | 1 << element)

    def __repr__(self) -> str:
        return f"Subset({{{', '.join(map(str, self))}}} / {self.size})"


# ============ UNIVERSE ============


@dataclass(frozen=True)
class Universe:
    """A nonempty finite universe, optionally with display names."""

    size: int
    names: Optional[tuple] = None

    def __post_init__(self):
        if self.size < 1:
            raise EmptyUniverseError()
        if self.names is not None:
            names = tuple(str(n) for n in self.names)
            object.__setattr__(self, "names", names)
            if len(names) != self.size:
                raise SemanticError(
                    f"{len(names)} names given for a universe of size {self.size}"
                )
            seen = set()
            for name in names:
                if name in seen:
                    raise DuplicateNameError(name)
                seen.add(name)

    @classmethod
    def from_names(cls, names: Iterable[str]) -> "Universe":
        names = tuple(names)
        if not names:
            raise EmptyUniverseError()
        return cls(len(names), names)

    @cached_property
    def _index(self) -> dict:
        return {name: i for i, name in enumerate(self.labels_all())}

    def labels_all(self) -> tuple:
        if self.names is None:
            return tuple(str(i) for i in range(self.size))
        return self.names

    def label(self, element: int) -> str:
        if not 0 <= element < self.size:
            raise OutOfUniverseError(element, self.size)
        return self.names[element] if self.names is not None else str(element)

    def labels(self, subset: Union[Subset, int]) -> list:
        mask = subset.bits if isinstance(subset, Subset) else subset
        return [self.label(i) for i in bits_of(mask)]

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownElementError(name) from None

    def subset(self, names: Iterable[str]) -> Subset:
        return Subset.of(self.size, (self.index(n) for n in names))

    def full(self) -> Subset:
        return Subset.full(self.size)

    def empty(self) -> Subset:
        return Subset.empty(self.size)


# ============ PARTITION ============


@dataclass(frozen=True)
class Partition:
    """The quotient U/R. Blocks are stored sorted by their minimum element."""

    universe: Universe
    blocks: tuple

    def __post_init__(self):
        n = self.universe.size
        blocks = tuple(self.blocks)
        for position, block in enumerate(blocks):
            if block.size != n:
                raise UniverseMismatchError(n, block.size)
            if not block.bits:
                raise EmptyBlockError(position)
        owner = {}
        for position, block in enumerate(blocks):
            for e in block:
                if e in owner:
                    raise OverlapError(self.universe.label(e), owner[e], position)
                owner[e] = position
        missing = [self.universe.label(e) for e in range(n) if e not in owner]
        if missing:
            raise CoverageError(missing)
        blocks = tuple(sorted(blocks, key=lambda b: b.bits & -b.bits))
        object.__setattr__(self, "blocks", blocks)

    @property
    def size(self) -> int:
        return self.universe.size

    def __len__(self) -> int:
        return len(self.blocks)

    @cached_property
    def block_masks(self) -> tuple:
        return tuple(b.bits for b in self.blocks)

    @cached_property
    def class_index(self) -> tuple:
        """Block position of every element."""
        owner = [0] * self.size
        for position, mask in enumerate(self.block_masks):
            for e in bits_of(mask):
                owner[e] = position
        return tuple(owner)

    def block_sizes(self) -> tuple:
        return tuple(popcount(m) for m in self.block_masks)


# ============ SET FAMILY ============


@dataclass(frozen=True)
class SetFamily:
    """Duplicate-free family of subsets of {0..size-1}, ascending by bit-pattern."""

    size: int
    masks: tuple = ()

    def __post_init__(self):
        masks = tuple(sorted(set(self.masks)))
        if masks and (masks[0] < 0 or masks[-1] >> self.size):
            bad = masks[0] if masks[0] < 0 else masks[-1]
            raise OutOfUniverseError(bad.bit_length() - 1, self.size)
        object.__setattr__(self, "masks", masks)

    @classmethod
    def of(cls, size: int, sets: Iterable = ()) -> "SetFamily":
        masks = []
        for s in sets:
            if isinstance(s, Subset):
                if s.size != size:
                    raise UniverseMismatchError(size, s.size)
                masks.append(s.bits)
            else:
                masks.append(int(s))
        return cls(size, tuple(masks))

    @cached_property
    def mask_set(self) -> frozenset:
        return frozenset(self.masks)

    @property
    def sets(self) -> tuple:
        return tuple(Subset(self.size, m) for m in self.masks)

    def __iter__(self) -> Iterator[Subset]:
        return iter(self.sets)

    def __len__(self) -> int:
        return len(self.masks)

    def __contains__(self, item) -> bool:
        if isinstance(item, Subset):
            return item.size == self.size and item.bits in self.mask_set
        return item in self.mask_set

    def __repr__(self) -> str:
        inner = ", ".join("{" + ",".join(map(str, bits_of(m))) + "}" for m in self.masks)
        return f"SetFamily({self.size}: [{inner}])"


# ============ MATROID ============


@dataclass(frozen=True)
class Matroid:
    """Ground-set size plus an explicit independent-set family.

    Build through `matroid_engine.build_matroid`, which enforces I1-I3, or
    `matroid_engine.dual` of a matroid built that way.
    `origin[i]` is the root-universe index of local element i; minors carry
    it so their families can be compared in the parent universe.
    """

    size: int
    independents: SetFamily
    origin: Optional[tuple] = None
    root_size: Optional[int] = field(default=None)

    def __post_init__(self):
        if self.independents.size != self.size:
            raise UniverseMismatchError(self.size, self.independents.size)
        if self.origin is None:
            object.__setattr__(self, "origin", tuple(range(self.size)))
        else:
            object.__setattr__(self, "origin", tuple(self.origin))
        if len(self.origin) != self.size:
            raise ValueError("origin must map every local element")
        if self.root_size is None:
            object.__setattr__(self, "root_size", self.size)

    @property
    def ground_mask(self) -> int:
        return (1 << self.size) - 1

    @cached_property
    def independent_set(self) -> frozenset:
        return self.independents.mask_set

    @cached_property
    def greedy_table(self) -> tuple:
        """Greedy (ascending-element) basis of every subset, indexed by mask."""
        table = [0] * (1 << self.size)
        indep = self.independent_set
        for mask in range(1, 1 << self.size):
            high = 1 << (mask.bit_length() - 1)
            below = table[mask ^ high]
            table[mask] = below | high if (below | high) in indep else below
        return tuple(table)

    @cached_property
    def rank_table(self) -> tuple:
        return tuple(popcount(b) for b in self.greedy_table)


# ============ INDUCED MATROIDS ============


@dataclass(frozen=True)
class InducedMatroid:
    """The matroid whose independent sets contain no whole block of `partition`."""

    partition: Partition
    matroid: Matroid


@dataclass(frozen=True)
class DualInducedMatroid:
    """Dual of an InducedMatroid: partial transversals independent, transversals as bases."""

    partition: Partition
    matroid: Matroid
