"""Finite soft sets, soft elements and the canonical enumeration of SE(F).

Subsets of a finite carrier are Python ints used as bitmasks: bit ``i`` set
means element ``i`` is present.  A soft set is one such mask per parameter.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import prod
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import CapExceeded, ShapeError, UnknownLabel

SE_ENUMERATION_CAP = 4096


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


@dataclass(frozen=True)
class Universe:
    labels: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise ValueError(f"duplicate universe labels in {self.labels!r}")

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def full(self) -> int:
        return (1 << len(self.labels)) - 1

    @cached_property
    def _index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownLabel(f"unknown element label {label!r}") from None

    def mask(self, labels: Iterable[str]) -> int:
        return mask_of(self.index(lab) for lab in labels)

    def labels_of(self, mask: int) -> list[str]:
        return [self.labels[i] for i in bits(mask)]


@dataclass(frozen=True)
class SoftSet:
    """A map from parameters to subsets of a universe, stored sectionwise."""

    universe: Universe
    params: tuple[str, ...]
    sections: tuple[int, ...]

    def __post_init__(self):
        if len(self.sections) != len(self.params):
            raise ShapeError(
                f"{len(self.sections)} sections given for {len(self.params)} parameters"
            )
        if any(s & ~self.universe.full for s in self.sections):
            raise ShapeError("section mask has bits outside the universe")

    @property
    def eligible(self) -> bool:
        """True when every section is nonempty, i.e. SE(F) is nonempty."""
        return all(self.sections)

    @property
    def is_empty(self) -> bool:
        return not any(self.sections)

    def section(self, t: int | str) -> int:
        if isinstance(t, str):
            t = self.params.index(t)
        return self.sections[t]

    def sizes(self) -> tuple[int, ...]:
        return tuple(popcount(s) for s in self.sections)

    def se_count(self) -> int:
        return prod(self.sizes())

    def contains_element(self, choices: Sequence[int]) -> bool:
        """Soft membership ``a in_s F``."""
        return all(s >> c & 1 for s, c in zip(self.sections, choices))

    def with_sections(self, sections: Sequence[int]) -> "SoftSet":
        return SoftSet(self.universe, self.params, tuple(sections))

    def empty(self) -> "SoftSet":
        return self.with_sections((0,) * len(self.params))

    def to_labels(self) -> dict[str, list[str]]:
        return {p: self.universe.labels_of(s) for p, s in zip(self.params, self.sections)}

    def sort_key(self) -> tuple[int, ...]:
        return self.sections

    def __repr__(self):
        body = ", ".join(
            f"{p}: {{{', '.join(self.universe.labels_of(s))}}}"
            for p, s in zip(self.params, self.sections)
        )
        return f"SoftSet({body})"


def make_soft_set(
    universe: Universe,
    params: Sequence[str],
    sections: Sequence[Iterable[str]] | Mapping[str, Iterable[str]],
) -> SoftSet:
    """Build a soft set from per-parameter label collections.

    ``sections`` is either a sequence aligned with ``params`` or a mapping
    from parameter label to element labels.  Check ``.eligible`` to learn
    whether the result has soft elements.
    """
    params = tuple(params)
    if len(set(params)) != len(params) or not params:
        raise ShapeError("parameter labels must be nonempty and distinct")
    if isinstance(sections, Mapping):
        extra = set(sections) - set(params)
        if extra:
            raise UnknownLabel(f"unknown parameter(s) {sorted(extra)}")
        missing = [p for p in params if p not in sections]
        if missing:
            raise ShapeError(f"no section given for parameter(s) {missing}")
        sections = [sections[p] for p in params]
    if len(sections) != len(params):
        raise ShapeError(f"{len(sections)} sections given for {len(params)} parameters")
    return SoftSet(universe, params, tuple(universe.mask(s) for s in sections))


def _check_shape(F: SoftSet, H: SoftSet) -> None:
    if F.universe != H.universe or F.params != H.params:
        raise ShapeError("soft sets live over different universes or parameter sets")


def soft_subset(H: SoftSet, F: SoftSet) -> bool:
    """``H ⊆_s F``: every section of H sits inside the matching section of F."""
    _check_shape(H, F)
    return all(h & ~f == 0 for h, f in zip(H.sections, F.sections))


def soft_union(F: SoftSet, H: SoftSet) -> SoftSet:
    _check_shape(F, H)
    return F.with_sections(tuple(f | h for f, h in zip(F.sections, H.sections)))


def soft_intersection(F: SoftSet, H: SoftSet) -> SoftSet:
    _check_shape(F, H)
    return F.with_sections(tuple(f & h for f, h in zip(F.sections, H.sections)))


def soft_combine(op: str, F: SoftSet, H: SoftSet) -> SoftSet:
    if op == "union":
        return soft_union(F, H)
    if op == "intersection":
        return soft_intersection(F, H)
    raise ValueError(f"unknown soft operation {op!r}")


@dataclass(frozen=True)
class SEIndex:
    """Mixed-radix indexing of SE(F), last parameter varying fastest.

    Within a section, elements are ranked by ascending universe index.
    """

    shape: SoftSet
    cap: int = SE_ENUMERATION_CAP

    def __post_init__(self):
        if not self.shape.eligible:
            empty = [p for p, s in zip(self.shape.params, self.shape.sections) if not s]
            raise ShapeError(f"soft set has empty section(s) {empty}; SE(F) is empty")
        n = self.shape.se_count()
        if n > self.cap:
            raise CapExceeded(f"|SE(F)| = {n} exceeds enumeration cap {self.cap}")

    @cached_property
    def choices(self) -> tuple[tuple[int, ...], ...]:
        """Per parameter, the admissible element indices in ascending order."""
        return tuple(tuple(bits(s)) for s in self.shape.sections)

    @cached_property
    def radices(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.choices)

    @cached_property
    def _rank(self) -> tuple[dict[int, int], ...]:
        return tuple({x: i for i, x in enumerate(c)} for c in self.choices)

    def __len__(self) -> int:
        return prod(self.radices)

    def index(self, a: Sequence[int]) -> int:
        i = 0
        for rank, radix, x in zip(self._rank, self.radices, a):
            try:
                i = i * radix + rank[x]
            except KeyError:
                raise ShapeError(f"choice {a!r} is not a soft element of the shape") from None
        return i

    def unindex(self, i: int) -> tuple[int, ...]:
        if not 0 <= i < len(self):
            raise IndexError(f"soft element index {i} out of range 0..{len(self) - 1}")
        out = []
        for c, radix in zip(reversed(self.choices), reversed(self.radices)):
            i, r = divmod(i, radix)
            out.append(c[r])
        return tuple(reversed(out))

    @cached_property
    def elements(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.unindex(i) for i in range(len(self)))

    def __iter__(self):
        return iter(self.elements)

    def indices_of(self, H: SoftSet) -> list[int]:
        """Indices of SE(H) ∩ SE(shape), ascending; empty when a section meets nothing."""
        per_t = []
        for rank, h in zip(self._rank, H.sections):
            ranks = [r for x, r in rank.items() if h >> x & 1]
            if not ranks:
                return []
            per_t.append(sorted(ranks))
        out = [0]
        for ranks, radix in zip(per_t, self.radices):
            out = [i * radix + r for i in out for r in ranks]
        return out

    def members_of(self, H: SoftSet) -> frozenset[int]:
        return frozenset(self.indices_of(H))

    def labels(self, i: int) -> list[str]:
        u = self.shape.universe
        return [u.labels[x] for x in self.unindex(i)]


def enumerate_se(F: SoftSet, cap: int = SE_ENUMERATION_CAP) -> SEIndex:
    return SEIndex(F, cap)


@dataclass(frozen=True)
class SESubset:
    """A set of soft elements of ``shape`` given by their mixed-radix indices."""

    shape: SoftSet
    members: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        n = self.shape.se_count()
        if any(not 0 <= m < n for m in self.members):
            raise ShapeError(f"SE index out of range 0..{n - 1}")

    @classmethod
    def of(cls, H: SoftSet, shape: SoftSet) -> "SESubset":
        """SE(H) as a subset of SE(shape)."""
        return cls(shape, enumerate_se(shape, cap=max(SE_ENUMERATION_CAP, shape.se_count())).members_of(H))

    def __len__(self):
        return len(self.members)


def sections_of(T: SESubset) -> SoftSet:
    """The sectionwise image ``T(t) = {a(t) : a in T}``."""
    idx = SEIndex(T.shape, cap=max(SE_ENUMERATION_CAP, T.shape.se_count()))
    secs = [0] * len(T.shape.params)
    for m in T.members:
        for t, x in enumerate(idx.unindex(m)):
            secs[t] |= 1 << x
    return T.shape.with_sections(secs)


def is_section_product_closed(T: SESubset) -> bool:
    """True iff T equals the full soft-element set of its own sections."""
    if not T.members:
        return True
    return len(T.members) == sections_of(T).se_count()


def strict_union_extra(F: SoftSet, H: SoftSet) -> tuple[int, ...] | None:
    """First soft element of ``F ∪_s H`` lying in neither SE(F) nor SE(H).

    Searched in the canonical order of SE(F ∪_s H); ``None`` when the
    inclusion SE(F) ∪ SE(H) ⊆ SE(F ∪_s H) is an equality.
    """
    U = soft_union(F, H)
    if not U.eligible:
        return None
    for a in SEIndex(U, cap=max(SE_ENUMERATION_CAP, U.se_count())):
        if not F.contains_element(a) and not H.contains_element(a):
            return a
    return None
