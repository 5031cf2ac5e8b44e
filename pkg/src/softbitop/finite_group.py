"""Cayley-table groups, soft groups and the soft-element group (SE(F), ∗)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Sequence

from .core_sets import SEIndex, SESubset, SoftSet, Universe, bits
from .errors import AxiomViolation, CapExceeded, ShapeError
from .finite_topology import CarrierMap
from .verdict import Verdict

SE_GROUP_TABLE_CAP = 4096


@dataclass(frozen=True)
class FiniteGroup:
    labels: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    identity: int
    inverses: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.labels)

    @cached_property
    def universe(self) -> Universe:
        return Universe(self.labels)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def index(self, label: str) -> int:
        return self.universe.index(label)

    @property
    def full(self) -> int:
        return (1 << self.order) - 1

    def is_subgroup(self, mask: int) -> bool:
        if not mask >> self.identity & 1:
            return False
        elems = list(bits(mask))
        return all(self.inverses[a] in elems for a in elems) and all(
            mask >> self.table[a][b] & 1 for a in elems for b in elems
        )

    def generated(self, mask: int) -> int:
        """Subgroup generated by the elements of ``mask``."""
        H = mask | 1 << self.identity
        while True:
            grown = H
            for a in bits(H):
                for b in bits(H):
                    grown |= 1 << self.table[a][b]
            if grown == H:
                return H
            H = grown

    def subgroups(self) -> list[int]:
        """All subgroups as bitmasks, ascending."""
        found = {1 << self.identity}
        frontier = list(found)
        while frontier:
            S = frontier.pop()
            for g in range(self.order):
                if not S >> g & 1:
                    T = self.generated(S | 1 << g)
                    if T not in found:
                        found.add(T)
                        frontier.append(T)
        return sorted(found)

    def is_normal(self, mask: int) -> bool:
        return all(
            mask >> self.table[self.table[g][k]][self.inverses[g]] & 1
            for g in range(self.order)
            for k in bits(mask)
        )

    def restrict(self, mask: int) -> tuple["FiniteGroup", tuple[int, ...]]:
        """The subgroup on ``mask`` re-indexed densely, plus the dense-to-global index list."""
        if not self.is_subgroup(mask):
            raise AxiomViolation(f"{self.universe.labels_of(mask)} is not a subgroup")
        elems = tuple(bits(mask))
        pos = {g: i for i, g in enumerate(elems)}
        table = tuple(tuple(pos[self.table[a][b]] for b in elems) for a in elems)
        sub = FiniteGroup(
            tuple(self.labels[g] for g in elems),
            table,
            pos[self.identity],
            tuple(pos[self.inverses[a]] for a in elems),
        )
        return sub, elems


def _validate(labels, table, identity) -> None:
    n = len(labels)
    for a in range(n):
        if table[identity][a] != a or table[a][identity] != a:
            raise AxiomViolation(
                f"{labels[identity]!r} is not a two-sided identity (fails at {labels[a]!r})",
                {"axiom": "identity", "element": labels[a]},
            )
    for a in range(n):
        row_a = table[a]
        for b in range(n):
            ab = row_a[b]
            row_ab, row_b = table[ab], table[b]
            for c in range(n):
                if row_ab[c] != table[a][row_b[c]]:
                    raise AxiomViolation(
                        f"associativity fails at ({labels[a]}, {labels[b]}, {labels[c]})",
                        {"axiom": "associativity", "triple": (labels[a], labels[b], labels[c])},
                    )
    for a in range(n):
        if len(set(table[a])) != n:
            raise AxiomViolation(f"row {labels[a]!r} is not a permutation",
                                 {"axiom": "latin", "row": labels[a]})
        column = {table[b][a] for b in range(n)}
        if len(column) != n:
            raise AxiomViolation(f"column {labels[a]!r} is not a permutation",
                                 {"axiom": "latin", "column": labels[a]})


def make_group(labels: Sequence[str], table: Sequence[Sequence[str]], identity_label: str) -> FiniteGroup:
    """Validate a Cayley table given by labels and return the group.

    Raises ``AxiomViolation`` naming the first failing axiom, checked in the
    order identity, associativity, Latin rows/columns.
    """
    labels = tuple(labels)
    u = Universe(labels)
    n = len(labels)
    if len(table) != n or any(len(row) != n for row in table):
        raise ShapeError(f"Cayley table must be {n}x{n}")
    itable = tuple(tuple(u.index(x) for x in row) for row in table)
    e = u.index(identity_label)
    _validate(labels, itable, e)
    inverses = tuple(itable[a].index(e) for a in range(n))
    return FiniteGroup(labels, itable, e, inverses)


def group_from_indices(labels: Sequence[str], table: Sequence[Sequence[int]], identity: int) -> FiniteGroup:
    """Unvalidated constructor for tables built by trusted code."""
    table = tuple(tuple(r) for r in table)
    inverses = tuple(table[a].index(identity) for a in range(len(labels)))
    return FiniteGroup(tuple(labels), table, identity, inverses)


def cyclic_group(n: int) -> FiniteGroup:
    return group_from_indices([str(i) for i in range(n)],
                              [[(a + b) % n for b in range(n)] for a in range(n)], 0)


def klein_four() -> FiniteGroup:
    labels = ["e", "a", "b", "c"]
    return group_from_indices(labels, [[a ^ b for b in range(4)] for a in range(4)], 0)


def dihedral_group(n: int) -> FiniteGroup:
    """Dihedral group of order ``2n``: labels e, r, r2, …, s, sr, sr2, … with ``s r s = r⁻¹``.

    ``sr^k`` denotes the product ``s·r^k``.
    """
    def label(f, k):
        rk = "" if k == 0 else ("r" if k == 1 else f"r{k}")
        if f:
            return "s" + rk
        return rk or "e"

    elems = [(f, k) for f in (0, 1) for k in range(n)]
    pos = {x: i for i, x in enumerate(elems)}

    def mul(x, y):
        (f1, k1), (f2, k2) = x, y
        return ((f1 + f2) % 2, ((-k1 if f2 else k1) + k2) % n)

    table = [[pos[mul(x, y)] for y in elems] for x in elems]
    return group_from_indices([label(*x) for x in elems], table, 0)


def product_group(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """Direct product, pair ``(g, h)`` at index ``g * |H| + h``."""
    m = H.order
    labels = [f"({g},{h})" for g in G.labels for h in H.labels]
    table = [[G.mul(a // m, b // m) * m + H.mul(a % m, b % m) for b in range(G.order * m)]
             for a in range(G.order * m)]
    return group_from_indices(labels, table, G.identity * m + H.identity)


# -- soft groups --------------------------------------------------------------

@dataclass(frozen=True)
class SoftGroup:
    group: FiniteGroup
    carrier: SoftSet

    def __post_init__(self):
        if self.carrier.universe != self.group.universe:
            raise ShapeError("soft set universe is not the group's element set")
        report = is_soft_group(self.carrier, self.group)
        if not report:
            raise AxiomViolation(f"not a soft group: {report.witness}", report.witness)

    @property
    def params(self) -> tuple[str, ...]:
        return self.carrier.params

    def section_group(self, t: int) -> tuple[FiniteGroup, tuple[int, ...]]:
        return self.group.restrict(self.carrier.sections[t])


def is_soft_group(F: SoftSet, G: FiniteGroup) -> Verdict:
    """Every section must contain the identity and be closed under products and inverses."""
    if F.universe != G.universe:
        raise ShapeError("soft set universe is not the group's element set")
    per_param = {}
    witness = None
    for p, s in zip(F.params, F.sections):
        if not s >> G.identity & 1:
            per_param[p] = "missing identity"
        elif any(not s >> G.inverses[a] & 1 for a in bits(s)):
            per_param[p] = "not closed under inverses"
        elif any(not s >> G.table[a][b] & 1 for a in bits(s) for b in bits(s)):
            per_param[p] = "not closed under products"
        else:
            per_param[p] = "subgroup"
        if per_param[p] != "subgroup" and witness is None:
            witness = {"parameter": p, "reason": per_param[p]}
    return Verdict(witness is None, witness, {"sections": per_param})


class SEGroup:
    """The soft-element group of a soft group, on mixed-radix SE indices."""

    def __init__(self, F: SoftGroup, cap: int | None = None):
        self.soft_group = F
        self.index = SEIndex(F.carrier, cap) if cap else SEIndex(F.carrier)
        G = F.group
        self.identity = self.index.index((G.identity,) * len(F.params))

    @property
    def order(self) -> int:
        return len(self.index)

    def mul(self, i: int, j: int) -> int:
        G = self.soft_group.group
        a, b = self.index.unindex(i), self.index.unindex(j)
        return self.index.index(tuple(G.table[x][y] for x, y in zip(a, b)))

    def inv(self, i: int) -> int:
        G = self.soft_group.group
        return self.index.index(tuple(G.inverses[x] for x in self.index.unindex(i)))

    def op(self, kind: str, *operands: int) -> int:
        n = self.order
        for i in operands:
            if not 0 <= i < n:
                raise IndexError(f"soft element index {i} out of range 0..{n - 1}")
        if kind == "identity":
            return self.identity
        if kind == "inv":
            (a,) = operands
            return self.inv(a)
        if kind == "mul":
            a, b = operands
            return self.mul(a, b)
        raise ValueError(f"unknown operation {kind!r}")

    def as_group(self, cap: int = SE_GROUP_TABLE_CAP) -> FiniteGroup:
        n = self.order
        if n * n > cap * cap:
            raise CapExceeded(f"SE group of order {n} exceeds table cap {cap}")
        labels = [",".join(self.index.labels(i)) for i in range(n)]
        table = [[self.mul(i, j) for j in range(n)] for i in range(n)]
        return group_from_indices(labels, table, self.identity)


def se_group_op(kind: str, F: SoftGroup, *operands: int) -> int:
    return SEGroup(F).op(kind, *operands)


def translation_map(S: SEGroup, a: int, side: str) -> CarrierMap:
    """Left translation ``x ↦ a∗x``, right translation ``x ↦ x∗a`` or inversion."""
    n = S.order
    if not 0 <= a < n:
        raise IndexError(f"soft element index {a} out of range 0..{n - 1}")
    if side == "left":
        table = tuple(S.mul(a, x) for x in range(n))
    elif side == "right":
        table = tuple(S.mul(x, a) for x in range(n))
    elif side == "inversion":
        table = tuple(S.inv(x) for x in range(n))
    else:
        raise ValueError(f"side must be left, right or inversion, not {side!r}")
    return CarrierMap(n, n, table)


# -- homomorphisms ------------------------------------------------------------

@dataclass(frozen=True)
class HomResult:
    map: CarrierMap
    is_hom: bool
    kernel: SESubset
    image: SESubset
    kernel_normal: bool
    image_subgroup: bool


def is_se_homomorphism(f: CarrierMap, src: SEGroup, dst: SEGroup) -> Verdict:
    """Exhaustive check of ``f(a∗b) = f(a)∗f(b)``; witness is the first failing pair."""
    if f.source_size != src.order or f.target_size != dst.order:
        raise ShapeError("map shape does not match the soft-element groups")
    for a in range(src.order):
        for b in range(src.order):
            if f(src.mul(a, b)) != dst.mul(f(a), f(b)):
                return Verdict(False, {"pair": (a, b)})
    return Verdict(True)


def kernel_and_image(f: CarrierMap, src: SEGroup, dst: SEGroup) -> tuple[frozenset[int], frozenset[int]]:
    kernel = frozenset(a for a in range(src.order) if f(a) == dst.identity)
    image = frozenset(f.table)
    return kernel, image


def is_normal_subset(S: SEGroup, members: frozenset[int]) -> bool:
    if S.identity not in members:
        return False
    if not is_subgroup_subset(S, members):
        return False
    return all(S.mul(S.mul(g, k), S.inv(g)) in members for g in range(S.order) for k in members)


def is_subgroup_subset(S: SEGroup, members: frozenset[int]) -> bool:
    return (
        S.identity in members
        and all(S.inv(a) in members for a in members)
        and all(S.mul(a, b) in members for a in members for b in members)
    )


def parameterwise_hom(
    phis: Sequence[Mapping[int, int]], F: SoftGroup, H: SoftGroup
) -> HomResult:
    """Assemble ``(φ(a))(t) = φ_t(a(t))`` from per-parameter element maps.

    Each ``phis[t]`` maps group indices of ``F(t)`` to group indices of
    ``H(t)``; entries outside ``F(t)`` are ignored.
    """
    if F.params != H.params:
        raise ShapeError("parameterwise maps need a shared parameter set")
    if len(phis) != len(F.params):
        raise ShapeError("one element map per parameter is required")
    G, K = F.group, H.group
    is_hom = True
    for t, phi in enumerate(phis):
        src_sec, dst_sec = F.carrier.sections[t], H.carrier.sections[t]
        for x in bits(src_sec):
            if x not in phi:
                raise ShapeError(f"map at parameter {F.params[t]!r} is undefined on {G.labels[x]!r}")
            if not dst_sec >> phi[x] & 1:
                raise ShapeError(
                    f"map at parameter {F.params[t]!r} sends {G.labels[x]!r} outside H(t)"
                )
        if is_hom:
            is_hom = all(
                phi[G.table[x][y]] == K.table[phi[x]][phi[y]]
                for x in bits(src_sec)
                for y in bits(src_sec)
            )
    src, dst = SEGroup(F), SEGroup(H)
    table = tuple(
        dst.index.index(tuple(phis[t][x] for t, x in enumerate(a))) for a in src.index
    )
    f = CarrierMap(src.order, dst.order, table)
    kernel, image = kernel_and_image(f, src, dst)
    return HomResult(
        map=f,
        is_hom=is_hom,
        kernel=SESubset(F.carrier, kernel),
        image=SESubset(H.carrier, image),
        kernel_normal=is_normal_subset(src, kernel) if is_hom else False,
        image_subgroup=is_subgroup_subset(dst, image) if is_hom else False,
    )


def labels_to_index_map(G: FiniteGroup, mapping: Mapping[str, str]) -> dict[int, int]:
    return {G.index(k): G.index(v) for k, v in mapping.items()}


def soft_subgroups(F: SoftGroup) -> list[SoftSet]:
    """Every soft subgroup ``H ⊆_s F`` (all sections subgroups), in canonical order."""
    per_t = [[m for m in F.group.subgroups() if m & ~s == 0] for s in F.carrier.sections]
    return [F.carrier.with_sections(c) for c in itertools.product(*per_t)]

