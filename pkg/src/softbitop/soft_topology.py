"""Soft topologies on a soft set F and their induced topologies on SE(F).

A soft topology is held either as an explicit sorted member list or, when
it is canonical, symbolically by its component topologies (the member list
is then the cartesian product of the component families, produced lazily).

Component topologies live on the dense carrier ``0..|F(t)|-1`` obtained by
ranking the elements of ``F(t)`` by universe index.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from math import prod
from typing import Iterable, Iterator, Sequence

import numpy as np

from .core_sets import (
    SE_ENUMERATION_CAP,
    SEIndex,
    SESubset,
    SoftSet,
    bits,
    soft_intersection,
    soft_subset,
    soft_union,
)
from .errors import AxiomViolation, CapExceeded, ShapeError
from .finite_topology import CarrierMap, FiniteTopology, check_topology_axioms, is_continuous
from .verdict import Verdict

ENLARGEMENT_CAP = 100_000
TAU_STAR_CAP = 16
TAU_STAR_HARD_CAP = 22
MEMBER_LIST_CAP = 100_000


def to_dense(mask: int, elems: Sequence[int]) -> int:
    return sum(1 << i for i, x in enumerate(elems) if mask >> x & 1)


def from_dense(dmask: int, elems: Sequence[int]) -> int:
    return sum(1 << elems[i] for i in bits(dmask))


def check_soft_topology(members: Iterable[SoftSet], F: SoftSet) -> Verdict:
    """Check that a family of soft subsets of F is a soft topology on F.

    Pairwise union and intersection closure suffices for finite families.
    Members are scanned in canonical (section-tuple) order and the first
    failing pair, union before intersection, is the witness.
    """
    family = sorted(set(members), key=SoftSet.sort_key)
    for H in family:
        if not soft_subset(H, F):
            raise ShapeError(f"{H!r} is not a soft subset of the ambient soft set")
    present = set(family)
    if F.empty() not in present:
        return Verdict(False, {"kind": "missing-empty", "missing": F.empty()})
    if F not in present:
        return Verdict(False, {"kind": "missing-ambient", "missing": F})
    for i, H in enumerate(family):
        for K in family[i + 1:]:
            U = soft_union(H, K)
            if U not in present:
                return Verdict(False, {"kind": "union", "pair": (H, K), "missing": U})
            V = soft_intersection(H, K)
            if V not in present:
                return Verdict(False, {"kind": "intersection", "pair": (H, K), "missing": V})
    return Verdict(True)


class SoftTopology:
    """A soft topology on ``ambient``; build it with the classmethods."""

    def __init__(self, ambient: SoftSet, members=None, components=None, name: str = ""):
        self.ambient = ambient
        self._members: tuple[SoftSet, ...] | None = members
        self._components: tuple[FiniteTopology, ...] | None = components
        self.name = name

    # construction ------------------------------------------------------

    @classmethod
    def from_members(cls, members: Iterable[SoftSet], F: SoftSet, name: str = "") -> "SoftTopology":
        members = list(members)
        report = check_soft_topology(members, F)
        if not report:
            raise AxiomViolation(f"not a soft topology: {report.witness}", report.witness)
        ordered = tuple(sorted(set(members), key=SoftSet.sort_key))
        return cls(F, members=ordered, name=name)

    @classmethod
    def canonical(cls, F: SoftSet, components: Sequence[FiniteTopology], name: str = "") -> "SoftTopology":
        """All soft subsets of F whose every section is open in its component."""
        components = tuple(components)
        if len(components) != len(F.params):
            raise ShapeError("one component topology per parameter is required")
        for t, (tau, s) in enumerate(zip(components, F.sections)):
            if tau.carrier_size != bin(s).count("1"):
                raise ShapeError(f"component {t} has carrier {tau.carrier_size}, section has {bin(s).count('1')}")
        return cls(F, components=components, name=name)

    @classmethod
    def discrete(cls, F: SoftSet, name: str = "discrete") -> "SoftTopology":
        return cls.canonical(F, [FiniteTopology.discrete(n) for n in F.sizes()], name)

    @classmethod
    def indiscrete(cls, F: SoftSet, name: str = "indiscrete") -> "SoftTopology":
        return cls(F, members=tuple(sorted({F.empty(), F}, key=SoftSet.sort_key)), name=name)

    @classmethod
    def generate(cls, subsets: Iterable[SoftSet], F: SoftSet, name: str = "") -> "SoftTopology":
        """Smallest soft topology on F containing ``subsets``."""
        family = {F.empty(), F}
        for H in subsets:
            if not soft_subset(H, F):
                raise ShapeError(f"{H!r} is not a soft subset of the ambient soft set")
            family.add(H)
        frontier = list(family)
        while frontier:
            H = frontier.pop()
            for K in list(family):
                for new in (soft_union(H, K), soft_intersection(H, K)):
                    if new not in family:
                        family.add(new)
                        frontier.append(new)
            if len(family) > MEMBER_LIST_CAP:
                raise CapExceeded(f"generated soft topology exceeds {MEMBER_LIST_CAP} members")
        return cls(F, members=tuple(sorted(family, key=SoftSet.sort_key)), name=name)

    # structure ---------------------------------------------------------

    @property
    def is_symbolic(self) -> bool:
        return self._members is None

    @cached_property
    def section_elems(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(bits(s)) for s in self.ambient.sections)

    @cached_property
    def components(self) -> tuple[FiniteTopology, ...]:
        if self._components is not None:
            return self._components
        out = []
        for t, elems in enumerate(self.section_elems):
            family = {to_dense(H.sections[t], elems) for H in self._members}
            out.append(FiniteTopology.from_opens(family, len(elems)))
        return tuple(out)

    def component_opens(self, t: int) -> tuple[int, ...]:
        """Opens of the t-th component as universe bitmasks, ascending."""
        elems = self.section_elems[t]
        return tuple(sorted(from_dense(d, elems) for d in self.components[t].opens))

    def count(self) -> int:
        if self._members is not None:
            return len(self._members)
        return prod(len(c.opens) for c in self.components)

    def __len__(self) -> int:
        return self.count()

    @property
    def members(self) -> tuple[SoftSet, ...]:
        if self._members is None:
            n = self.count()
            if n > MEMBER_LIST_CAP:
                raise CapExceeded(f"soft topology has {n} members; listing cap is {MEMBER_LIST_CAP}")
            self._members = tuple(self.iter_members())
        return self._members

    def iter_members(self) -> Iterator[SoftSet]:
        """Members in canonical order; lazy for symbolic topologies."""
        if self._members is not None:
            yield from self._members
            return
        per_t = [self.component_opens(t) for t in range(len(self.ambient.params))]
        for secs in itertools.product(*per_t):
            yield self.ambient.with_sections(secs)

    @cached_property
    def _member_set(self) -> frozenset[SoftSet]:
        return frozenset(self._members) if self._members is not None else frozenset()

    def __contains__(self, H: SoftSet) -> bool:
        if H.universe != self.ambient.universe or H.params != self.ambient.params:
            return False
        if self._members is not None:
            return H in self._member_set
        if not soft_subset(H, self.ambient):
            return False
        return all(
            self.components[t].is_open(to_dense(s, self.section_elems[t]))
            for t, s in enumerate(H.sections)
        )

    def is_canonical(self) -> bool:
        if self._members is None:
            return True
        return len(self._members) == prod(len(c.opens) for c in self.components)

    def neighborhood(self, a: Sequence[int]) -> tuple[int, ...]:
        """Smallest member containing the soft element ``a`` (intersection of all such)."""
        if self._members is None:
            return tuple(
                from_dense(c.nbhd[elems.index(x)], elems)
                for c, elems, x in zip(self.components, self.section_elems, a)
            )
        secs = list(self.ambient.sections)
        for H in self._members:
            if H.contains_element(a):
                secs = [s & h for s, h in zip(secs, H.sections)]
        return tuple(secs)

    def __repr__(self):
        kind = "canonical" if self.is_symbolic else f"{len(self._members)} members"
        return f"SoftTopology({self.name or '?'}, {kind})"


def component_topology(tau: SoftTopology, t: int | str) -> FiniteTopology:
    if isinstance(t, str):
        t = tau.ambient.params.index(t)
    return tau.components[t]


def canonical_enlargement(tau: SoftTopology, cap: int = ENLARGEMENT_CAP) -> SoftTopology:
    """All soft subsets of F whose sections are open in the components of ``tau``."""
    n = prod(len(c.opens) for c in tau.components)
    if n > cap:
        raise CapExceeded(f"canonical enlargement has {n} members; cap is {cap}")
    return SoftTopology.canonical(tau.ambient, tau.components, name=f"{tau.name}_can" if tau.name else "")


def is_canonical(tau: SoftTopology) -> bool:
    return tau.is_canonical()


def noncanonical_gap(tau: SoftTopology) -> SoftSet | None:
    """First member of the canonical enlargement missing from ``tau``.

    Members whose sections are all nonempty (the ones visible on SE(F)) are
    preferred; the search falls back to any missing member.
    """
    if tau.is_canonical():
        return None
    fallback = None
    for H in canonical_enlargement(tau).iter_members():
        if H not in tau:
            if H.eligible:
                return H
            if fallback is None:
                fallback = H
    return fallback


# -- induced topology on SE(F) ------------------------------------------------

def is_open_star(T: SESubset, tau: SoftTopology) -> bool:
    """True iff every section of T is open in the matching component topology."""
    if T.shape != tau.ambient:
        raise ShapeError("SE subset and soft topology have different ambient soft sets")
    idx = SEIndex(T.shape, cap=max(T.shape.se_count(), 1))
    secs = [0] * len(T.shape.params)
    for m in T.members:
        for t, x in enumerate(idx.unindex(m)):
            secs[t] |= 1 << x
    return all(
        tau.components[t].is_open(to_dense(s, tau.section_elems[t])) for t, s in enumerate(secs)
    )


def se_mask(H: SoftSet, idx: SEIndex) -> int:
    """SE(H) ∩ SE(F) as a bitmask over SE indices."""
    return sum(1 << i for i in idx.members_of(H))


def induced_topology(tau: SoftTopology, cap_se: int = SE_ENUMERATION_CAP) -> FiniteTopology:
    """The product topology of the components, on SE-indices.

    ``N(a)`` is the set of soft elements b with ``b(t) ∈ N_t(a(t))`` for
    every t.  Whenever the section-open family on SE(F) is itself a
    topology it coincides with this one; the product topology is what the
    group-theoretic results use, so it is the default induced topology.
    """
    F = tau.ambient
    if not F.eligible:
        raise ShapeError("the induced topology needs every section of F nonempty")
    idx = SEIndex(F, cap=cap_se)
    per_t = []
    for t, elems in enumerate(tau.section_elems):
        per_t.append([tau.components[t].nbhd[i] for i in range(len(elems))])
    nbhd = []
    for a in range(len(idx)):
        ranks, rest = [], a
        for radix in reversed(idx.radices):
            rest, r = divmod(rest, radix)
            ranks.append(r)
        ranks.reverse()
        out = [0]
        for t, (r, radix) in enumerate(zip(ranks, idx.radices)):
            allowed = list(bits(per_t[t][r]))
            out = [i * radix + x for i in out for x in allowed]
        nbhd.append(sum(1 << i for i in out))
    return FiniteTopology(len(idx), tuple(nbhd))


@dataclass(frozen=True)
class TauStar:
    """The section-open family on SE(F) together with the induced topology.

    ``family`` is every subset of SE(F) (as a bitmask over SE indices) whose
    sections are all open, ascending.  ``axioms`` records whether that
    family is itself a topology; the answer is reported as found.
    ``topology`` is the product topology of the components, which equals
    the family exactly when ``axioms.holds``.
    """

    carrier_size: int
    family: tuple[int, ...]
    axioms: Verdict
    topology: FiniteTopology

    @property
    def is_topology(self) -> bool:
        return self.axioms.holds

    @property
    def family_is_product(self) -> bool:
        return self.is_topology and len(self.family) == len(self.topology.opens)

    def __contains__(self, mask: int) -> bool:
        return mask in self._family_set

    @cached_property
    def _family_set(self) -> frozenset[int]:
        return frozenset(self.family)


def _fast_axioms(family: np.ndarray, n: int) -> Verdict:
    """Topology-axiom check for a large family of masks over ``n <= 20`` points."""
    full = (1 << n) - 1
    present = np.zeros(1 << n, dtype=bool)
    present[family] = True
    if not present[0]:
        return Verdict(False, {"kind": "missing-empty", "missing": 0})
    if not present[full]:
        return Verdict(False, {"kind": "missing-full", "missing": full})
    for i, U in enumerate(family[:-1]):
        rest = family[i + 1:]
        union_ok = present[rest | U]
        inter_ok = present[rest & U]
        bad = ~(union_ok & inter_ok)
        if bad.any():
            j = int(np.argmax(bad))
            V = int(rest[j])
            U = int(U)
            if not union_ok[j]:
                return Verdict(False, {"kind": "union", "pair": (U, V), "missing": U | V})
            return Verdict(False, {"kind": "intersection", "pair": (U, V), "missing": U & V})
    return Verdict(True)


def materialize_tau_star(tau: SoftTopology, cap_se: int = TAU_STAR_CAP) -> TauStar:
    """Enumerate every subset of SE(F) and keep those with all sections open."""
    F = tau.ambient
    n = F.se_count() if F.eligible else 0
    if n > cap_se:
        raise CapExceeded(f"|SE(F)| = {n} exceeds induced-family cap {cap_se}")
    if n > TAU_STAR_HARD_CAP:
        raise CapExceeded(f"|SE(F)| = {n} is beyond the {TAU_STAR_HARD_CAP}-element limit of the subset scan")
    idx = SEIndex(F, cap=max(n, 1))
    keep = np.ones(1 << n, dtype=bool)
    for t, elems in enumerate(tau.section_elems):
        pos = {x: i for i, x in enumerate(elems)}
        secs = np.zeros(1, dtype=np.int64)
        for i in range(n):
            bit = 1 << pos[idx.unindex(i)[t]]
            secs = np.concatenate([secs, secs | bit])
        is_open = np.zeros(1 << len(elems), dtype=bool)
        is_open[list(tau.components[t].opens)] = True
        keep &= is_open[secs]
    family = np.nonzero(keep)[0].astype(np.int64)
    axioms = _fast_axioms(family, n) if len(family) > 256 else check_topology_axioms(family.tolist(), n)
    return TauStar(n, tuple(int(m) for m in family), axioms, induced_topology(tau, max(n, 1)))


# -- soft continuity -------------------------------------------------------------

def soft_continuous(
    f: CarrierMap, tau: SoftTopology, sigma: SoftTopology, cap_se: int = TAU_STAR_CAP
) -> Verdict:
    """Soft continuity of a map on soft-element indices, SE(tau) → SE(sigma).

    ``holds`` is the full verdict: continuity between the induced
    topologies.  ``info`` also records the member-only verdict (preimage of
    each SE(V), V in sigma, has open sections under tau) and, when both
    soft-element sets fit ``cap_se``, the family verdict (preimage of every
    section-open subset of SE(sigma) is section-open under tau), plus a flag
    when the verdicts disagree.
    """
    src_idx = SEIndex(tau.ambient)
    dst_idx = SEIndex(sigma.ambient)
    if f.source_size != len(src_idx) or f.target_size != len(dst_idx):
        raise ShapeError("map shape does not match the soft-element sets")

    member_witness = None
    for V in sigma.iter_members():
        pre = frozenset(bits(f.preimage(se_mask(V, dst_idx)))) if V.eligible else frozenset()
        if not is_open_star(SESubset(tau.ambient, pre), tau):
            member_witness = {"soft_open": V, "preimage": sorted(pre)}
            break

    full = is_continuous(f, induced_topology(tau), induced_topology(sigma))
    family_ok = family_witness = None
    if len(src_idx) <= cap_se and len(dst_idx) <= cap_se:
        src_star = materialize_tau_star(tau, cap_se)
        dst_star = materialize_tau_star(sigma, cap_se)
        for W in dst_star.family:
            P = f.preimage(W)
            if P not in src_star:
                family_witness = {"open": W, "preimage": P}
                break
        family_ok = family_witness is None
    info = {
        "member_only": member_witness is None,
        "family": family_ok,
        "full": full.holds,
        "member_witness": member_witness,
        "family_witness": family_witness,
    }
    verdicts = {v for v in (info["member_only"], family_ok, full.holds) if v is not None}
    info["discrepancy"] = len(verdicts) > 1
    return Verdict(full.holds, full.witness, info)
