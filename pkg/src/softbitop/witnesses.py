"""Searches for the small counterexamples that show where inclusions are strict."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .bitop import SoftBitopSpace, pairwise_soft_separation
from .core_sets import SEIndex, SESubset, SoftSet, bits, is_section_product_closed, strict_union_extra
from .errors import CapExceeded
from .finite_topology import pairwise_separation
from .soft_topology import (
    SoftTopology,
    induced_topology,
    is_open_star,
    noncanonical_gap,
)

AUTO_SUBSET_CAP = 4096
PROP3_CANDIDATE_CAP = 64
OPEN_SCAN_CAP = 65536


@dataclass
class WitnessResult:
    target: str
    found: bool
    data: dict
    searched: int


def all_soft_subsets(F: SoftSet, cap: int = AUTO_SUBSET_CAP) -> Iterable[SoftSet]:
    """Every soft subset of F in canonical (section-tuple) order."""
    n = 1
    for s in F.sections:
        n <<= bin(s).count("1")
    if n > cap:
        raise CapExceeded(f"F has {n} soft subsets; cap is {cap}")
    per_t = []
    for s in F.sections:
        elems = list(bits(s))
        per_t.append(sorted(sum(1 << elems[i] for i in bits(d)) for d in range(1 << len(elems))))
    for secs in itertools.product(*per_t):
        yield F.with_sections(secs)


def find_strict_union(candidates: Sequence[SoftSet], F: SoftSet | None = None) -> WitnessResult:
    """First pair (H, K) of eligible candidates with SE(H) ∪ SE(K) ⊊ SE(H ∪_s K).

    Pairs are scanned in canonical order of the candidate list; when none
    qualifies and ``F`` is given, all soft subsets of F are tried next.
    """
    pools = [sorted(set(candidates), key=SoftSet.sort_key)]
    if F is not None:
        pools.append(list(all_soft_subsets(F)))
    searched = 0
    for pool in pools:
        eligible = [H for H in pool if H.eligible]
        for i, H in enumerate(eligible):
            for K in eligible[i + 1:]:
                searched += 1
                extra = strict_union_extra(H, K)
                if extra is not None:
                    return WitnessResult("strict-union", True, {"F": H, "H": K, "element": extra}, searched)
    return WitnessResult("strict-union", False, {}, searched)


def find_non_product_open(tau: SoftTopology, open_cap: int = OPEN_SCAN_CAP) -> WitnessResult:
    """A τ*-open subset of SE(F) that is SE(H) for no soft set H.

    Unions SE(H) ∪ SE(K) of eligible members are tried first: they are
    open in the induced topology and their sections are those of H ∪_s K.
    If none of these works, the opens of the induced topology are scanned
    (at most ``open_cap`` of them).
    """
    F = tau.ambient
    idx = SEIndex(F, cap=max(F.se_count(), 1))
    members = [H for H in tau.iter_members() if H.eligible]
    searched = 0
    for i, H in enumerate(members):
        for K in members[i + 1:]:
            searched += 1
            T = SESubset(F, idx.members_of(H) | idx.members_of(K))
            if is_open_star(T, tau) and not is_section_product_closed(T):
                return WitnessResult("non-product-open", True, {"set": T, "from": (H, K)}, searched)
    for m in induced_topology(tau).opens_capped(open_cap):
        searched += 1
        T = SESubset(F, frozenset(bits(m)))
        if not is_section_product_closed(T):
            return WitnessResult("non-product-open", True, {"set": T, "from": None}, searched)
    return WitnessResult("non-product-open", False, {}, searched)


def find_noncanonical_gap(tau: SoftTopology) -> WitnessResult:
    H = noncanonical_gap(tau)
    return WitnessResult("noncanonical-gap", H is not None, {"soft_set": H} if H else {}, 1)


def _small_topologies(F: SoftSet, limit: int) -> list[SoftTopology]:
    """Soft topologies generated by a single soft subset of F, deduplicated."""
    seen, out = set(), []
    for H in all_soft_subsets(F):
        tau = SoftTopology.generate([H], F)
        key = tau.members
        if key not in seen:
            seen.add(key)
            out.append(tau)
        if len(out) >= limit:
            break
    return out


def find_prop3_converse(
    space: SoftBitopSpace,
    level: int,
    mode: str = "sectionwise",
    candidate_cap: int = PROP3_CANDIDATE_CAP,
) -> WitnessResult:
    """A bitopology on F whose induced pair is pairwise T_level while the soft space is not.

    The given pair is tried first, then pairs of soft topologies on F
    generated by one soft subset each, up to ``candidate_cap`` topologies.
    The result may be "none found within caps".
    """
    F = space.F
    candidates = [(space.tau1, space.tau2)]
    small = _small_topologies(F, candidate_cap)
    candidates += [(a, b) for a in small for b in small]
    searched = 0
    for t1, t2 in candidates:
        searched += 1
        sp = SoftBitopSpace(F, t1, t2)
        if pairwise_soft_separation(sp, level, mode).holds:
            continue
        if pairwise_separation(induced_topology(t1), induced_topology(t2), level).holds:
            return WitnessResult(
                "prop3-converse", True, {"tau1": t1, "tau2": t2, "level": level, "mode": mode}, searched
            )
    return WitnessResult("prop3-converse", False, {"level": level, "mode": mode}, searched)
