"""Soft bitopological spaces and groups.

Soft elements are handled through their mixed-radix SE indices.  Pairwise
separation works with minimal soft neighbourhoods: since a soft topology is
closed under finite intersections, the intersection ``N(a)`` of all members
containing ``a`` is itself a member, and every separation condition on
``(a, b)`` is decided by ``N1(a)``, ``N2(a)``, ``N1(b)``, ``N2(b)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core_sets import SEIndex, SoftSet, bits, popcount, soft_subset
from .errors import CapExceeded, NotCanonical, ShapeError, SoftBitopError, TheoremViolation
from .finite_group import (
    FiniteGroup,
    SEGroup,
    SoftGroup,
    is_normal_subset,
    is_se_homomorphism,
    is_subgroup_subset,
    kernel_and_image,
    soft_subgroups,
    translation_map,
)
from .finite_topology import (
    CarrierMap,
    FiniteTopology,
    component_of,
    is_connected,
    is_continuous,
    is_homeomorphism,
    is_topological_group,
    pairwise_separation,
    proper_clopens,
    separation_holds,
)
from .soft_topology import (
    TAU_STAR_CAP,
    SoftTopology,
    from_dense,
    induced_topology,
    materialize_tau_star,
    se_mask,
    soft_continuous,
)
from .verdict import Verdict

SEPARATION_CAP = 4096
ORACLE_CAP = 12
COVER_LIST_CAP = 20_000
MODES = ("sectionwise", "soft_element")


class CoverError(SoftBitopError):
    pass


@dataclass(frozen=True)
class SoftBitopSpace:
    F: SoftSet
    tau1: SoftTopology
    tau2: SoftTopology

    def __post_init__(self):
        if self.tau1.ambient != self.F or self.tau2.ambient != self.F:
            raise ShapeError("both soft topologies must live on F")

    def topology(self, i: int) -> SoftTopology:
        return (self.tau1, self.tau2)[i - 1]


@dataclass(frozen=True)
class SBTGInstance:
    soft_group: SoftGroup
    tau1: SoftTopology
    tau2: SoftTopology

    def __post_init__(self):
        F = self.soft_group.carrier
        if self.tau1.ambient != F or self.tau2.ambient != F:
            raise ShapeError("both soft topologies must live on the soft group's carrier")

    @property
    def F(self) -> SoftSet:
        return self.soft_group.carrier

    @property
    def space(self) -> SoftBitopSpace:
        return SoftBitopSpace(self.F, self.tau1, self.tau2)

    def topology(self, i: int) -> SoftTopology:
        return (self.tau1, self.tau2)[i - 1]

    def to_json(self) -> dict:
        """Instance-file form of this instance, with explicit member lists."""
        G, F = self.soft_group.group, self.F
        u = G.universe

        def soft(H):
            return {p: u.labels_of(s) for p, s in zip(F.params, H.sections)}

        return {
            "universe": list(G.labels),
            "group": {
                "table": [[G.labels[G.mul(a, b)] for b in range(G.order)] for a in range(G.order)],
                "identity": G.labels[G.identity],
            },
            "parameters": list(F.params),
            "soft_set": soft(F),
            "topologies": {
                (tau.name or f"tau{i}"): [soft(H) for H in tau.iter_members()]
                for i, tau in ((1, self.tau1), (2, self.tau2))
            },
        }


# -- pairwise soft separation -------------------------------------------------

def _neighborhoods(tau: SoftTopology, idx: SEIndex) -> list[tuple[int, ...]]:
    if tau.is_symbolic:
        return [tau.neighborhood(a) for a in idx]
    N = [tuple(idx.shape.sections)] * len(idx)
    for H in tau.members:
        if not H.eligible:
            continue
        hs = H.sections
        for i in idx.indices_of(H):
            N[i] = tuple(x & h for x, h in zip(N[i], hs))
    return N


def _as_array(rows, width: int, universe_size: int) -> np.ndarray:
    dtype = np.int64 if universe_size <= 62 else object
    return np.array(rows, dtype=dtype).reshape(-1, width)


def _first_true(mat: np.ndarray) -> tuple[int, int] | None:
    if not mat.any():
        return None
    a, b = np.unravel_index(int(np.argmax(mat)), mat.shape)
    return int(a), int(b)


def _membership(E: np.ndarray, N: np.ndarray) -> np.ndarray:
    """``out[a, b]`` is True iff soft element b lies in N(a)."""
    n = len(E)
    out = np.zeros((n, n), dtype=bool)
    for start in range(0, n, 256):
        block = N[start:start + 256, None, :] & E[None, :, :]
        out[start:start + 256] = (block != 0).all(axis=-1)
    return out


def _meets(N1: np.ndarray, N2: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """For each (a, b): do N1(a), N2(b) meet in some section / in every section."""
    n = len(N1)
    some = np.zeros((n, n), dtype=bool)
    every = np.zeros((n, n), dtype=bool)
    for start in range(0, n, 256):
        block = (N1[start:start + 256, None, :] & N2[None, :, :]) != 0
        some[start:start + 256] = block.any(axis=-1)
        every[start:start + 256] = block.all(axis=-1)
    return some, every


@dataclass
class _SepData:
    idx: SEIndex
    in1: np.ndarray
    in2: np.ndarray
    N1: np.ndarray
    N2: np.ndarray


def _separation_data(space: SoftBitopSpace, cap: int) -> _SepData:
    F = space.F
    if not F.eligible:
        raise ShapeError("pairwise soft separation needs every section of F nonempty")
    n = F.se_count()
    if n > cap:
        raise CapExceeded(f"|SE(F)| = {n} exceeds separation cap {cap}")
    idx = SEIndex(F, cap=cap)
    k, usize = len(F.params), F.universe.size
    E = _as_array([[1 << x for x in a] for a in idx], k, usize)
    N1 = _as_array(_neighborhoods(space.tau1, idx), k, usize)
    N2 = _as_array(_neighborhoods(space.tau2, idx), k, usize)
    return _SepData(idx, _membership(E, N1), _membership(E, N2), N1, N2)


def pairwise_soft_separation(
    space: SoftBitopSpace, level: int, mode: str = "sectionwise", cap: int = SEPARATION_CAP
) -> Verdict:
    """Pairwise soft T0/T1/T2 over all ordered pairs of distinct soft elements.

    For T2, ``mode`` picks how H and K must be disjoint: ``sectionwise``
    (H ∩_s K = Φ) or ``soft_element`` (SE(H) ∩ SE(K) = ∅).  Both are
    evaluated and ``info["modes_disagree"]`` flags a difference.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, not {mode!r}")
    d = _separation_data(space, cap)
    n = len(d.idx)
    off = ~np.eye(n, dtype=bool)
    info: dict = {"level": level, "mode": mode, "se_count": n}
    if level == 0:
        fail = d.in1 & d.in2 & d.in1.T & d.in2.T & off
    elif level == 1:
        fail = (d.in1 | d.in2.T) & off
    elif level == 2:
        some, every = _meets(d.N1, d.N2)
        fail_sectionwise = some & off
        fail_soft = every & off
        info["sectionwise"] = not fail_sectionwise.any()
        info["soft_element"] = not fail_soft.any()
        info["modes_disagree"] = info["sectionwise"] != info["soft_element"]
        fail = fail_sectionwise if mode == "sectionwise" else fail_soft
    else:
        raise ValueError(f"separation level must be 0, 1 or 2, not {level}")
    pair = _first_true(fail)
    if pair is None:
        return Verdict(True, None, info)
    a, b = pair
    witness = {
        "pair": pair,
        "N1(a)": tuple(int(x) for x in d.N1[a]),
        "N2(b)": tuple(int(x) for x in d.N2[b]),
    }
    return Verdict(False, witness, info)


def pairwise_soft_separation_bruteforce(
    space: SoftBitopSpace, level: int, mode: str = "sectionwise"
) -> Verdict:
    """Direct quantification over members; reference route for small instances."""
    idx = SEIndex(space.F)
    m1, m2 = space.tau1.members, space.tau2.members

    def sep(a, b):
        if level == 0:
            return any(
                H.contains_element(a) != H.contains_element(b) for H in m1 + m2
            )
        if level == 1:
            return any(H.contains_element(a) and not H.contains_element(b) for H in m1) and any(
                K.contains_element(b) and not K.contains_element(a) for K in m2
            )
        for H in m1:
            if not H.contains_element(a):
                continue
            for K in m2:
                if not K.contains_element(b):
                    continue
                meet = [h & k for h, k in zip(H.sections, K.sections)]
                if mode == "sectionwise" and not any(meet):
                    return True
                if mode == "soft_element" and not all(meet):
                    return True
        return False

    elems = idx.elements
    for i, a in enumerate(elems):
        for j, b in enumerate(elems):
            if i != j and not sep(a, b):
                return Verdict(False, {"pair": (i, j)})
    return Verdict(True)


# -- slices -----------------------------------------------------------------

def slices_pairwise_separation(space: SoftBitopSpace, level: int) -> dict[str, Verdict]:
    """Classical pairwise separation of each slice ``(F(t), (τ1)_t, (τ2)_t)``.

    Witness pairs are reported as universe element indices.
    """
    out = {}
    for t, p in enumerate(space.F.params):
        elems = space.tau1.section_elems[t]
        v = pairwise_separation(space.tau1.components[t], space.tau2.components[t], level)
        if not v:
            x, y = v.witness
            v = Verdict(False, {"parameter": p, "pair": (elems[x], elems[y])})
        out[p] = v
    return out


def _lifted(F: SoftSet, t0: int, U: int) -> SoftSet:
    secs = list(F.sections)
    secs[t0] = U
    return F.with_sections(secs)


def _constructive_witnesses(space: SoftBitopSpace, level: int) -> Verdict:
    """Build and verify the single-parameter-modified soft opens for every slice pair.

    For parameter t0 and distinct x, y in F(t0), the slice separation data
    (U, V) is lifted to H with H(t0) = U and H(t) = F(t) elsewhere.  The
    check confirms membership of H (and K) in the soft topologies and the
    separation of every pair of soft elements taking values x, y at t0.
    """
    F = space.F
    checked = 0
    for t0, elems in enumerate(space.tau1.section_elems):
        C1, C2 = space.tau1.components[t0], space.tau2.components[t0]
        for xi, x in enumerate(elems):
            for yi, y in enumerate(elems):
                if xi == yi:
                    continue
                if level == 0:
                    choice = None
                    for i, C in ((1, C1), (2, C2)):
                        for p, q in ((xi, yi), (yi, xi)):
                            if not C.nbhd[p] >> q & 1:
                                choice = (i, C.nbhd[p], p, q)
                                break
                        if choice:
                            break
                    if choice is None:
                        return Verdict(False, {"parameter": F.params[t0], "pair": (x, y), "reason": "slice not T0"})
                    i, Ud, p, q = choice
                    H = _lifted(F, t0, from_dense(Ud, elems))
                    ok = H in space.topology(i) and H.sections[t0] >> elems[p] & 1 and not H.sections[t0] >> elems[q] & 1
                    built = [H]
                else:
                    Ud, Vd = C1.nbhd[xi], C2.nbhd[yi]
                    H = _lifted(F, t0, from_dense(Ud, elems))
                    K = _lifted(F, t0, from_dense(Vd, elems))
                    built = [H, K]
                    ok = H in space.tau1 and K in space.tau2
                    ok = ok and H.sections[t0] >> x & 1 and K.sections[t0] >> y & 1
                    if level == 1:
                        ok = ok and not H.sections[t0] >> y & 1 and not K.sections[t0] >> x & 1
                    else:
                        ok = ok and not all(h & k for h, k in zip(H.sections, K.sections))
                checked += 1
                if not ok:
                    return Verdict(False, {"parameter": F.params[t0], "pair": (x, y), "soft_sets": built})
    return Verdict(True, None, {"checked": checked})


def thm5_equivalence(space: SoftBitopSpace, level: int, cap: int = SEPARATION_CAP) -> Verdict:
    """Check both directions of the componentwise separation criterion.

    Level 2 uses soft-element disjointness, the form the construction
    produces.  Direction (ii) is only asserted when both soft topologies
    are canonical.
    """
    mode = "soft_element" if level == 2 else "sectionwise"
    soft = pairwise_soft_separation(space, level, mode, cap)
    slices = slices_pairwise_separation(space, level)
    all_slices = all(v.holds for v in slices.values())
    info = {"mode": mode, "soft": soft.holds, "slices": {p: v.holds for p, v in slices.items()}}
    failures = []
    if soft.holds and not all_slices:
        failures.append("direction i")
    info["direction_i"] = "holds" if soft.holds and all_slices else ("vacuous" if not soft.holds else "violated")
    canonical = space.tau1.is_canonical() and space.tau2.is_canonical()
    if not canonical:
        info["direction_ii"] = "skipped: not canonical"
    elif not all_slices:
        info["direction_ii"] = "vacuous"
    else:
        cons = _constructive_witnesses(space, level)
        info["constructive"] = cons.holds
        if not soft.holds or not cons.holds:
            failures.append("direction ii")
            info["direction_ii"] = "violated"
        else:
            info["direction_ii"] = "holds"
    witness = {"failed": failures, "soft_witness": soft.witness} if failures else None
    return Verdict(not failures, witness, info)


# -- covers and compactness ------------------------------------------------------

@dataclass(frozen=True)
class CoverProblem:
    space: SoftBitopSpace
    target: SoftSet
    cover: tuple[tuple[SoftSet, int], ...]

    def __post_init__(self):
        if not soft_subset(self.target, self.space.F):
            raise CoverError("cover target is not a soft subset of F")
        for k, (C, origin) in enumerate(self.cover):
            if origin not in (1, 2):
                raise CoverError(f"cover member {k} has origin {origin!r}; expected 1 or 2")
            if C not in self.space.topology(origin):
                raise CoverError(f"cover member {k} {C!r} is not in tau{origin}")


def _flat(H: SoftSet) -> int:
    w = H.universe.size
    return sum(s << (t * w) for t, s in enumerate(H.sections))


def verify_cover(problem: CoverProblem) -> Verdict:
    """Sectionwise containment of the target in the soft union of the cover."""
    H = problem.target
    union = [0] * len(H.params)
    for C, _ in problem.cover:
        union = [u | c for u, c in zip(union, C.sections)]
    for t, (h, u) in enumerate(zip(H.sections, union)):
        missing = h & ~u
        if missing:
            x = next(bits(missing))
            return Verdict(False, {"parameter": H.params[t], "element": x})
    return Verdict(True)


def minimal_subcover(problem: CoverProblem) -> list[int]:
    """Positions of a minimum-cardinality subcover, lexicographically first among ties.

    Branch and bound over the cover list: the first pass finds the optimum
    size, the second walks subsets in lexicographic order and returns the
    first cover of that size.
    """
    if not verify_cover(problem):
        raise CoverError("the family does not cover the target")
    target = _flat(problem.target)
    cov = [_flat(C) & target for C, _ in problem.cover]
    useful = [k for k, c in enumerate(cov) if c]
    if not target:
        return []
    suffix = [0] * (len(useful) + 1)
    for j in range(len(useful) - 1, -1, -1):
        suffix[j] = suffix[j + 1] | cov[useful[j]]
    widest = max(popcount(cov[k]) for k in useful)

    def lower(uncovered):
        return -(-popcount(uncovered) // widest)

    best = [len(useful)]

    def search(start, uncovered, size):
        if not uncovered:
            best[0] = min(best[0], size)
            return
        if size + lower(uncovered) >= best[0] or uncovered & ~suffix[start]:
            return
        for j in range(start, len(useful)):
            if uncovered & ~suffix[j]:
                return
            c = cov[useful[j]]
            if c & uncovered:
                search(j + 1, uncovered & ~c, size + 1)

    # greedy bound first
    uncovered, greedy = target, 0
    while uncovered:
        c = max((cov[k] for k in useful), key=lambda c: popcount(c & uncovered))
        uncovered &= ~c
        greedy += 1
    best[0] = greedy + 1
    search(0, target, 0)
    k_star = best[0]

    def first(start, uncovered, chosen):
        if not uncovered:
            return chosen
        if len(chosen) + lower(uncovered) > k_star:
            return None
        for j in range(start, len(useful)):
            if uncovered & ~suffix[j]:
                return None
            c = cov[useful[j]]
            if c & uncovered:
                found = first(j + 1, uncovered & ~c, chosen + [useful[j]])
                if found is not None:
                    return found
        return None

    return first(0, target, [])


def all_members_cover(space: SoftBitopSpace, cap: int = COVER_LIST_CAP):
    if space.tau1.count() + space.tau2.count() > cap:
        return None
    return tuple((C, i) for i in (1, 2) for C in space.topology(i).iter_members())


def slice_compactness_transfer(space: SoftBitopSpace, H: SoftSet, directions=("thm6", "thm7")) -> Verdict:
    """Transfer of pairwise compactness between H and its slices H(t).

    thm6 (canonical spaces): each slice cover by all opens of both
    components is lifted to cylinders C_U (U at t, F elsewhere); the
    cylinders must be soft open, cover H, and a minimal subcover must
    project back onto a cover of H(t).
    thm7: every slice is compact (finite), and the cover of H by all
    members of both soft topologies has a finite (minimal) subcover.
    """
    if not soft_subset(H, space.F):
        raise ShapeError("H must be a soft subset of F")
    F = space.F
    info: dict = {}
    ok = True
    if "thm6" in directions:
        if not (space.tau1.is_canonical() and space.tau2.is_canonical()):
            raise NotCanonical("the slice-to-soft lifting needs canonical soft topologies")
        per_t = {}
        for t, p in enumerate(F.params):
            elems = space.tau1.section_elems[t]
            slice_cover = [
                (from_dense(U, elems), i)
                for i in (1, 2)
                for U in space.topology(i).components[t].opens
                if U
            ]
            lifted = tuple((_lifted(F, t, U), i) for U, i in slice_cover)
            if not all(C in space.topology(i) for C, i in lifted):
                per_t[p] = "lifted cylinder not soft open"
                ok = False
                continue
            problem = CoverProblem(space, H, lifted)
            if not verify_cover(problem):
                per_t[p] = "lifted family does not cover H"
                ok = False
                continue
            sub = minimal_subcover(problem)
            projected = 0
            for k in sub:
                projected |= slice_cover[k][0]
            if H.sections[t] & ~projected:
                per_t[p] = "projected subcover misses H(t)"
                ok = False
            else:
                per_t[p] = f"holds (subcover of size {len(sub)})"
        info["thm6"] = per_t
    if "thm7" in directions:
        cover = all_members_cover(space)
        if cover is None:
            info["thm7"] = "skipped: member lists exceed cap"
        else:
            problem = CoverProblem(space, H, cover)
            sub = minimal_subcover(problem)
            info["thm7"] = f"holds (subcover of size {len(sub)})"
    return Verdict(ok, None, info)


# -- induced topologies: connectedness and classical checks -------------------

def induced(space_or_inst, i: int, cap_se: int = SEPARATION_CAP) -> FiniteTopology:
    """The induced (product) topology of the i-th soft topology on SE(F)."""
    return induced_topology(space_or_inst.topology(i), cap_se)


def family_report(tau: SoftTopology, cap_se: int = TAU_STAR_CAP) -> dict:
    """Whether the section-open family on SE(F) is a topology, when it can be scanned."""
    F = tau.ambient
    if not F.eligible or F.se_count() > cap_se:
        return {"family_checked": False}
    star = materialize_tau_star(tau, cap_se)
    return {
        "family_checked": True,
        "family_size": len(star.family),
        "family_is_topology": star.is_topology,
        "family_axiom_witness": star.axioms.witness,
    }


def bi_soft_connected(space: SoftBitopSpace, cap_se: int = TAU_STAR_CAP) -> Verdict:
    """Both induced spaces connected; clopen witness from the first that is not.

    The clopen-freeness cross-check enumerates opens and runs when SE(F)
    has at most ``cap_se`` elements.
    """
    info = {}
    witness = None
    for i in (1, 2):
        tau = induced(space, i)
        conn = is_connected(tau)
        entry = {"connected": conn.holds}
        if tau.carrier_size <= cap_se:
            clopens = proper_clopens(tau)
            if conn.holds != (not clopens):
                raise TheoremViolation("connectedness disagrees with clopen search", details={"topology": i})
            entry["proper_clopens"] = len(clopens)
        entry.update(family_report(space.topology(i), cap_se))
        info[f"tau{i}"] = entry
        if not conn and witness is None:
            witness = {"topology": i, "clopen": conn.witness["clopen"]}
    return Verdict(witness is None, witness, info)


def induced_pairwise_separation(space: SoftBitopSpace, level: int) -> Verdict:
    return pairwise_separation(induced(space, 1), induced(space, 2), level)


# -- SBTG verification --------------------------------------------------------

def is_sbtg_componentwise(inst: SBTGInstance) -> Verdict:
    """Each slice F(t) must be a topological group under both component topologies."""
    slices = {}
    witness = None
    for t, p in enumerate(inst.F.params):
        sub, elems = inst.soft_group.section_group(t)
        slices[p] = {}
        for i in (1, 2):
            v = is_topological_group(sub, inst.topology(i).components[t])
            slices[p][f"tau{i}"] = v.holds
            if not v and witness is None:
                x, y = v.witness["pair"]
                witness = {
                    "parameter": p,
                    "topology": i,
                    "pair": (elems[x], elems[y]),
                    "open": from_dense(v.witness["open"], elems),
                    "preimage_pairs": [
                        (elems[q // len(elems)], elems[q % len(elems)]) for q in bits(v.witness["preimage"])
                    ],
                }
    return Verdict(witness is None, witness, {"slices": slices})


def is_sbtg_oracle(inst: SBTGInstance, cap_se: int = ORACLE_CAP) -> Verdict:
    """Δ-continuity on the induced topologies of SE(F), compared with the slices.

    The induced topologies are the product topologies of the components;
    ``info`` also says whether the section-open family is a topology.  A
    disagreement with ``is_sbtg_componentwise`` raises ``TheoremViolation``
    carrying the serialized instance.
    """
    n = inst.F.se_count()
    if n > cap_se:
        raise CapExceeded(f"|SE(F)| = {n} exceeds oracle cap {cap_se}")
    S = SEGroup(inst.soft_group)
    G = S.as_group()
    info: dict = {}
    witness = None
    for i in (1, 2):
        v = is_topological_group(G, induced(inst, i))
        info[f"tau{i}"] = {
            "holds": v.holds,
            "multiplication": v.info["multiplication"],
            "inversion": v.info["inversion"],
            **family_report(inst.topology(i)),
        }
        if not v and witness is None:
            witness = {"topology": i, **v.witness}
    verdict = Verdict(witness is None, witness, info)
    comp = is_sbtg_componentwise(inst)
    info["componentwise"] = comp.holds
    if comp.holds != verdict.holds:
        raise TheoremViolation(
            f"oracle verdict {verdict.holds} disagrees with componentwise verdict {comp.holds}",
            instance=inst.to_json(),
            details={"oracle": info, "componentwise": comp.info, "componentwise_witness": comp.witness},
        )
    return verdict


def is_stg(soft_group: SoftGroup, tau: SoftTopology) -> Verdict:
    """Single soft topology: every slice must be a topological group."""
    return is_sbtg_componentwise(SBTGInstance(soft_group, tau, tau))


# -- properties of verified SBTGs ----------------------------------------------

def translations_are_homeomorphisms(inst: SBTGInstance) -> Verdict:
    S = SEGroup(inst.soft_group)
    checked = 0
    for i in (1, 2):
        tau = induced(inst, i)
        for a in range(S.order):
            for side in ("left", "right", "inversion"):
                if side == "inversion" and a:
                    continue
                v = is_homeomorphism(translation_map(S, a, side), tau, tau)
                checked += 1
                if not v:
                    return Verdict(False, {"topology": i, "element": a, "side": side, **v.witness})
    return Verdict(True, None, {"checked": checked})


def t0_implies_t2(inst: SBTGInstance) -> Verdict:
    info = {}
    for i in (1, 2):
        tau = induced(inst, i)
        t0, t2 = separation_holds(tau, 0).holds, separation_holds(tau, 2).holds
        info[f"tau{i}"] = {"T0": t0, "T2": t2}
        if t0 and not t2:
            return Verdict(False, {"topology": i}, info)
    return Verdict(True, None, info)


def compact_subgroups_closed(inst: SBTGInstance) -> Verdict:
    """In a Hausdorff induced topology, SE(H) is closed for every soft subgroup H."""
    idx = SEIndex(inst.F)
    subs = soft_subgroups(inst.soft_group)
    checked = 0
    for i in (1, 2):
        tau = induced(inst, i)
        if not separation_holds(tau, 2):
            continue
        for H in subs:
            checked += 1
            if not tau.is_closed(se_mask(H, idx)):
                return Verdict(False, {"topology": i, "subgroup": H})
    return Verdict(True, None, {"checked": checked})


def identity_component_check(inst: SBTGInstance) -> Verdict:
    """The component of e_F is a closed normal subgroup, and connectedness means it is everything."""
    S = SEGroup(inst.soft_group)
    info = {}
    for i in (1, 2):
        tau = induced(inst, i)
        comp = component_of(tau, S.identity)
        members = frozenset(bits(comp))
        ok = is_normal_subset(S, members) and tau.is_closed(comp)
        whole = comp == tau.full
        info[f"tau{i}"] = {"size": len(members), "normal_closed": ok, "whole": whole}
        if not ok or whole != is_connected(tau).holds:
            return Verdict(False, {"topology": i}, info)
    return Verdict(True, None, info)


# -- homomorphisms -------------------------------------------------------------

def check_sbtg_hom(src: SBTGInstance, dst: SBTGInstance, f: CarrierMap, cap_se: int = TAU_STAR_CAP) -> Verdict:
    """Group homomorphism on SE plus continuity into each induced topology of dst."""
    S, D = SEGroup(src.soft_group), SEGroup(dst.soft_group)
    hom = is_se_homomorphism(f, S, D)
    info: dict = {"homomorphism": hom.holds}
    witness = None if hom else {"condition": "homomorphism", **hom.witness}
    for i in (1, 2):
        c = soft_continuous(f, src.topology(i), dst.topology(i), cap_se)
        info[f"continuous_tau{i}"] = c.holds
        info[f"continuity_detail_tau{i}"] = {k: c.info[k] for k in ("member_only", "family", "full", "discrepancy")}
        if not c and witness is None:
            witness = {"condition": f"continuity tau{i}", **c.witness}
    holds = witness is None
    if hom:
        kernel, image = kernel_and_image(f, S, D)
        info["kernel_size"] = len(kernel)
        info["kernel_normal"] = is_normal_subset(S, kernel)
        info["image_subgroup"] = is_subgroup_subset(D, image)
        info["surjective"] = len(image) == D.order
        if not (info["kernel_normal"] and info["image_subgroup"]):
            raise TheoremViolation("kernel/image of a homomorphism failed the subgroup checks",
                                   details=info)
        if holds and info["surjective"]:
            src_conn = bi_soft_connected(src.space, cap_se).holds
            dst_conn = bi_soft_connected(dst.space, cap_se).holds
            info["connectedness_transfer"] = (not src_conn) or dst_conn
            if src_conn and not dst_conn:
                raise TheoremViolation("surjective homomorphism from a bi-soft connected source "
                                       "onto a disconnected target", details=info)
        if holds and f.is_bijective():
            g = f.inverse()
            back = is_se_homomorphism(g, D, S).holds and all(
                soft_continuous(g, dst.topology(i), src.topology(i), cap_se).holds for i in (1, 2)
            )
            info["isomorphism"] = back
    return Verdict(holds, witness, info)


def prop7_constant_check(
    src: SBTGInstance, i: int, dst_group: FiniteGroup, f: CarrierMap
) -> Verdict:
    """A continuous homomorphism from a connected induced space into a discrete group is constant."""
    S = SEGroup(src.soft_group)
    if f.source_size != S.order or f.target_size != dst_group.order:
        raise ShapeError("map shape does not match SE(F) and the target group")
    tau = induced(src, i)
    discrete = FiniteTopology.discrete(dst_group.order)
    image = len(set(f.table))
    info = {"image_size": image}
    if not is_connected(tau):
        info["status"] = "skipped: induced space not connected"
        return Verdict(True, None, info)
    hom = all(f(S.mul(a, b)) == dst_group.mul(f(a), f(b)) for a in range(S.order) for b in range(S.order))
    if not hom:
        info["status"] = "skipped: not a homomorphism"
        return Verdict(True, None, info)
    cont = is_continuous(f, tau, discrete)
    if not cont:
        info["status"] = "skipped: not continuous"
        info["continuity_witness"] = cont.witness
        return Verdict(True, None, info)
    info["status"] = "checked"
    return Verdict(image == 1, None if image == 1 else {"image_size": image}, info)


def se_labels(F: SoftSet, i: int) -> list[str]:
    return SEIndex(F, cap=max(F.se_count(), 1)).labels(i)

