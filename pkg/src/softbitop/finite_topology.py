"""Finite (Alexandrov) topologies on carriers ``0..n-1``.

A finite topology is fully determined by its minimal open neighbourhoods
``N(x)``: a set is open iff it contains ``N(x)`` for each of its points.
``FiniteTopology`` stores those neighbourhoods; the list of opens is
enumerated on demand and capped, since product carriers make it huge.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import TYPE_CHECKING, Iterable

from .core_sets import bits
from .errors import AxiomViolation, CapExceeded, ShapeError, TheoremViolation
from .verdict import Verdict

if TYPE_CHECKING:
    from .finite_group import FiniteGroup

OPENS_CAP = 65536
PRODUCT_CARRIER_CAP = 256

LEVELS = ("none", "T0", "T1", "T2")


def check_topology_axioms(opens: Iterable[int], carrier_size: int) -> Verdict:
    """Check that a family of bitmasks is a topology on ``0..carrier_size-1``.

    Closure under pairwise unions is enough for a finite family.  Pairs are
    scanned in ascending bitmask order, union before intersection, and the
    first failure is the witness.
    """
    full = (1 << carrier_size) - 1
    family = sorted(set(opens))
    members = set(family)
    for U in family:
        if U & ~full:
            return Verdict(False, {"kind": "out-of-range", "set": U})
    if 0 not in members:
        return Verdict(False, {"kind": "missing-empty", "missing": 0})
    if full not in members:
        return Verdict(False, {"kind": "missing-full", "missing": full})
    for i, U in enumerate(family):
        for V in family[i + 1:]:
            if U | V not in members:
                return Verdict(False, {"kind": "union", "pair": (U, V), "missing": U | V})
            if U & V not in members:
                return Verdict(False, {"kind": "intersection", "pair": (U, V), "missing": U & V})
    return Verdict(True)


def _neighborhoods_from_family(family: Iterable[int], carrier_size: int) -> tuple[int, ...]:
    full = (1 << carrier_size) - 1
    nbhd = [full] * carrier_size
    for U in family:
        for x in bits(U):
            nbhd[x] &= U
    return tuple(nbhd)


@dataclass(frozen=True)
class FiniteTopology:
    carrier_size: int
    nbhd: tuple[int, ...]

    def __post_init__(self):
        if len(self.nbhd) != self.carrier_size:
            raise ShapeError("one minimal neighbourhood per point is required")

    @classmethod
    def from_opens(cls, opens: Iterable[int], carrier_size: int) -> "FiniteTopology":
        opens = list(opens)
        report = check_topology_axioms(opens, carrier_size)
        if not report:
            raise AxiomViolation(f"not a topology: {report.witness}", report.witness)
        return cls(carrier_size, _neighborhoods_from_family(opens, carrier_size))

    @classmethod
    def discrete(cls, n: int) -> "FiniteTopology":
        return cls(n, tuple(1 << x for x in range(n)))

    @classmethod
    def indiscrete(cls, n: int) -> "FiniteTopology":
        return cls(n, ((1 << n) - 1,) * n)

    @property
    def full(self) -> int:
        return (1 << self.carrier_size) - 1

    def is_open(self, U: int) -> bool:
        return all(self.nbhd[x] & ~U == 0 for x in bits(U))

    def is_closed(self, U: int) -> bool:
        return self.is_open(self.full & ~U)

    def interior(self, U: int) -> int:
        out = 0
        for x in bits(U):
            if self.nbhd[x] & ~U == 0:
                out |= 1 << x
        return out

    def closure(self, U: int) -> int:
        return self.full & ~self.interior(self.full & ~U)

    def opens_capped(self, cap: int = OPENS_CAP) -> tuple[int, ...]:
        found = {0}
        for x in range(self.carrier_size):
            n = self.nbhd[x]
            found |= {U | n for U in found}
            if len(found) > cap:
                raise CapExceeded(f"topology has more than {cap} opens")
        return tuple(sorted(found))

    @cached_property
    def opens(self) -> tuple[int, ...]:
        """All opens, ascending by bitmask value."""
        return self.opens_capped()

    def is_discrete(self) -> bool:
        return all(n == 1 << x for x, n in enumerate(self.nbhd))

    def is_indiscrete(self) -> bool:
        return all(n == self.full for n in self.nbhd)

    def is_coarser_than(self, other: "FiniteTopology") -> bool:
        """Every open of ``self`` is open in ``other`` (equality allowed)."""
        if self.carrier_size != other.carrier_size:
            raise ShapeError("topologies live on different carriers")
        return all(o & ~s == 0 for s, o in zip(self.nbhd, other.nbhd))


def generate_topology(subbasis: Iterable[int], carrier_size: int) -> FiniteTopology:
    """Smallest topology on the carrier containing every set in ``subbasis``.

    ``N(x)`` is the intersection of the subbasis members containing ``x``,
    which is exactly the minimal neighbourhood in the generated topology.
    """
    full = (1 << carrier_size) - 1
    subbasis = list(subbasis)
    for U in subbasis:
        if U & ~full:
            raise ShapeError(f"subbasis member {U:#x} has bits outside the carrier")
    return FiniteTopology(carrier_size, _neighborhoods_from_family(subbasis, carrier_size))


def minimal_open_neighborhood(tau: FiniteTopology, x: int) -> int:
    if not 0 <= x < tau.carrier_size:
        raise IndexError(f"point {x} outside carrier of size {tau.carrier_size}")
    return tau.nbhd[x]


def product_topology(
    tau1: FiniteTopology, tau2: FiniteTopology, carrier_cap: int = PRODUCT_CARRIER_CAP
) -> FiniteTopology:
    """Box product topology; the pair ``(x, y)`` is point ``x * |carrier2| + y``."""
    n1, n2 = tau1.carrier_size, tau2.carrier_size
    if n1 * n2 > carrier_cap:
        raise CapExceeded(f"product carrier {n1 * n2} exceeds cap {carrier_cap}")
    nbhd = []
    for x in range(n1):
        for y in range(n2):
            row = tau2.nbhd[y]
            m = 0
            for xx in bits(tau1.nbhd[x]):
                m |= row << (xx * n2)
            nbhd.append(m)
    return FiniteTopology(n1 * n2, tuple(nbhd))


@dataclass(frozen=True)
class CarrierMap:
    source_size: int
    target_size: int
    table: tuple[int, ...]

    def __post_init__(self):
        if len(self.table) != self.source_size:
            raise ShapeError("map table length differs from source size")
        if any(not 0 <= y < self.target_size for y in self.table):
            raise ShapeError("map table entry outside target carrier")

    def __call__(self, x: int) -> int:
        return self.table[x]

    def image(self, U: int) -> int:
        out = 0
        for x in bits(U):
            out |= 1 << self.table[x]
        return out

    def preimage(self, V: int) -> int:
        out = 0
        for x, y in enumerate(self.table):
            if V >> y & 1:
                out |= 1 << x
        return out

    def compose(self, other: "CarrierMap") -> "CarrierMap":
        """``self ∘ other``."""
        if other.target_size != self.source_size:
            raise ShapeError("maps are not composable")
        return CarrierMap(other.source_size, self.target_size, tuple(self.table[y] for y in other.table))

    def is_bijective(self) -> bool:
        return self.source_size == self.target_size and len(set(self.table)) == self.source_size

    def inverse(self) -> "CarrierMap":
        if not self.is_bijective():
            raise ValueError("map is not a bijection")
        inv = [0] * self.source_size
        for x, y in enumerate(self.table):
            inv[y] = x
        return CarrierMap(self.target_size, self.source_size, tuple(inv))

    @classmethod
    def identity(cls, n: int) -> "CarrierMap":
        return cls(n, n, tuple(range(n)))


def _check_map(f: CarrierMap, src: FiniteTopology, tgt: FiniteTopology) -> None:
    if f.source_size != src.carrier_size or f.target_size != tgt.carrier_size:
        raise ShapeError("map shape does not match the carriers")


def is_continuous(f: CarrierMap, src: FiniteTopology, tgt: FiniteTopology) -> Verdict:
    """Continuity via ``f(N(x)) ⊆ N(f(x))`` for every point.

    On failure the witness is the first such point; ``N(f(x))`` is then an
    open whose preimage contains ``x`` but not ``N(x)``.
    """
    _check_map(f, src, tgt)
    for x in range(src.carrier_size):
        target_nbhd = tgt.nbhd[f.table[x]]
        if f.image(src.nbhd[x]) & ~target_nbhd:
            return Verdict(
                False,
                {"point": x, "open": target_nbhd, "preimage": f.preimage(target_nbhd)},
            )
    return Verdict(True)


def is_continuous_by_preimages(
    f: CarrierMap, src: FiniteTopology, tgt: FiniteTopology, cap: int = OPENS_CAP
) -> Verdict:
    """Reference check: preimage of every open of ``tgt`` is open in ``src``."""
    _check_map(f, src, tgt)
    for V in tgt.opens_capped(cap):
        P = f.preimage(V)
        if not src.is_open(P):
            return Verdict(False, {"open": V, "preimage": P})
    return Verdict(True)


def is_homeomorphism(f: CarrierMap, src: FiniteTopology, tgt: FiniteTopology) -> Verdict:
    if not f.is_bijective():
        return Verdict(False, {"reason": "not bijective"})
    forward = is_continuous(f, src, tgt)
    if not forward:
        return Verdict(False, {"direction": "forward", **forward.witness})
    backward = is_continuous(f.inverse(), tgt, src)
    if not backward:
        return Verdict(False, {"direction": "inverse", **backward.witness})
    return Verdict(True)


# -- separation -------------------------------------------------------------

def _first_pair(n: int, bad) -> tuple[int, int] | None:
    for x in range(n):
        for y in range(n):
            if x != y and bad(x, y):
                return (x, y)
    return None


def separation_holds(tau: FiniteTopology, level: int) -> Verdict:
    """Single-topology T0/T1/T2; witness is the first unseparated ordered pair."""
    N = tau.nbhd
    if level == 0:
        bad = lambda x, y: N[x] >> y & 1 and N[y] >> x & 1
    elif level == 1:
        bad = lambda x, y: N[x] >> y & 1
    elif level == 2:
        bad = lambda x, y: N[x] & N[y]
    else:
        raise ValueError(f"separation level must be 0, 1 or 2, not {level}")
    pair = _first_pair(tau.carrier_size, bad)
    return Verdict(pair is None, pair)


def separation_classify(tau: FiniteTopology) -> str:
    level = "none"
    for j in range(3):
        if not separation_holds(tau, j):
            break
        level = LEVELS[j + 1]
    return level


def pairwise_separation(tau1: FiniteTopology, tau2: FiniteTopology, level: int) -> Verdict:
    """Pairwise T_level for the bitopological space ``(X, tau1, tau2)``.

    T0: some open of either topology contains exactly one of the two points.
    T1: a tau1-open has x but not y, and a tau2-open has y but not x.
    T2: disjoint tau1-open around x and tau2-open around y.
    The last two are quantified over ordered pairs.
    """
    if tau1.carrier_size != tau2.carrier_size:
        raise ShapeError("pairwise separation needs a common carrier")
    N1, N2 = tau1.nbhd, tau2.nbhd
    if level == 0:
        def bad(x, y):
            return all(N[x] >> y & 1 and N[y] >> x & 1 for N in (N1, N2))
    elif level == 1:
        def bad(x, y):
            return N1[x] >> y & 1 or N2[y] >> x & 1
    elif level == 2:
        def bad(x, y):
            return N1[x] & N2[y]
    else:
        raise ValueError(f"separation level must be 0, 1 or 2, not {level}")
    pair = _first_pair(tau1.carrier_size, bad)
    return Verdict(pair is None, pair)


def pairwise_separation_classify(tau1: FiniteTopology, tau2: FiniteTopology) -> str:
    level = "none"
    for j in range(3):
        if not pairwise_separation(tau1, tau2, j):
            break
        level = LEVELS[j + 1]
    return level


# -- connectedness -----------------------------------------------------------

def component_of(tau: FiniteTopology, x: int) -> int:
    """Connected component of ``x``: reachability under ``y ∈ N(x)`` or ``x ∈ N(y)``."""
    N = tau.nbhd
    comp = 1 << x
    frontier = [x]
    while frontier:
        p = frontier.pop()
        linked = N[p]
        for q in range(tau.carrier_size):
            if N[q] >> p & 1:
                linked |= 1 << q
        new = linked & ~comp
        comp |= new
        frontier.extend(bits(new))
    return comp


def is_connected(tau: FiniteTopology) -> Verdict:
    if tau.carrier_size == 0:
        return Verdict(True)
    comp = component_of(tau, 0)
    if comp == tau.full:
        return Verdict(True)
    return Verdict(False, {"clopen": comp})


def proper_clopens(tau: FiniteTopology, cap: int = OPENS_CAP) -> list[int]:
    """Every open whose complement is open, other than the empty set and the carrier."""
    full = tau.full
    return [U for U in tau.opens_capped(cap) if U not in (0, full) and tau.is_open(full & ~U)]


# -- topological groups -------------------------------------------------------

def delta_map(G: "FiniteGroup") -> CarrierMap:
    """``(a, b) ↦ a b⁻¹`` on the row-major product carrier."""
    n = G.order
    return CarrierMap(n * n, n, tuple(G.mul(a, G.inv(b)) for a in range(n) for b in range(n)))


def multiplication_map(G: "FiniteGroup") -> CarrierMap:
    n = G.order
    return CarrierMap(n * n, n, tuple(G.mul(a, b) for a in range(n) for b in range(n)))


def inversion_map(G: "FiniteGroup") -> CarrierMap:
    return CarrierMap(G.order, G.order, tuple(G.inv(a) for a in range(G.order)))


def is_topological_group(G: "FiniteGroup", tau: FiniteTopology) -> Verdict:
    """Continuity of ``Δ(a, b) = a b⁻¹`` on ``τ × τ``.

    Multiplication and inversion are checked as well; if their conjunction
    ever disagrees with the Δ verdict a ``TheoremViolation`` is raised.
    """
    if tau.carrier_size != G.order:
        raise ShapeError(f"topology carrier {tau.carrier_size} differs from group order {G.order}")
    prod_tau = product_topology(tau, tau, carrier_cap=max(PRODUCT_CARRIER_CAP, G.order ** 2))
    delta = is_continuous(delta_map(G), prod_tau, tau)
    mult = is_continuous(multiplication_map(G), prod_tau, tau)
    inv = is_continuous(inversion_map(G), tau, tau)
    if delta.holds != (mult.holds and inv.holds):
        raise TheoremViolation(
            "Δ-continuity disagrees with multiplication/inversion continuity",
            details={"delta": delta.holds, "multiplication": mult.holds, "inversion": inv.holds},
        )
    witness = None
    if not delta:
        x = delta.witness["point"]
        witness = {"map": "delta", "pair": divmod(x, G.order), **delta.witness}
    return Verdict(
        delta.holds,
        witness,
        {"multiplication": mult.holds, "inversion": inv.holds},
    )


def is_bitopological_group(G: "FiniteGroup", tau1: FiniteTopology, tau2: FiniteTopology) -> Verdict:
    for i, tau in ((1, tau1), (2, tau2)):
        v = is_topological_group(G, tau)
        if not v:
            return Verdict(False, {"topology": i, **v.witness})
    return Verdict(True)
