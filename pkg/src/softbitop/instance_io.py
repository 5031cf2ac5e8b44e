"""Loading JSON instance files into validated core objects.

Besides the basic keys, topology declarations accept two object forms:
``{"generate": [soft sets]}`` (smallest soft topology containing them) and
``{"canonical": {param: [[labels], ...]}}`` (all soft subsets whose
sections lie in the listed component families).  An optional
``soft_sets`` object names extra soft sets for the witness searches.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from importlib import resources
from typing import Any

from .bitop import SBTGInstance, SoftBitopSpace
from .core_sets import SEIndex, SoftSet, Universe, make_soft_set, soft_subset
from .errors import AxiomViolation, ShapeError, SoftBitopError, UnknownLabel
from .finite_group import FiniteGroup, SoftGroup, make_group
from .finite_topology import CarrierMap, FiniteTopology
from .soft_topology import SoftTopology, to_dense


class InstanceError(SoftBitopError):
    """A problem with an instance file; ``where`` locates it in the file."""

    def __init__(self, message: str, where: str = "", witness: Any = None):
        super().__init__(f"{where}: {message}" if where else message)
        self.where = where
        self.witness = witness


@dataclass
class Instance:
    source: str
    universe: Universe
    group: FiniteGroup | None
    F: SoftSet
    topologies: dict[str, SoftTopology]
    maps: dict[str, CarrierMap] = field(default_factory=dict)
    soft_sets: dict[str, SoftSet] = field(default_factory=dict)

    def topology(self, name: str) -> SoftTopology:
        try:
            return self.topologies[name]
        except KeyError:
            raise UnknownLabel(f"no topology named {name!r}; have {sorted(self.topologies)}") from None

    def pick(self, names: list[str] | None) -> tuple[SoftTopology, SoftTopology]:
        """Two topologies by name; defaults to the first two declared (or the only one twice)."""
        if names:
            if len(names) == 1:
                names = names * 2
            if len(names) != 2:
                raise ShapeError("--topologies takes one or two names")
            return self.topology(names[0]), self.topology(names[1])
        declared = list(self.topologies.values())
        if not declared:
            raise ShapeError("the instance declares no topologies")
        return declared[0], declared[1 if len(declared) > 1 else 0]

    def space(self, names: list[str] | None = None) -> SoftBitopSpace:
        return SoftBitopSpace(self.F, *self.pick(names))

    def soft_group(self) -> SoftGroup:
        if self.group is None:
            raise InstanceError("this check needs a group, but the instance has none", "group")
        return SoftGroup(self.group, self.F)

    def sbtg(self, names: list[str] | None = None) -> SBTGInstance:
        return SBTGInstance(self.soft_group(), *self.pick(names))

    def map(self, name: str) -> CarrierMap:
        try:
            return self.maps[name]
        except KeyError:
            raise UnknownLabel(f"no map named {name!r}; have {sorted(self.maps)}") from None


def _fixture_path(name: str):
    return resources.files("softbitop").joinpath("fixtures", name)


def bundled_fixtures() -> list[str]:
    return sorted(p.name for p in resources.files("softbitop").joinpath("fixtures").iterdir()
                  if p.name.endswith(".json"))


def read_text(path: str) -> tuple[str, str]:
    """Read an instance file, falling back to a bundled fixture of the same name."""
    if os.path.exists(path):
        with open(path, encoding="utf-8") as fh:
            return fh.read(), path
    base = os.path.basename(path)
    if base in bundled_fixtures():
        return _fixture_path(base).read_text(encoding="utf-8"), f"bundled:{base}"
    raise InstanceError(f"no such file {path!r} (and no bundled fixture named {base!r})")


def load_instance(path: str) -> Instance:
    text, source = read_text(path)
    return parse_instance(text, source)


def parse_instance(text: str, source: str = "<string>") -> Instance:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"invalid JSON: {exc.msg}", f"{source}:{exc.lineno}:{exc.colno}") from None
    if not isinstance(data, dict):
        raise InstanceError("top level must be an object", source)
    return _build(data, source)


def _require(data: dict, key: str, kind, source: str):
    if key not in data:
        raise InstanceError(f"missing key {key!r}", source)
    if not isinstance(data[key], kind):
        raise InstanceError(f"{key!r} has the wrong type", f"{source}:{key}")
    return data[key]


def _build(data: dict, source: str) -> Instance:
    labels = _require(data, "universe", list, source)
    if not all(isinstance(x, str) for x in labels):
        raise InstanceError("universe labels must be strings", f"{source}:universe")
    try:
        universe = Universe(tuple(labels))
    except ValueError as exc:
        raise InstanceError(str(exc), f"{source}:universe") from None

    group = None
    if "group" in data:
        g = data["group"]
        where = f"{source}:group"
        if not isinstance(g, dict) or "table" not in g or "identity" not in g:
            raise InstanceError("group needs 'table' and 'identity'", where)
        try:
            group = make_group(labels, g["table"], g["identity"])
        except AxiomViolation as exc:
            raise InstanceError(str(exc), where, exc.witness) from None
        except (UnknownLabel, ShapeError) as exc:
            raise InstanceError(str(exc), where) from None

    params = _require(data, "parameters", list, source)
    where = f"{source}:soft_set"
    try:
        F = make_soft_set(universe, params, _require(data, "soft_set", dict, source))
    except (UnknownLabel, ShapeError) as exc:
        raise InstanceError(str(exc), where) from None

    def soft(obj, where):
        if not isinstance(obj, dict):
            raise InstanceError("a soft set must be an object parameter -> labels", where)
        try:
            H = make_soft_set(universe, params, obj)
        except (UnknownLabel, ShapeError) as exc:
            raise InstanceError(str(exc), where) from None
        if not soft_subset(H, F):
            raise InstanceError(f"{H!r} is not a soft subset of the soft set", where)
        return H

    topologies = {}
    for name, decl in _require(data, "topologies", dict, source).items():
        where = f"{source}:topologies.{name}"
        topologies[name] = _topology(name, decl, F, soft, where)

    soft_sets = {
        name: soft(obj, f"{source}:soft_sets.{name}") for name, obj in data.get("soft_sets", {}).items()
    }

    maps = {}
    if "maps" in data:
        if not F.eligible:
            raise InstanceError("maps need every section of the soft set nonempty", f"{source}:maps")
        idx = SEIndex(F, cap=max(F.se_count(), 1))
        for name, decl in data["maps"].items():
            maps[name] = _map(decl, idx, universe, f"{source}:maps.{name}")

    return Instance(source, universe, group, F, topologies, maps, soft_sets)


def _topology(name: str, decl, F: SoftSet, soft, where: str) -> SoftTopology:
    if decl == "discrete":
        return SoftTopology.discrete(F, name)
    if decl == "indiscrete":
        return SoftTopology.indiscrete(F, name)
    if isinstance(decl, dict) and set(decl) == {"generate"}:
        return SoftTopology.generate([soft(h, f"{where}.generate[{i}]") for i, h in enumerate(decl["generate"])],
                                     F, name)
    if isinstance(decl, dict) and set(decl) == {"canonical"}:
        comps = []
        spec = decl["canonical"]
        for t, p in enumerate(F.params):
            elems = tuple(i for i in range(F.universe.size) if F.sections[t] >> i & 1)
            if p not in spec:
                raise InstanceError(f"no component family for parameter {p!r}", where)
            try:
                family = [to_dense(F.universe.mask(U), elems) for U in spec[p]]
                if any(F.universe.mask(U) & ~F.sections[t] for U in spec[p]):
                    raise InstanceError(f"component open outside the section at {p!r}", where)
                comps.append(FiniteTopology.from_opens(family, len(elems)))
            except UnknownLabel as exc:
                raise InstanceError(str(exc), where) from None
            except AxiomViolation as exc:
                raise InstanceError(f"component family at {p!r} is not a topology: {exc}", where,
                                    exc.witness) from None
        return SoftTopology.canonical(F, comps, name)
    if isinstance(decl, list):
        members = [soft(h, f"{where}[{i}]") for i, h in enumerate(decl)]
        try:
            return SoftTopology.from_members(members, F, name)
        except AxiomViolation as exc:
            w = exc.witness
            msg = f"not a soft topology ({w['kind']})"
            if "missing" in w:
                msg += f": {w['missing']!r} is missing"
            if "pair" in w:
                msg += f" for the pair {w['pair'][0]!r}, {w['pair'][1]!r}"
            raise InstanceError(msg, where, w) from None
    raise InstanceError("expected a list of soft sets, 'discrete', 'indiscrete', "
                        "{'generate': ...} or {'canonical': ...}", where)


def _choice(obj, universe: Universe, where: str) -> tuple[int, ...]:
    if isinstance(obj, str):
        obj = obj.split(",")
    if not isinstance(obj, list):
        raise InstanceError("a soft element must be an array of labels", where)
    try:
        return tuple(universe.index(x.strip()) for x in obj)
    except UnknownLabel as exc:
        raise InstanceError(str(exc), where) from None


def _map(decl, idx: SEIndex, universe: Universe, where: str) -> CarrierMap:
    """A map SE(F) → SE(F), as ``[[src, dst], ...]`` or ``{"a,b": [c, d]}``."""
    if isinstance(decl, dict):
        pairs = list(decl.items())
    elif isinstance(decl, list) and all(isinstance(p, list) and len(p) == 2 for p in decl):
        pairs = decl
    else:
        raise InstanceError("a map must be an object or a list of [source, target] pairs", where)
    table: dict[int, int] = {}
    for k, (src, dst) in enumerate(pairs):
        try:
            i = idx.index(_choice(src, universe, f"{where}[{k}]"))
            j = idx.index(_choice(dst, universe, f"{where}[{k}]"))
        except ShapeError as exc:
            raise InstanceError(str(exc), f"{where}[{k}]") from None
        if i in table and table[i] != j:
            raise InstanceError(f"soft element {idx.labels(i)} mapped twice", where)
        table[i] = j
    missing = [i for i in range(len(idx)) if i not in table]
    if missing:
        raise InstanceError(f"map undefined on soft element {idx.labels(missing[0])}", where)
    return CarrierMap(len(idx), len(idx), tuple(table[i] for i in range(len(idx))))
