"""Command-line front end: ``sbtg check``, ``sbtg witness`` and ``sbtg enumerate-se``.

Exit status is 0 when the checked property holds, 1 when it fails (the
report carries a witness) and 2 on any input, cap or incident error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import bitop
from .core_sets import SEIndex, bits, sections_of
from .errors import SoftBitopError, TheoremViolation
from .finite_group import is_soft_group
from .finite_topology import pairwise_separation_classify
from .instance_io import Instance, load_instance
from .report import Report, element_label, plain, se_mask_labels
from .soft_topology import TAU_STAR_CAP, check_soft_topology
from .witnesses import (
    OPEN_SCAN_CAP,
    PROP3_CANDIDATE_CAP,
    find_non_product_open,
    find_noncanonical_gap,
    find_prop3_converse,
    find_strict_union,
)

CHECKS = ("summary", "axioms", "soft-group", "stg", "sbtg", "sbtg-oracle", "separation",
          "compactness", "connected", "hom")
FIGURE_POINT_CAP = 64
TARGETS = ("strict-union", "non-product-open", "prop3-converse", "noncanonical-gap")


# -- label helpers -------------------------------------------------------------

def _component_labels(inst: Instance, tau, t: int):
    comp = tau.components[t]
    if comp.carrier_size > 1 and comp.is_discrete():
        return "discrete"
    if comp.carrier_size > 1 and comp.is_indiscrete():
        return "indiscrete"
    if len(comp.opens) > 32:
        return f"{len(comp.opens)} opens"
    u = inst.universe
    return [u.labels_of(U) for U in tau.component_opens(t)]


def _se_index(inst: Instance) -> SEIndex:
    return SEIndex(inst.F, cap=max(inst.F.se_count(), 1))


def _names(args) -> list[str] | None:
    return args.topologies.split(",") if args.topologies else None


def _selected_names(inst: Instance, args) -> list[str]:
    t1, t2 = inst.pick(_names(args))
    return [t1.name, t2.name]


def _caps(args, **defaults) -> dict:
    caps = dict(defaults)
    if args.cap_se is not None:
        for k in caps:
            caps[k] = args.cap_se
    return caps


# -- checks --------------------------------------------------------------------

def _check_axioms(inst: Instance, args) -> Report:
    details, witnesses, ok = {}, [], True
    for name, tau in inst.topologies.items():
        if tau.is_symbolic:
            details[name] = {"members": tau.count(), "axioms": "holds (canonical by construction)"}
        else:
            v = check_soft_topology(tau.members, inst.F)
            details[name] = {"members": tau.count(), "axioms": "holds" if v else "fails"}
            if not v:
                ok = False
                witnesses.append({"topology": name, **v.witness})
        details[name]["canonical"] = tau.is_canonical()
        details[name]["components"] = {
            p: _component_labels(inst, tau, t) for t, p in enumerate(inst.F.params)
        }
    return Report("", ok, "all soft topologies satisfy the axioms" if ok else "axiom violation",
                  witnesses, details=details)


def _slice_witness(inst: Instance, w: dict) -> dict:
    u = inst.universe
    return {
        "parameter": w["parameter"],
        "topology": w["topology"],
        "pair": [u.labels[x] for x in w["pair"]],
        "open": u.labels_of(w["open"]),
        "preimage_pairs": [[u.labels[a], u.labels[b]] for a, b in w["preimage_pairs"]],
    }


def _sbtg_slices(v) -> dict:
    return {p: {k: ("topological group" if ok else "fails") for k, ok in d.items()}
            for p, d in v.info["slices"].items()}


def _check_sbtg(inst: Instance, args) -> Report:
    v = bitop.is_sbtg_componentwise(inst.sbtg(_names(args)))
    names = _selected_names(inst, args)
    return Report("", v.holds, "SBTG (componentwise)" if v else "not an SBTG",
                  [_slice_witness(inst, v.witness)] if v.witness else [],
                  slices=_sbtg_slices(v), details={"topologies": names})


def _check_summary(inst: Instance, args) -> Report:
    rep = _check_axioms(inst, args)
    ok = rep.holds
    parts = ["axioms " + ("hold" if ok else "fail")]
    if inst.group is not None:
        sg = is_soft_group(inst.F, inst.group)
        rep.details["soft_group"] = sg.info["sections"]
        ok = ok and sg.holds
        if sg:
            sb = _check_sbtg(inst, args)
            rep.slices = sb.slices
            rep.witnesses += sb.witnesses
            rep.details["sbtg_topologies"] = sb.details["topologies"]
            ok = ok and sb.holds
            parts.append(sb.summary)
        else:
            rep.witnesses.append(sg.witness)
            parts.append("not a soft group")
    rep.holds = ok
    rep.summary = "; ".join(parts)
    return rep


def _check_soft_group(inst: Instance, args) -> Report:
    if inst.group is None:
        inst.soft_group()  # raises the instance error
    v = is_soft_group(inst.F, inst.group)
    return Report("", v.holds, "soft group" if v else "not a soft group",
                  [v.witness] if v.witness else [], details={"sections": v.info["sections"]})


def _check_stg(inst: Instance, args) -> Report:
    names = _names(args) or list(inst.topologies)
    ok, slices, witnesses = True, {}, []
    sg = inst.soft_group()
    for name in names:
        v = bitop.is_stg(sg, inst.topology(name))
        slices[name] = {p: d["tau1"] for p, d in v.info["slices"].items()}
        if not v:
            ok = False
            w = _slice_witness(inst, v.witness)
            w["topology"] = name
            witnesses.append(w)
    return Report("", ok, "soft topological group" if ok else "not a soft topological group",
                  witnesses, slices=slices)


def _check_oracle(inst: Instance, args) -> Report:
    caps = _caps(args, oracle=bitop.ORACLE_CAP)
    sb = inst.sbtg(_names(args))
    v = bitop.is_sbtg_oracle(sb, cap_se=caps["oracle"])
    idx = _se_index(inst)
    witnesses = []
    if v.witness:
        w = v.witness
        n = len(idx)
        witnesses.append({
            "topology": w["topology"],
            "map": "delta",
            "pair": [element_label(idx, i) for i in w["pair"]],
            "open": se_mask_labels(idx, w["open"]),
            "preimage_pairs": [[element_label(idx, q // n), element_label(idx, q % n)]
                               for q in bits(w["preimage"])],
        })
    details = {
        f"tau{i}": {k: v.info[f"tau{i}"].get(k) for k in
                    ("holds", "multiplication", "inversion", "family_checked", "family_is_topology")}
        for i in (1, 2)
    }
    details["componentwise"] = v.info["componentwise"]
    details["topologies"] = _selected_names(inst, args)
    summary = "SBTG by oracle and componentwise" if v else "not an SBTG by either route"
    return Report("", v.holds, summary, witnesses, details=details, caps=caps)


def _check_separation(inst: Instance, args) -> Report:
    caps = _caps(args, separation=bitop.SEPARATION_CAP)
    mode = args.mode.replace("-", "_")
    space = inst.space(_names(args))
    v = bitop.pairwise_soft_separation(space, args.level, mode, caps["separation"])
    idx = _se_index(inst)
    witnesses = []
    if v.witness:
        a, b = v.witness["pair"]
        u = inst.universe
        witnesses.append({
            "unseparated_pair": [element_label(idx, a), element_label(idx, b)],
            "smallest_tau1_open_at_first": {p: u.labels_of(s) for p, s in zip(inst.F.params, v.witness["N1(a)"])},
            "smallest_tau2_open_at_second": {p: u.labels_of(s) for p, s in zip(inst.F.params, v.witness["N2(b)"])},
        })
    slices = {}
    for t, p in enumerate(inst.F.params):
        slices[p] = pairwise_separation_classify(space.tau1.components[t], space.tau2.components[t])
    details = {"level": f"T{args.level}", "mode": mode, "topologies": _selected_names(inst, args),
               "soft_elements": v.info["se_count"]}
    if args.level == 2:
        details["sectionwise"] = v.info["sectionwise"]
        details["soft_element"] = v.info["soft_element"]
        details["modes_disagree"] = v.info["modes_disagree"]
    summary = f"pairwise soft T{args.level} " + ("holds" if v else "fails") + f" ({mode} disjointness)" * (args.level == 2)
    return Report("", v.holds, summary, witnesses, slices=slices, details=details, caps=caps)


def _target(inst: Instance, args):
    if args.target:
        try:
            return inst.soft_sets[args.target]
        except KeyError:
            raise SoftBitopError(f"no soft set named {args.target!r}; have {sorted(inst.soft_sets)}") from None
    return inst.F


def _check_compactness(inst: Instance, args) -> Report:
    space = inst.space(_names(args))
    H = _target(inst, args)
    cover = bitop.all_members_cover(space)
    details: dict = {"target": H, "topologies": _selected_names(inst, args)}
    if cover is None:
        details["subcover"] = "skipped: member lists exceed cap"
    else:
        problem = bitop.CoverProblem(space, H, cover)
        sub = bitop.minimal_subcover(problem)
        details["cover_size"] = len(cover)
        details["minimal_subcover"] = [{"tau": cover[k][1], "soft_set": cover[k][0]} for k in sub]
    canonical = space.tau1.is_canonical() and space.tau2.is_canonical()
    directions = ("thm6", "thm7") if canonical else ("thm7",)
    v = bitop.slice_compactness_transfer(space, H, directions)
    details["slice_transfer"] = v.info.get("thm6", "skipped: not canonical")
    return Report("", v.holds, "pairwise soft compact (finite parameter set)" if v else "transfer failed",
                  details=details)


def _check_connected(inst: Instance, args) -> Report:
    caps = _caps(args, tau_star=TAU_STAR_CAP)
    v = bitop.bi_soft_connected(inst.space(_names(args)), caps["tau_star"])
    idx = _se_index(inst)
    witnesses = []
    if v.witness:
        witnesses.append({"topology": v.witness["topology"],
                          "clopen": se_mask_labels(idx, v.witness["clopen"])})
    return Report("", v.holds, "bi-soft connected" if v else "not bi-soft connected", witnesses,
                  details={**v.info, "topologies": _selected_names(inst, args)}, caps=caps)


def _check_hom(inst: Instance, args) -> Report:
    if not args.map:
        raise SoftBitopError("the hom check needs --map NAME")
    caps = _caps(args, tau_star=TAU_STAR_CAP)
    sb = inst.sbtg(_names(args))
    v = bitop.check_sbtg_hom(sb, sb, inst.map(args.map), caps["tau_star"])
    witnesses = [v.witness] if v.witness else []
    return Report("", v.holds, "SBTG homomorphism" if v else "not an SBTG homomorphism", witnesses,
                  details={k: x for k, x in v.info.items() if not k.startswith("continuity_detail")},
                  caps=caps)


HANDLERS = {
    "summary": _check_summary,
    "axioms": _check_axioms,
    "soft-group": _check_soft_group,
    "stg": _check_stg,
    "sbtg": _check_sbtg,
    "sbtg-oracle": _check_oracle,
    "separation": _check_separation,
    "compactness": _check_compactness,
    "connected": _check_connected,
    "hom": _check_hom,
}


def run_check(inst: Instance, check: str, args) -> Report:
    return HANDLERS[check](inst, args)


# -- witness searches ------------------------------------------------------------

def run_witness(inst: Instance, target: str, args) -> Report:
    if target == "strict-union":
        cands = list(inst.soft_sets.values())
        for tau in inst.topologies.values():
            if tau.count() <= 4096:
                cands += list(tau.iter_members())
        r = find_strict_union(cands, inst.F)
        data = {}
        if r.found:
            u = inst.universe
            data = {"F": r.data["F"], "H": r.data["H"],
                    "element": "(" + ", ".join(u.labels[x] for x in r.data["element"]) + ")"}
        return Report("", r.found, "SE(F) ∪ SE(H) is strictly smaller than SE(F ∪ H)" if r.found
                      else "none found", [data] if r.found else [], details={"pairs_searched": r.searched})
    tau1, tau2 = inst.pick(_names(args))
    if target == "non-product-open":
        caps = _caps(args, open_scan=OPEN_SCAN_CAP)
        r = find_non_product_open(tau1, caps["open_scan"])
        data = {}
        if r.found:
            T = r.data["set"]
            data = {"open": T, "size": len(T), "of": inst.F.se_count(),
                    "sections": _sections_labels(inst, T)}
            if r.data["from"]:
                data["union_of"] = list(r.data["from"])
        return Report("", r.found, "induced open that is SE(H) for no soft set H" if r.found else "none found",
                      [data] if r.found else [], details={"topology": tau1.name, "candidates": r.searched},
                      caps=caps)
    if target == "noncanonical-gap":
        r = find_noncanonical_gap(tau1)
        return Report("", r.found, "member of the canonical enlargement missing from the topology"
                      if r.found else "topology is canonical", [r.data] if r.found else [],
                      details={"topology": tau1.name})
    if target == "prop3-converse":
        caps = {"candidate_topologies": PROP3_CANDIDATE_CAP}
        mode = args.mode.replace("-", "_")
        r = find_prop3_converse(bitop.SoftBitopSpace(inst.F, tau1, tau2), args.level, mode)
        data = {}
        if r.found:
            data = {"tau1": list(r.data["tau1"].iter_members()), "tau2": list(r.data["tau2"].iter_members())}
        return Report("", r.found, f"induced pair pairwise T{args.level} while the soft pair is not"
                      if r.found else "none found within caps", [data] if r.found else [],
                      details={"candidates": r.searched, "level": args.level, "mode": mode}, caps=caps)
    raise SoftBitopError(f"unknown witness target {target!r}")


def _sections_labels(inst: Instance, T) -> dict:
    return sections_of(T).to_labels()


# -- figures ----------------------------------------------------------------------

def write_figures(inst: Instance, args) -> list[str]:
    from .plotting import plot_topology

    out = []
    names = _names(args) or list(inst.topologies)
    u = inst.universe
    for name in dict.fromkeys(names):
        tau = inst.topology(name)
        for t, p in enumerate(inst.F.params):
            labels = [u.labels[x] for x in tau.section_elems[t]]
            path = os.path.join(args.plot_dir, f"{name}_{p}.png")
            out.append(plot_topology(tau.components[t], labels, path, f"{name} at {p}"))
        if inst.F.eligible and inst.F.se_count() <= FIGURE_POINT_CAP:
            idx = _se_index(inst)
            labels = [element_label(idx, i) for i in range(len(idx))]
            path = os.path.join(args.plot_dir, f"{name}_induced.png")
            out.append(plot_topology(bitop.induced_topology(tau), labels, path, f"{name}, induced on SE(F)"))
    return out


# -- entry point -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sbtg", description="Finite soft bitopological group checker.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--topologies", help="comma-separated topology names (default: first two declared)")
        p.add_argument("--level", type=int, choices=(0, 1, 2), default=2)
        p.add_argument("--mode", choices=("sectionwise", "soft-element", "soft_element"), default="sectionwise")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--cap-se", type=int, default=None, help="override the soft-element cap of the check")
        p.add_argument("--no-timing", action="store_true", help="omit the elapsed-time field")
        p.add_argument("--plot-dir", help="also write topology figures (PNG) into this directory")

    c = sub.add_parser("check", help="check a property of an instance")
    c.add_argument("file")
    c.add_argument("check", nargs="?", default="summary", choices=CHECKS)
    c.add_argument("--map", help="map name for the hom check")
    c.add_argument("--target", help="named soft set for the compactness check (default: F)")
    common(c)

    w = sub.add_parser("witness", help="search for a witness")
    w.add_argument("file")
    w.add_argument("target", choices=TARGETS)
    common(w)

    e = sub.add_parser("enumerate-se", help="list SE(F) in canonical mixed-radix order")
    e.add_argument("file")
    e.add_argument("--format", choices=("text", "json"), default="text")
    e.add_argument("--cap-se", type=int, default=None)
    return ap


def _echo(argv: list[str]) -> str:
    return " ".join(a for a in argv if a != "--no-timing")


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        inst = load_instance(args.file)
        if args.command == "enumerate-se":
            cap = args.cap_se or 4096
            idx = SEIndex(inst.F, cap=cap)
            rows = [(i, element_label(idx, i)) for i in range(len(idx))]
            if args.format == "json":
                print(json.dumps({"command": _echo(argv), "parameters": list(inst.F.params),
                                  "soft_elements": [r[1] for r in rows]}, indent=2, ensure_ascii=False))
            else:
                print(f"# {len(rows)} soft elements, parameters {', '.join(inst.F.params)}")
                for i, lab in rows:
                    print(f"{i}\t{lab}")
            return 0
        if args.command == "check":
            rep = run_check(inst, args.check, args)
        else:
            rep = run_witness(inst, args.target, args)
        if args.plot_dir:
            rep.details["figures"] = write_figures(inst, args)
    except TheoremViolation as exc:
        incident = {"command": _echo(argv), "verdict": "error", "incident": str(exc),
                    "details": plain(exc.details), "instance": exc.instance}
        print(json.dumps(incident, indent=2, ensure_ascii=False, default=str))
        return 2
    except (SoftBitopError, OSError, ValueError) as exc:
        msg = {"command": _echo(argv), "verdict": "error", "error": str(exc)}
        if getattr(args, "format", "text") == "json":
            print(json.dumps(msg, indent=2, ensure_ascii=False))
        else:
            print(f"command: {msg['command']}\nverdict: error\nerror: {msg['error']}")
        return 2
    rep.command = _echo(argv)
    rep.elapsed = time.perf_counter() - start
    timing = not args.no_timing
    sys.stdout.write(rep.to_json(timing) + "\n" if args.format == "json" else rep.to_text(timing))
    return 0 if rep.holds else 1


if __name__ == "__main__":
    sys.exit(main())
