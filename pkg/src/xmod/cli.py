"""Command-line front end.

    xmod <check|aut|bispace|cocycle|cohomology|obstruction|exactseq|structures> [flags]

Every run prints one JSON report (or a plain listing with --human) and exits
0 on success, 1 on a mathematical negative, 2 on usage or validation errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field

from .bispace import Bispace, bispace_from_doc, find_isomorphism, pi0_group, type_of
from .cech.abelian import abelian_cech_cohomology
from .cech.classify import DEFAULT_MAX_ENUM, enumerate_pi0, exact_sequence_report
from .cech.cocycle import (BibundleCocycle, bibundle_structures, cocycle_from_doc, equivalent, is_trivial,
                           type_map)
from .cech.nerve import Nerve, builtin_nerves, validate_nerve
from .cech.obstruction import lifting_obstruction, nontrivial_h1_generator
from .crossed import CrossedModule, builtin_crossed_modules, crossed_module_from_doc
from .errors import ValidationError, XmodError, _jsonable
from .groups import DEFAULT_MAX_ORDER, FiniteGroup, builtin_groups, enumerate_automorphisms, group_from_doc

SCHEMA = 1
KINDS = ("groups", "crossed_modules", "nerves", "bispaces", "cocycles")
COMMANDS = ("check", "aut", "bispace", "cocycle", "cohomology", "obstruction", "exactseq", "structures")


class UsageError(XmodError):
    pass


class Negative(Exception):
    """A computation finished with a negative answer; carries the payload."""

    def __init__(self, payload: dict, witnesses: list):
        super().__init__("negative")
        self.payload = payload
        self.witnesses = witnesses


# ---------------------------------------------------------------- workspace


@dataclass
class Workspace:
    groups: dict[str, FiniteGroup] = field(default_factory=dict)
    crossed_modules: dict[str, CrossedModule] = field(default_factory=dict)
    nerves: dict[str, Nerve] = field(default_factory=dict)
    bispaces: dict[str, Bispace] = field(default_factory=dict)
    cocycles: dict[str, BibundleCocycle] = field(default_factory=dict)

    def get(self, kind: str, name: str):
        table = getattr(self, kind)
        if name not in table:
            raise UsageError(f"unknown {kind[:-1].replace('_', ' ')} {name!r}", witness=name)
        return table[name]


class WorkspaceError(XmodError):
    """Aggregated load diagnostics; ``witness`` is the list of all failures."""


def _parse(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}", witness={"file": path})
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}:{exc.lineno}: {exc.msg}", witness={"file": path, "line": exc.lineno,
                                                                      "column": exc.colno})
    if not isinstance(doc, dict):
        raise UsageError(f"{path}: top level must be an object", witness={"file": path, "line": 1})
    return doc


def load_workspace(paths=(), max_order: int = DEFAULT_MAX_ORDER) -> Workspace:
    """Built-in fixtures plus every object in ``paths``; all failures are reported together."""
    ws = Workspace(dict(builtin_groups()), dict(builtin_crossed_modules(max_order)), dict(builtin_nerves()))
    diagnostics: list[dict] = []
    pending: dict[str, list] = {k: [] for k in KINDS}
    for path in paths:
        try:
            doc = _parse(path)
        except UsageError as exc:
            diagnostics.append(exc.to_dict())
            continue
        for key in doc:
            if key not in KINDS:
                diagnostics.append({"error": "UnknownSection", "message": f"{path}: unknown section {key!r}",
                                    "witness": {"file": path, "section": key}})
        for kind in KINDS:
            entries = doc.get(kind, {})
            if not isinstance(entries, dict):
                diagnostics.append({"error": "ValidationError", "message": f"{path}: {kind} must be an object",
                                    "witness": {"file": path, "section": kind}})
                continue
            for name, body in entries.items():
                pending[kind].append((path, name, body))

    def resolve(kind):
        def look(ref):
            if isinstance(ref, str):
                if ref not in getattr(ws, kind):
                    raise ValidationError(f"dangling reference to {ref!r}", witness={"reference": ref})
                return getattr(ws, kind)[ref]
            if kind == "groups":
                return group_from_doc(ref)
            if kind == "nerves":
                return validate_nerve(ref)
            raise ValidationError(f"{kind} must be referenced by name")
        return look

    builders = {
        "groups": lambda name, body: group_from_doc(body, name),
        "crossed_modules": lambda name, body: crossed_module_from_doc(body, resolve("groups"), resolve("crossed_modules"),
                                                                      name, max_order),
        "nerves": lambda name, body: validate_nerve(body, name=name),
        "bispaces": lambda name, body: bispace_from_doc(body, resolve("crossed_modules")),
        "cocycles": lambda name, body: cocycle_from_doc(body, resolve("nerves"), resolve("crossed_modules")),
    }
    for kind in KINDS:
        table = getattr(ws, kind)
        for path, name, body in pending[kind]:
            if name in table:
                diagnostics.append({"error": "DuplicateName", "message": f"{path}: {kind[:-1]} {name!r} already defined",
                                    "witness": {"file": path, "name": name}})
                continue
            try:
                table[name] = builders[kind](name, body)
            except XmodError as exc:
                d = exc.to_dict()
                d["message"] = f"{path}: {kind[:-1]} {name!r}: {d['message']}"
                d["object"] = name
                diagnostics.append(d)
            except (KeyError, TypeError, ValueError) as exc:
                diagnostics.append({"error": "ValidationError", "object": name,
                                    "message": f"{path}: {kind[:-1]} {name!r}: malformed document ({exc})",
                                    "witness": None})
    if diagnostics:
        raise WorkspaceError(f"{len(diagnostics)} problem(s) loading the workspace", witness=diagnostics)
    return ws


# ---------------------------------------------------------------- commands


def _xm(ws: Workspace, args) -> CrossedModule:
    if not args.xm:
        raise UsageError("--xm is required")
    return ws.get("crossed_modules", args.xm)


def _nerve(ws: Workspace, args) -> Nerve:
    if not args.nerve:
        raise UsageError("--nerve is required")
    return ws.get("nerves", args.nerve)


def _group_summary(G: FiniteGroup) -> dict:
    return {"order": G.order, "abelian": G.is_abelian, "element_orders": list(G.orders)}


def _xm_summary(xm: CrossedModule) -> dict:
    return {
        "G": xm.G.order,
        "H": xm.H.order,
        "axioms": "pass",
        "pi0": xm.pi0.order,
        "pi1": len(xm.G1.elements),
        "tG": len(xm.tG.elements),
    }


def cmd_check(ws: Workspace, args) -> dict:
    names = args.names
    if not names:
        names = [args.xm] if args.xm else []
    if not names:
        return {"crossed_modules": {n: _xm_summary(x) for n, x in sorted(ws.crossed_modules.items())},
                "groups": sorted(ws.groups), "nerves": sorted(ws.nerves),
                "bispaces": sorted(ws.bispaces), "cocycles": sorted(ws.cocycles)}
    out = {}
    for name in names:
        # objects were validated on load, so here we only describe them
        if name in ws.crossed_modules:
            out[name] = {"kind": "crossed_module", **_xm_summary(ws.crossed_modules[name])}
        elif name in ws.groups:
            out[name] = {"kind": "group", **_group_summary(ws.groups[name])}
        elif name in ws.nerves:
            N = ws.nerves[name]
            out[name] = {"kind": "nerve", "vertices": N.n_vertices, "edges": len(N.edges),
                         "triangles": len(N.triangles), "components": N.n_components,
                         "euler_characteristic": N.euler_characteristic}
        elif name in ws.bispaces:
            X = ws.bispaces[name]
            out[name] = {"kind": "bispace", "xm": X.xm.name, "size": X.size, "type": type_of(X).coset}
        elif name in ws.cocycles:
            c = ws.cocycles[name]
            out[name] = {"kind": "cocycle", "nerve": c.nerve.name, "xm": c.xm.name,
                         "type": list(type_map(c).values)}
        else:
            raise UsageError(f"unknown object {name!r}", witness=name)
    return out


def cmd_aut(ws: Workspace, args) -> dict:
    names = args.names or ([args.xm] if args.xm else [])
    if len(names) != 1:
        raise UsageError("aut needs exactly one group name")
    name = names[0]
    G = ws.groups[name] if name in ws.groups else None
    if G is None:
        if name in ws.crossed_modules:
            G = ws.crossed_modules[name].G
        else:
            raise UsageError(f"unknown group {name!r}", witness=name)
    data = enumerate_automorphisms(G, args.max_order)
    return {"group": name, "order": G.order, "aut_order": data.group.order,
            "inner_order": len(data.inner.elements), "outer_order": len(data.outer_reps),
            "automorphisms": [list(a) for a in data.autos]}


def cmd_bispace(ws: Workspace, args):
    names = args.names
    if len(names) == 2:
        X, Y = (ws.get("bispaces", n) for n in names)
        f = find_isomorphism(X, Y)
        payload = {"left": names[0], "right": names[1], "isomorphic": f is not None,
                   "type_left": type_of(X).coset, "type_right": type_of(Y).coset}
        if f is None:
            raise Negative(payload, [{"reason": "not isomorphic", "types": [payload["type_left"],
                                                                            payload["type_right"]]}])
        payload["map"] = list(f.map)
        return payload
    if len(names) == 1:
        X = ws.get("bispaces", names[0])
        return {"bispace": names[0], "xm": X.xm.name, "size": X.size, "type": type_of(X).coset,
                "psi": list(X.psi)}
    xm = _xm(ws, args)
    p = pi0_group(xm)
    return {"xm": args.xm, "pi0_order": len(p.classes),
            "classes": [{"index": i, "xi": C.psi[0], "type": p.type_map[i]}
                        for i, C in enumerate(p.classes)],
            "table": [list(r) for r in p.table], "inverse": list(p.inverse)}


def cmd_cocycle(ws: Workspace, args):
    names = args.names
    if len(names) == 2:
        c1, c2 = (ws.get("cocycles", n) for n in names)
        k = equivalent(c1, c2)
        payload = {"left": names[0], "right": names[1], "equivalent": k is not None}
        if k is None:
            raise Negative(payload, [{"reason": "not equivalent", "types": [list(type_map(c1).values),
                                                                            list(type_map(c2).values)]}])
        payload["gauge"] = list(k.k)
        return payload
    if len(names) == 1:
        c = ws.get("cocycles", names[0])
        k = is_trivial(c)
        return {"cocycle": names[0], "nerve": c.nerve.name, "xm": c.xm.name, "valid": True,
                "type": list(type_map(c).values), "trivial": k is not None,
                "central_gauge": list(k.k) if k is not None else None}
    xm, N = _xm(ws, args), _nerve(ws, args)
    cat = enumerate_pi0(N, xm, args.max_enum)
    return {"xm": args.xm, "nerve": args.nerve, "classes": len(cat.classes),
            "representatives": [{"g": list(c.g), "h": list(c.h), "type": list(type_map(c).values)}
                                for c in cat.classes],
            "table": [list(r) for r in cat.table], "inverse": list(cat.inverse)}


def cmd_cohomology(ws: Workspace, args) -> dict:
    N = _nerve(ws, args)
    if args.coeff:
        A, label = ws.get("groups", args.coeff), args.coeff
    elif args.xm:
        A, label = _xm(ws, args).G1_group[0], f"ker t ({args.xm})"
    else:
        raise UsageError("cohomology needs --coeff or --xm")
    out = {"nerve": args.nerve, "coefficients": label}
    for q in (1, 2):
        H = abelian_cech_cohomology(N, A, q)
        out[f"H{q}"] = {"order": H.order, "invariant_factors": list(H.invariant_factors)}
    return out


def _tau(ws: Workspace, args, N: Nerve, xm: CrossedModule) -> tuple[int, ...]:
    spec = args.tau or "trivial"
    if spec == "trivial":
        return (0,) * len(N.edges)
    if spec == "w1":
        tau = nontrivial_h1_generator(N, xm)
        if tau is None:
            raise UsageError(f"{args.nerve} has no nonzero t(G)-valued class to use as w1")
        return tau
    try:
        tau = json.loads(spec)
    except json.JSONDecodeError:
        raise UsageError("--tau must be 'w1', 'trivial' or a JSON list of H indices", witness=spec)
    if not isinstance(tau, list):
        raise UsageError("--tau must be a JSON list", witness=spec)
    return tuple(tau)


def cmd_obstruction(ws: Workspace, args) -> dict:
    xm, N = _xm(ws, args), _nerve(ws, args)
    tau = _tau(ws, args, N, xm)
    res = lifting_obstruction(N, xm, tau)
    payload = {"xm": args.xm, "nerve": args.nerve, "tau": list(tau), "zero": res.is_zero,
               "cocycle": list(res.cech_class.representative), "lift": list(res.lift),
               "certificate": res.certificate,
               "corrected_lift": list(res.corrected_lift) if res.corrected_lift is not None else None}
    if not res.is_zero:
        raise Negative(payload, [{"reason": "nonzero obstruction class", "certificate": res.certificate}])
    return payload


def cmd_exactseq(ws: Workspace, args) -> dict:
    xm, N = _xm(ws, args), _nerve(ws, args)
    rep = exact_sequence_report(N, xm, args.max_enum)
    payload = rep.to_dict()
    payload["nerve"], payload["xm"] = args.nerve, args.xm
    if not rep.exact:
        raise Negative(payload, rep.witnesses)
    return payload


def cmd_structures(ws: Workspace, args) -> dict:
    if args.names:
        c = ws.get("cocycles", args.names[0])
        N, xm, g = c.nerve, c.xm, c.g
    else:
        xm, N = _xm(ws, args), _nerve(ws, args)
        if args.g is None:
            raise UsageError("structures needs a cocycle name or --g")
        try:
            g = json.loads(args.g)
        except json.JSONDecodeError:
            raise UsageError("--g must be a JSON list of G indices", witness=args.g)
    res = bibundle_structures(N, g, xm)
    payload = {"nerve": N.name, "xm": xm.name, "g": list(g), "count": len(res.solutions),
               "structures": [list(h) for h in res.solutions]}
    if not res.solutions:
        raise Negative(payload, [res.witness])
    return payload


HANDLERS = {
    "check": cmd_check,
    "aut": cmd_aut,
    "bispace": cmd_bispace,
    "cocycle": cmd_cocycle,
    "cohomology": cmd_cohomology,
    "obstruction": cmd_obstruction,
    "exactseq": cmd_exactseq,
    "structures": cmd_structures,
}


# ---------------------------------------------------------------- driver


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="xmod", description="Finite crossed modules, bispaces and Cech bibundles.",
                allow_abbrev=False)
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("names", nargs="*", help="object names from the workspace")
    p.add_argument("--workspace", action="append", default=[], metavar="FILE",
                   help="JSON document with extra objects (repeatable)")
    p.add_argument("--xm", help="crossed module name")
    p.add_argument("--nerve", help="nerve name")
    p.add_argument("--tau", help="w1, trivial, or a JSON list of H indices per edge")
    p.add_argument("--g", help="JSON list of G indices per edge (structures)")
    p.add_argument("--coeff", help="coefficient group name (cohomology)")
    p.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER)
    p.add_argument("--max-enum", type=int, default=DEFAULT_MAX_ENUM)
    p.add_argument("--human", action="store_true", help="plain listing instead of JSON")
    return p


def execute(argv) -> tuple[dict, int]:
    """Run one invocation and return (report, exit code)."""
    start = time.perf_counter()
    command = None
    status, code, payload, witnesses = "ok", 0, {}, []
    try:
        args = build_parser().parse_intermixed_args(argv)
        command = args.command
        ws = load_workspace(args.workspace, args.max_order)
        payload = HANDLERS[command](ws, args)
    except Negative as neg:
        status, code, payload, witnesses = "fail", 1, neg.payload, neg.witnesses
    except WorkspaceError as exc:
        status, code, witnesses = "error", 2, exc.witness
        payload = {"error": type(exc).__name__, "message": str(exc)}
    except XmodError as exc:
        status, code = "error", 2
        payload = {"error": type(exc).__name__, "message": str(exc)}
        witnesses = [exc.to_dict()]
    report = {
        "schema": SCHEMA,
        "command": command,
        "status": status,
        "payload": _jsonable(payload),
        "witnesses": _jsonable(witnesses),
        "timing_ms": round((time.perf_counter() - start) * 1000, 3),
    }
    return report, code


def dumps(obj, indent: int = 0) -> str:
    """JSON with nested objects indented and flat lists kept on one line."""
    pad, inner = "  " * indent, "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(str(k))}: {dumps(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, list) and any(isinstance(x, (dict, list)) for x in obj):
        if all(isinstance(x, list) and not any(isinstance(y, (dict, list)) for y in x) for x in obj):
            items = [f"{inner}{json.dumps(x)}" for x in obj]
        else:
            items = [f"{inner}{dumps(x, indent + 1)}" for x in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return json.dumps(obj)


def render_human(report: dict) -> str:
    lines = [f"{report['command']}: {report['status']}"]

    def walk(obj, indent):
        pad = "  " * indent
        if isinstance(obj, dict):
            for k, v in obj.items():
                flat = isinstance(v, list) and all(isinstance(x, (int, str, bool)) or x is None for x in v)
                if isinstance(v, (dict, list)) and v and not flat:
                    lines.append(f"{pad}{k}:")
                    walk(v, indent + 1)
                else:
                    lines.append(f"{pad}{k}: {json.dumps(v)}")
        elif isinstance(obj, list):
            for item in obj:
                if isinstance(item, (dict, list)):
                    lines.append(f"{pad}-")
                    walk(item, indent + 1)
                else:
                    lines.append(f"{pad}- {json.dumps(item)}")

    walk(report["payload"], 1)
    if report["witnesses"]:
        lines.append("  witnesses:")
        walk(report["witnesses"], 2)
    return "\n".join(lines)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    report, code = execute(argv)
    human = "--human" in argv
    sys.stdout.write((render_human(report) if human else dumps(report)) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
