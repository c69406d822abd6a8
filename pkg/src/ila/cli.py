"""Command line driver: ``ila <command> [options]``.

Exit status is 0 on success, 1 on a domain error and 2 on a usage error.
With ``--json`` every command prints one report with schema ``ila-report/1``.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import spaces as sp
from .control import place_poles, place_poles_injection
from .emulator import build_rlc_emulator, emulator_dimension_formula, network_gds
from .errors import IlaError
from .field import field_from_name
from .genops import GDS, Genaut, adjoint, minimal_annihilating_poly
from .invariants import max_controlled_invariant, min_conditioned_invariant
from .netgraph import DirectedGraph, multiport_decompose, port_count_formula
from .netlist import RC_EXAMPLE, parse_netlist
from .poly import Poly
from .spaces import Label, Space

SCHEMA = "ila-report/1"


# -- serialisation -------------------------------------------------------

def jsonable(obj, field=None):
    if isinstance(obj, Space):
        return {"index": [str(x) for x in obj.index],
                "rows": [[obj.field.fmt(x) for x in r] for r in obj.rows]}
    if isinstance(obj, Poly):
        return {"coeffs": obj.to_list(), "text": str(obj)}
    if isinstance(obj, Label):
        return str(obj)
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}" if obj.denominator != 1 else str(obj.numerator)
    if isinstance(obj, dict):
        return {str(k): jsonable(v, field) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v, field) for v in obj]
    if isinstance(obj, (GDS, Genaut)):
        return jsonable(obj.space, field)
    return obj


def _fmt_matrix(name, rows):
    out = [f"{name} ="]
    for r in rows:
        out.append("  [" + ", ".join(jsonable(x) for x in r) + "]")
    if not rows:
        out.append("  []")
    return out


def _fmt_space(name, V):
    lines = [f"{name}: rank {V.rank} on " + " ".join(str(x) for x in V.index)]
    lines += ["  " + " ".join(V.field.fmt(x) for x in r) for r in V.rows]
    return lines


# -- inputs --------------------------------------------------------------

def _read(path):
    if path == "@rc":
        return RC_EXAMPLE
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _system(args, field):
    """GDS of the netlist in ``args.input``, on the requested side."""
    net = parse_netlist(_read(args.input))
    if getattr(args, "space", "original") == "emulator":
        return build_rlc_emulator(net, field, flatten=False).gds, net
    return network_gds(net, field), net


def _target(args, field):
    if not args.target_poly:
        raise UsageError("--target-poly is required")
    return Poly.parse(args.target_poly, field)


class UsageError(Exception):
    pass


# -- commands ------------------------------------------------------------

def cmd_decompose(args, field):
    text = _read(args.input)
    try:
        net = parse_netlist(text)
        G = net.graph
        e1 = net.edges_of(*args.kinds.split(",")) if not args.e1 else [sp.L(x) for x in args.e1.split(",")]
    except IlaError:
        if not args.e1:
            raise
        G = DirectedGraph.parse(text)
        e1 = [sp.L(x) for x in args.e1.split(",")]
    e2 = [e for e in G.labels if e not in set(e1)]
    dec = multiport_decompose(G, e1, e2)
    res = {
        "ports": dec.port_count,
        "formula": port_count_formula(G, e1) if e1 else 0,
        "p1": list(dec.p1), "p2": list(dec.p2),
        "g1": [list(map(str, e)) for e in dec.g1.edge_list()],
        "g2": [list(map(str, e)) for e in dec.g2.edge_list()],
        "connector": [list(map(str, e)) for e in dec.connector.edge_list()],
    }
    text_out = [f"ports: {res['ports']} (rank formula {res['formula']})",
                "g1:", dec.g1.format().rstrip(), "g2:", dec.g2.format().rstrip(),
                "connector:", dec.connector.format().rstrip()]
    return res, text_out


def cmd_emulate(args, field):
    net = parse_netlist(_read(args.input))
    em = build_rlc_emulator(net, field)
    fl = em.flattened
    res = {
        "dimension": em.dimension,
        "dimension_formula": emulator_dimension_formula(net),
        "linked": em.report.linked,
        "dotcross": em.report.dotcross,
        "v1": em.pair.v1, "v2": em.pair.v2,
        "matrices": fl,
        "zero_modes": em.zero_modes,
    }
    out = [f"emulator dimension {em.dimension} (formula {res['dimension_formula']}), linked: {em.report.linked}",
           "state: " + " ".join(map(str, fl["state"])),
           "inputs: " + " ".join(map(str, fl["inputs"])),
           "outputs: " + " ".join(map(str, fl["outputs"]))]
    for k in "ABCD":
        out += _fmt_matrix(k, fl[k])
    out += _fmt_space("V1", em.pair.v1) + _fmt_space("V2", em.pair.v2)
    return res, out


def cmd_annpoly(args, field):
    if args.matrix:
        V = Genaut(sp.parse_matrix(_read(args.input), field))
    else:
        V = _system(args, field)[0].zero_input()
    p = minimal_annihilating_poly(V)
    return {"poly": p, "space": args.space}, [str(p)]


def cmd_invariant(args, field):
    G, _ = _system(args, field)
    if args.kind == "conditioned":
        rep = min_conditioned_invariant(G.restricted())
    else:
        rep = max_controlled_invariant(G.contracted())
    res = {"kind": rep.kind, "iterations": rep.iterations, "space": rep.space}
    return res, _fmt_space(f"{rep.kind} invariant ({rep.iterations} steps)", rep.space)


def _law_report(law, target):
    res = {"law": law.linkage, "unique": law.unique, "target": target,
           "achieved": minimal_annihilating_poly(law.achieved),
           "details": {k: v for k, v in law.details.items()}}
    out = _fmt_space(f"{law.kind} law", law.linkage)
    out.append(f"achieved polynomial: {res['achieved']}")
    return res, out


def cmd_feedback(args, field):
    G, _ = _system(args, field)
    t = _target(args, field)
    return _law_report(place_poles(G, t), t)


def cmd_injection(args, field):
    G, _ = _system(args, field)
    t = _target(args, field)
    return _law_report(place_poles_injection(G, t), t)


def cmd_adjoint(args, field):
    G, _ = _system(args, field)
    A = adjoint(G)
    res = {"adjoint": A.space, "mu": list(A.mu), "my": list(A.my), "involution": adjoint(A) == G}
    return res, _fmt_space("adjoint", A.space) + [f"involution: {res['involution']}"]


def _idt_case(job):
    seed, fname, max_dim = job
    field = field_from_name(fname)
    rng = random.Random(seed)
    nx, ny, nz = (rng.randint(0, max_dim) for _ in range(3))
    if nx + nz == 0:
        nx = 1
    X = [Label(f"x{i}") for i in range(nx)]
    Y = [Label(f"y{i}") for i in range(ny)]
    Z = [Label(f"z{i}") for i in range(nz)]
    a = sp.random_space(X + Y, field=field, rng=rng) if X + Y else sp.zero([], field)
    b = sp.random_space(Y + Z, field=field, rng=rng) if Y + Z else sp.zero([], field)
    return sp.idt_holds(a, b)


def cmd_verify_idt(args, field):
    n = args.random
    base = args.seed
    jobs = [((base << 20) + i, field.name if not field.p else f"gf{field.p}", args.max_dim) for i in range(n)]
    if args.parallel and n > 1:
        with ProcessPoolExecutor() as ex:
            results = list(ex.map(_idt_case, jobs, chunksize=max(1, n // 16)))
    else:
        results = [_idt_case(j) for j in jobs]
    ok = sum(results)
    failed = [i for i, r in enumerate(results) if not r]
    res = {"cases": n, "passed": ok, "failed_cases": failed}
    if ok != n:
        raise DomainFailure(res, [f"{ok}/{n} pass"])
    return res, [f"{ok}/{n} pass"]


class DomainFailure(Exception):
    def __init__(self, res, lines):
        super().__init__("check failed")
        self.res, self.lines = res, lines


def cmd_selftest(args, field):
    from .genops import annihilates

    checks = []
    net = parse_netlist(RC_EXAMPLE)
    em = build_rlc_emulator(net)
    fl = em.flattened
    checks.append(("rc state matrix", fl["A"] == [[Fraction(-2, 3)]]))
    checks.append(("rc input matrix", fl["B"] == [[Fraction(2, 3), Fraction(2, 3)]]))
    checks.append(("rc output rows", fl["C"] == [[1], [-1]] and fl["D"] == [[0, -1], [0, 0]]))
    checks.append(("rc linked", em.report.linked and all(em.report.dotcross.values())))
    p = minimal_annihilating_poly(em.gds.zero_input())
    checks.append(("rc emulator polynomial", str(p) == "s + 2/3"))
    checks.append(("rc original annihilated by s(s+2/3)",
                   annihilates(p * Poly.s(), em.original.zero_input())))
    rng = random.Random(args.seed)
    idt = all(_idt_case((rng.getrandbits(32), "q", 4)) for _ in range(25))
    checks.append(("implicit duality, 25 random cases", idt))
    lines = [f"{'PASS' if ok else 'FAIL'} {name}" for name, ok in checks]
    res = {"checks": {name: ok for name, ok in checks}}
    if not all(ok for _, ok in checks):
        raise DomainFailure(res, lines)
    return res, lines


COMMANDS = {
    "decompose": cmd_decompose,
    "emulate": cmd_emulate,
    "annpoly": cmd_annpoly,
    "invariant": cmd_invariant,
    "feedback": cmd_feedback,
    "injection": cmd_injection,
    "adjoint": cmd_adjoint,
    "verify-idt": cmd_verify_idt,
    "selftest": cmd_selftest,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON report")
    common.add_argument("--field", default=None, help="q or gf<p> (default $ILA_FIELD or q)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized commands")

    ap = argparse.ArgumentParser(prog="ila", description="Implicit linear algebra toolkit.")
    sub = ap.add_subparsers(dest="command", required=True)

    def netcmd(name, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("input", help="netlist path, '-' for stdin, '@rc' for the built-in RC example")
        return p

    p = netcmd("decompose", "minimal multiport decomposition")
    p.add_argument("--kinds", default="C", help="device kinds forming E1 (comma separated)")
    p.add_argument("--e1", default=None, help="explicit E1 edge labels (comma separated)")
    netcmd("emulate", "capacitor/inductor emulator of a netlist")
    p = netcmd("annpoly", "minimal annihilating polynomial")
    p.add_argument("--space", choices=("original", "emulator"), default="original")
    p.add_argument("--matrix", action="store_true", help="input is a genaut in matrix fixture format")
    p = netcmd("invariant", "invariant subspaces")
    p.add_argument("--kind", choices=("conditioned", "controlled"), default="conditioned")
    p.add_argument("--space", choices=("original", "emulator"), default="original")
    for name in ("feedback", "injection"):
        p = netcmd(name, f"pole placement by {name}")
        p.add_argument("--target-poly", default=None, help="coefficients, lowest degree first")
        p.add_argument("--space", choices=("original", "emulator"), default="original")
    p = netcmd("adjoint", "adjoint of the network GDS")
    p.add_argument("--space", choices=("original", "emulator"), default="original")
    p = sub.add_parser("verify-idt", parents=[common], help="randomized implicit duality check")
    p.add_argument("--random", type=int, default=100)
    p.add_argument("--max-dim", type=int, default=4)
    p.add_argument("--parallel", action="store_true")
    sub.add_parser("selftest", parents=[common], help="built-in fixture checks")
    return ap


def _emit(args, status, res, lines, error=None):
    if args.json:
        rep = {"schema": SCHEMA, "command": args.command, "status": status,
               "result": jsonable(res)}
        if error is not None:
            rep["error"] = error
        print(json.dumps(rep, sort_keys=True, ensure_ascii=False))
    else:
        for ln in lines:
            print(ln)


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        field = field_from_name(args.field)
    except ValueError as e:
        ap.print_usage(sys.stderr)
        print(f"ila: error: {e}", file=sys.stderr)
        return 2
    try:
        res, lines = COMMANDS[args.command](args, field)
    except UsageError as e:
        ap.print_usage(sys.stderr)
        print(f"ila: error: {e}", file=sys.stderr)
        return 2
    except DomainFailure as e:
        _emit(args, "fail", e.res, e.lines)
        return 1
    except (IlaError, ValueError, OSError) as e:
        err = {"type": type(e).__name__, "message": str(e)}
        if args.json:
            _emit(args, "error", {}, [], err)
        print(f"ila: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    _emit(args, "ok", res, lines)
    return 0


if __name__ == "__main__":
    sys.exit(main())
