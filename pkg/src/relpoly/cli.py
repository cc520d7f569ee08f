"""Command-line front end: ``relpoly <command> ...``."""
from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path

from .amicable import conjecture_scan, connected_multigraphs, cactus_graphs, check_network, sp_prime_networks
from .errors import DomainError, FormatError, InconclusiveError, RefusalError
from .hypercube import PolyCube, cube_falsify
from .matroidfv import (
    class_membership,
    f_vector,
    find_K,
    hj_setsystem,
    matroid_check,
    parse_setsystem,
    thm03_check,
)
from .netgraph import Multigraph, parse_graph
from .polycore import Poly, parse_poly
from .realroot import schur_quasi_stable
from .relical import brute_force_reliability, h_poly, monte_carlo, reliability_poly, report

log = logging.getLogger("relpoly")

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise UsageError(f"{path}: cannot read ({e.strerror})") from None


def _load_graph(path: str) -> Multigraph:
    try:
        return parse_graph(_read(path))
    except FormatError as e:
        raise UsageError(f"{path}:{e}") from None


def _first_record(text: str) -> str:
    for line in text.splitlines():
        s = line.strip()
        if s and not s.startswith("#"):
            return s.split()[0]
    return ""


def _poly(p: Poly | None):
    return None if p is None else p.to_json()


# -- commands --------------------------------------------------------------------

def cmd_compute(args) -> tuple[dict, int]:
    g = _load_graph(args.graph)
    out = {"n": g.n, "m": g.m, "d": g.d}
    if not g.is_connected():
        zero = Poly()
        verdict = schur_quasi_stable(zero)
        out.update(R=[], H=[], J=[], verdict=verdict.to_json(), violations=[])
        return out, EXIT_PASS
    rep = report(g)
    verdict = schur_quasi_stable(rep.h, rep.d)
    out.update(R=_poly(rep.r), H=_poly(rep.h), J=_poly(rep.j), verdict=verdict.to_json(), violations=rep.violations())
    ok = verdict.quasi_stable and not out["violations"]
    return out, EXIT_PASS if ok else EXIT_FAIL


def cmd_check_bc(args) -> tuple[dict, int]:
    text = _read(args.file)
    try:
        if _first_record(text) == "ground":
            s = parse_setsystem(text)
            hj = hj_setsystem(s)
            h, d, kind = hj.h, hj.t, "setsystem"
        else:
            g = parse_graph(text)
            kind = "graph"
            if not g.is_connected():
                h, d = Poly(), None
            else:
                h, d = h_poly(g), g.d
    except FormatError as e:
        raise UsageError(f"{args.file}:{e}") from None
    verdict = schur_quasi_stable(h, d)
    out = {"kind": kind, "H": _poly(h), "verdict": verdict.to_json()}
    return out, EXIT_PASS if verdict.quasi_stable else EXIT_FAIL


def _parse_pair(text: str) -> tuple[int, int]:
    try:
        v, w = (int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"--pair expects 'v,w', got {text!r}") from None
    return v, w


def cmd_scan_amicable(args) -> tuple[dict, int]:
    if args.graph:
        graphs = [_load_graph(args.graph)]
        pairs = [_parse_pair(args.pair)] if args.pair else "all"
        for g in graphs:
            if not g.is_connected():
                raise UsageError(f"{args.graph}: graph is disconnected")
            if pairs != "all" and not all(0 <= x < g.n for p in pairs for x in p):
                raise UsageError(f"--pair {args.pair} out of range for {g.n} vertices")
    else:
        if args.pair:
            raise UsageError("--pair needs --graph")
        graphs = connected_multigraphs(args.n_max, args.m_max)
        pairs = "all"
    rep = conjecture_scan(graphs, pairs, args.samples, args.seed)
    out = rep.to_json()
    out["seed"] = args.seed
    return out, EXIT_PASS if rep.ok else EXIT_FAIL


def cmd_scan_bc(args) -> tuple[dict, int]:
    if args.family == "sp-prime":
        graphs = sp_prime_networks(args.count, args.seed)
    elif args.family == "cactus":
        graphs = cactus_graphs(args.n_max)
    else:
        graphs = connected_multigraphs(args.n_max, args.m_max)
    total, failures = 0, []
    for g in graphs:
        total += 1
        r = check_network(g)
        if not (r.quasi_stable and r.interlacing):
            failures.append({"graph": g.to_text(), "quasi_stable": r.quasi_stable, "interlacing": r.interlacing})
        if total % 100 == 0:
            log.info("checked %d graphs", total)
    failures.sort(key=lambda f: f["graph"])
    out = {"family": args.family, "seed": args.seed, "graphs": total, "failures": failures}
    return out, EXIT_FAIL if failures else EXIT_PASS


def cmd_matroid(args) -> tuple[dict, int]:
    try:
        s = parse_setsystem(_read(args.file))
    except FormatError as e:
        raise UsageError(f"{args.file}:{e}") from None
    hj = hj_setsystem(s)
    mem = class_membership(s)
    f = f_vector(s)
    out = {
        "ground": s.ground,
        "f": f,
        "ftilde": [str(c) for c in hj.ftilde],
        "t": hj.t,
        "H": _poly(hj.h),
        "J": _poly(hj.j),
        "membership": mem.to_json(),
        "chain_ok": mem.chain_ok,
        "thm03": [{"k": k, "sum": v, "ok": ok} for k, v, ok in thm03_check(f)],
        "matroid": matroid_check(s).to_json(),
    }
    if args.k_max:
        out["K"] = find_K(s, args.k_max)
    return out, EXIT_PASS if mem.chain_ok else EXIT_FAIL


def cmd_cube(args) -> tuple[dict, int]:
    text = _read(args.file)
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError(f"{args.file}:{e.lineno}:{e.colno}: {e.msg}") from None
    try:
        dim = raw["dim"]
        entries = {k: parse_poly(v) if isinstance(v, str) else Poly(Fraction(x) for x in v) for k, v in raw["entries"].items()}
        cube = PolyCube.from_mapping(dim, entries)
    except (KeyError, TypeError, ValueError) as e:
        raise UsageError(f"{args.file}: malformed cube ({e})") from None
    v = cube_falsify(cube, args.samples, args.seed, args.exact_axis)
    out = {"cube": cube.to_json(), "verdict": v.to_json()}
    if v.falsified:
        return out, EXIT_FAIL
    return out, EXIT_PASS if v.exact else EXIT_INCONCLUSIVE


def cmd_oracle(args) -> tuple[dict, int]:
    g = _load_graph(args.graph)
    try:
        q = Fraction(args.q)
    except ValueError:
        raise UsageError(f"--q expects a rational, got {args.q!r}") from None
    if not 0 <= q <= 1:
        raise UsageError("--q must lie in [0, 1]")
    engine = reliability_poly(g)
    out = {"R": _poly(engine), "q": str(q)}
    ok = True
    try:
        brute = brute_force_reliability(g)
        out["brute_force_agrees"] = brute == engine
        ok &= brute == engine
    except RefusalError as e:
        out["brute_force_agrees"] = None
        log.info("brute force skipped: %s", e)
    exact = float(engine(q))
    est = monte_carlo(g, q, args.trials, args.seed)
    inside = est.contains(exact)
    out["monte_carlo"] = {"mean": round(est.mean, 12), "stderr": round(est.stderr, 12), "trials": est.trials,
                          "exact": round(exact, 12), "within_3_sigma": inside}
    ok &= inside
    return out, EXIT_PASS if ok else EXIT_FAIL


# -- output --------------------------------------------------------------------

def _scalar(v) -> bool:
    return not isinstance(v, (dict, list))


def _text(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    items = sorted(obj.items()) if isinstance(obj, dict) else [("-", v) for v in obj]
    for k, v in items:
        if _scalar(v):
            lines.append(f"{pad}{k}: {v if isinstance(v, str) else json.dumps(v)}")
        elif k == "-" and isinstance(v, dict) and all(map(_scalar, v.values())):
            lines.append(pad + "- " + ", ".join(f"{a}={json.dumps(b)}" for a, b in sorted(v.items())))
        elif isinstance(v, list) and all(map(_scalar, v)):
            lines.append(f"{pad}{k}: [{', '.join(str(x) for x in v)}]")
        else:
            lines.append(f"{pad}{k}:")
            lines += _text(v, indent + 1)
    return lines


def render(obj: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(obj, sort_keys=True, indent=2)
    return "\n".join(_text(obj))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="relpoly", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true", help="progress messages on stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, seed=True):
        sp.add_argument("--format", "--report", dest="format", choices=("json", "text"), default="json")
        if seed:
            sp.add_argument("--seed", type=int, default=0)
            sp.add_argument("--samples", type=int, default=100)

    sp = sub.add_parser("compute", help="reliability report of a graph")
    sp.add_argument("graph")
    common(sp, seed=False)
    sp.set_defaults(func=cmd_compute)

    sp = sub.add_parser("check-bc", help="Schur quasi-stability of H for a graph or set system")
    sp.add_argument("file")
    common(sp, seed=False)
    sp.set_defaults(func=cmd_check_bc)

    sp = sub.add_parser("scan-amicable", help="amicability campaign")
    sp.add_argument("--n-max", type=int, default=5)
    sp.add_argument("--m-max", type=int, default=8)
    sp.add_argument("--graph")
    sp.add_argument("--pair")
    common(sp)
    sp.set_defaults(func=cmd_scan_amicable)

    sp = sub.add_parser("scan-bc", help="stability campaign over generated graphs")
    sp.add_argument("--family", choices=("sp-prime", "cactus", "atlas"), default="sp-prime")
    sp.add_argument("--count", type=int, default=100)
    sp.add_argument("--n-max", type=int, default=5)
    sp.add_argument("--m-max", type=int, default=8)
    common(sp)
    sp.set_defaults(func=cmd_scan_bc)

    sp = sub.add_parser("matroid", help="f-vector, H/J and class membership of a set system")
    sp.add_argument("file")
    sp.add_argument("--k-max", type=int, default=0)
    common(sp, seed=False)
    sp.set_defaults(func=cmd_matroid)

    sp = sub.add_parser("cube", help="interpolatory verdict for a cube given as JSON")
    sp.add_argument("file")
    sp.add_argument("--exact-axis", type=int)
    common(sp)
    sp.set_defaults(func=cmd_cube)

    sp = sub.add_parser("oracle", help="cross-check the engine against brute force and Monte Carlo")
    sp.add_argument("graph")
    sp.add_argument("--q", default="1/2")
    sp.add_argument("--trials", type=int, default=20000)
    common(sp)
    sp.set_defaults(func=cmd_oracle)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        out, code = args.func(args)
    except UsageError as e:
        print(f"relpoly: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, RefusalError) as e:
        print(f"relpoly: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except InconclusiveError as e:
        print(f"relpoly: inconclusive: {e}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    print(render(out, args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
