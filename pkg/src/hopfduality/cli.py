"""Command-line driver.

Exit codes: 0 success, 1 a mathematical check failed, 2 bad input.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .algebra import DEFAULT_SEED
from .duality import dualize, reconstruct_group
from .errors import (BadSpec, ExtensionInconsistent, HopfDualityError, NotAbelian, NotAGroup,
                     SplitFailure)
from .groups import (FLEET_SPECS, dual_group, find_isomorphism, function_algebra, group_from_spec,
                     hopf_from_spec, identify_group, parse_spec, twisted_hopf, two_element_monoid)
from .hopf import verify_hopf
from .report import SCHEMA_VERSION, duality_report
from .reps import generator_candidate, is_standard

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _seed(text: str) -> int:
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}") from None
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned value")
    return v


def _tol(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid tolerance {text!r}") from None
    if not 0 < v < 1e-3:
        raise argparse.ArgumentTypeError("tol must lie in (0, 1e-3)")
    return v


def load_spec(text: str | None):
    if text is None:
        raise BadSpec("--spec is required")
    stripped = text.strip()
    if stripped.startswith("{"):
        return parse_spec(stripped)
    if os.path.isfile(text):
        with open(text, encoding="utf-8") as fh:
            return parse_spec(fh.read())
    raise BadSpec(f"--spec is neither inline JSON nor a readable file: {text!r}")


def _emit(args, doc: dict, summary: str):
    print(summary)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")


def _base_doc(args, command: str, spec) -> dict:
    return {"schema_version": SCHEMA_VERSION, "command": command, "input": {"spec": spec, "side": args.side},
            "seed": args.seed, "tol": args.tol}


def cmd_axioms(args) -> int:
    spec = load_spec(args.spec)
    Mh, _ = hopf_from_spec(spec, args.side, args.seed)
    rep = verify_hopf(Mh, args.tol)
    doc = _base_doc(args, "axioms", spec)
    doc.update({"signature": list(Mh.signature), "residuals": rep.residuals, "passed": rep.passed})
    lines = [f"axioms for {json.dumps(spec, sort_keys=True)} ({args.side}): "
             f"{'pass' if rep.passed else 'FAIL'}"]
    lines += [f"  {k:<28} {v:.3e}" for k, v in rep.residuals.items()]
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_dualize(args) -> int:
    spec = load_spec(args.spec)
    Mh, _ = hopf_from_spec(spec, args.side, args.seed)
    rep = duality_report(Mh, {"spec": spec, "side": args.side}, args.seed, args.tol,
                         double=args.double, triple=args.triple, reflexive=args.reflexive,
                         timing=args.timing)
    _emit(args, rep.to_dict(), rep.summary())
    return EXIT_OK


def cmd_pontryagin(args) -> int:
    spec = load_spec(args.spec)
    G = group_from_spec(spec)
    if not G.is_abelian():
        raise NotAbelian(f"{G.name} is not abelian")
    t0 = time.perf_counter()
    dc = dualize(function_algebra(G), args.seed, args.tol)
    R = reconstruct_group(dc.dual, args.seed, args.tol)
    Ghat = dual_group(G)
    ok = find_isomorphism(R, Ghat) is not None
    doc = _base_doc(args, "pontryagin", spec)
    doc.update({"group": identify_group(G), "dual_group": identify_group(Ghat),
                "reconstructed": identify_group(R), "reconstructed_cayley": R.table.tolist(),
                "isomorphic": ok})
    if args.timing:
        doc["wall_clock_s"] = round(time.perf_counter() - t0, 3)
    _emit(args, doc, f"pontryagin {G.name}: reconstructed dual {identify_group(R)}, "
                     f"character group {identify_group(Ghat)} -> {'match' if ok else 'MISMATCH'}")
    return EXIT_OK if ok else EXIT_FAIL


def _character_index(rep, n: int) -> int:
    """``s`` with ``chi(delta_1) = exp(2 pi i s / n)``, for characters of the predual on Z_n."""
    z = complex(rep.matrices[1 % n, 0, 0])
    return int(round(np.angle(z) / (2 * np.pi / n))) % n


def cmd_twisted_demo(args) -> int:
    spec = load_spec(args.spec) if args.spec else {"type": "twisted", "n": 5}
    if spec["type"] != "twisted":
        raise BadSpec("twisted-demo needs a spec of type 'twisted'")
    n = spec["n"]
    Mh = twisted_hopf(n)
    dc = dualize(Mh, args.seed, args.tol)
    chars = []
    for i, r in enumerate(dc.partition.reps):
        st = is_standard(r, args.tol)
        chars.append({"s": _character_index(r, n), "standard": st.standard, "residual": st.residual,
                      "generator_unitarity": generator_candidate(r).residuals["unitarity"]})
    chars.sort(key=lambda c: c["s"])
    rep = duality_report(Mh, {"spec": spec}, args.seed, args.tol, double=True, reflexive=True,
                         triple=True, timing=args.timing)
    mon = dualize(two_element_monoid(), args.seed, args.tol)
    mon_chars = [{"standard": bool(is_standard(r, args.tol).standard),
                  "generator_unitarity": generator_candidate(r).residuals["unitarity"],
                  "concrete_unitarity": generator_candidate(r).residuals["concrete_unitarity"]}
                 for r in mon.partition.reps]
    doc = rep.to_dict()
    doc["command"] = "twisted-demo"
    doc["characters"] = chars
    doc["standard_s"] = [c["s"] for c in chars if c["standard"]]
    doc["monoid_characters"] = mon_chars
    lines = [rep.summary(), f"  standard characters s = {doc['standard_s']}"]
    lines += [f"  chi_{c['s']}: {'standard' if c['standard'] else 'non-standard'} "
              f"(residual {c['residual']:.3e})" for c in chars]
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK


def _fleet_entries():
    out = [(s, side) for s in FLEET_SPECS for side in ("function", "groupvn")]
    out += [({"type": "twisted", "n": n}, "function") for n in (2, 3, 5, 6)]
    return out


def _fleet_one(job):
    idx, spec, side, seed, tol = job
    s = seed ^ idx
    Mh, _ = hopf_from_spec(spec, side, s)
    rep = duality_report(Mh, {"spec": spec, "side": side}, s, tol, double=True, reflexive=True)
    return idx, rep.to_dict(), verify_hopf(Mh, tol).passed


def cmd_fleet(args) -> int:
    jobs = [(i, spec, side, args.seed, args.tol) for i, (spec, side) in enumerate(_fleet_entries())]
    t0 = time.perf_counter()
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            results = list(ex.map(_fleet_one, jobs))
    else:
        results = [_fleet_one(j) for j in jobs]
    results.sort(key=lambda r: r[0])
    doc = {"schema_version": SCHEMA_VERSION, "command": "fleet", "seed": args.seed, "tol": args.tol,
           "runs": [r[1] for r in results]}
    if args.timing:
        doc["wall_clock_s"] = round(time.perf_counter() - t0, 3)
    ok = all(r[2] for r in results)
    lines = []
    for _, d, passed in results:
        v = d["verdicts"]
        lines.append(f"{json.dumps(d['input']['spec'], sort_keys=True):<60} {d['input']['side']:<9} "
                     f"M{tuple(d['signatures']['M'])} -> {tuple(d['signatures']['dual'])} "
                     f"axioms={'ok' if passed else 'FAIL'} reflexive={v.get('reflexive_canonical')}")
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--spec", help="group spec as inline JSON or a path to a JSON file")
    common.add_argument("--side", choices=("function", "groupvn"), default="function",
                        help="C(G) ('function') or W*(G) ('groupvn')")
    common.add_argument("--seed", type=_seed, default=DEFAULT_SEED, help="64-bit seed (default 0x5EED)")
    common.add_argument("--tol", type=_tol, default=1e-9, help="structural tolerance in (0, 1e-3)")
    common.add_argument("--out", help="write the JSON report here")
    common.add_argument("--timing", action="store_true", help="record wall-clock time in the report")

    p = argparse.ArgumentParser(prog="hopfduality", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("axioms", parents=[common], help="verify the Hopf-von Neumann axioms")
    d = sub.add_parser("dualize", parents=[common], help="compute the dual and report")
    d.add_argument("--double", action="store_true", help="also compute the double dual")
    d.add_argument("--triple", action="store_true", help="also compute the triple dual")
    d.add_argument("--reflexive", action="store_true", help="decide reflexivity")
    sub.add_parser("pontryagin", parents=[common], help="compare the dual of C(G) with the character group")
    sub.add_parser("twisted-demo", parents=[common], help="the twisted non-reflexive example")
    f = sub.add_parser("fleet", parents=[common], help="run the whole test fleet")
    f.add_argument("--jobs", type=int, default=1, help="worker processes")
    return p


COMMANDS = {"axioms": cmd_axioms, "dualize": cmd_dualize, "pontryagin": cmd_pontryagin,
            "twisted-demo": cmd_twisted_demo, "fleet": cmd_fleet}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (BadSpec, NotAbelian) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ExtensionInconsistent, NotAGroup, SplitFailure) as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except HopfDualityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except OSError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
