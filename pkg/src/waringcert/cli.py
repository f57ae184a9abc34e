"""Command-line front end.

Subcommands: check (run criteria, write a report), gen (ground-truth
instances), hilbert (h/Dh table), kruskal (one Kruskal rank), syzygy
(debug dump of the octic pipeline's matrices).  The WARING_PRIME
environment variable overrides the default modulus 31991 wherever a
prime is not given explicitly.

Exit codes for check: 0 a verdict was reached (either way), 1 the run
stayed inconclusive, 2 input error.  gen adds 3 for an exhausted
attempt budget.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .criteria import INCONCLUSIVE
from .driver import run_criteria
from .errors import (
    GenerationExhausted,
    InstanceFormatError,
    NotPrime,
    ScanBudgetExceeded,
    WaringError,
)
from .ffield import DEFAULT_PRIME
from .generate import gen_identifiable, gen_unidentifiable
from .octic14 import (
    FULL,
    MODES,
    hilbert_burch,
    normalization_check,
    residual_family,
    second_decomposition_system,
)
from .points import hilbert_profile, kruskal_rank_detail
from .storage import (
    build_report,
    canonical_json,
    instance_to_obj,
    load_instance,
    save_report,
)

EXIT_VERDICT = 0
EXIT_INCONCLUSIVE = 1
EXIT_INPUT = 2
EXIT_EXHAUSTED = 3


def _default_prime() -> int:
    env = os.environ.get("WARING_PRIME")
    return int(env) if env else DEFAULT_PRIME


def _load(path):
    try:
        return load_instance(path)
    except FileNotFoundError:
        print(f"error: no such file: {path}", file=sys.stderr)
        sys.exit(EXIT_INPUT)
    except InstanceFormatError as e:
        print(f"error: {path}: {e}", file=sys.stderr)
        sys.exit(EXIT_INPUT)


def cmd_check(args) -> int:
    inst, metadata, digest = _load(args.path)
    t0 = time.perf_counter()
    final, results = run_criteria(inst, criteria=args.criteria, mode=args.mode,
                                  jobs=args.jobs)
    elapsed = time.perf_counter() - t0
    report = build_report(
        final, results,
        flags={"mode": args.mode, "criteria": args.criteria},
        input_digest=digest,
        timings={"total_seconds": round(elapsed, 6)},
        input_metadata=metadata,
    )
    text = canonical_json(report)
    if args.out:
        save_report(report, args.out)
    sys.stdout.write(text)
    return EXIT_INCONCLUSIVE if final.verdict == INCONCLUSIVE else EXIT_VERDICT


def cmd_gen(args) -> int:
    prime = args.prime if args.prime is not None else _default_prime()
    try:
        if args.kind == "identifiable":
            gen = gen_identifiable(args.seed, prime, jobs=args.jobs)
        else:
            gen = gen_unidentifiable(args.seed, prime, jobs=args.jobs,
                                     rational_residual=args.rational_residual)
    except (NotPrime, ScanBudgetExceeded) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except GenerationExhausted as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_EXHAUSTED
    metadata = {"seed": gen.seed, "ground_truth": gen.ground_truth,
                "attempts": gen.attempts}
    if gen.witness_data and gen.witness_data.get("residual_points"):
        metadata["residual_points"] = gen.witness_data["residual_points"]
    obj = instance_to_obj(gen.instance, metadata)
    text = canonical_json(obj)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_VERDICT


def cmd_hilbert(args) -> int:
    inst, _, _ = _load(args.path)
    ps = inst.pointset
    if args.max_degree is not None:
        j_max = args.max_degree
    else:
        # up to stabilization plus one degree so the zero difference shows
        prof = hilbert_profile(ps, len(ps))
        j_max = next(j for j, h in enumerate(prof.values) if h == len(ps)) + 1
    prof = hilbert_profile(ps, j_max)
    width = max(len(str(v)) for v in prof.values) + 2
    print("j  " + "".join(f"{j:>{width}}" for j in range(j_max + 1)))
    print("h  " + "".join(f"{v:>{width}}" for v in prof.values))
    print("Dh " + "".join(f"{v:>{width}}" for v in prof.differences))
    return EXIT_VERDICT


def cmd_kruskal(args) -> int:
    inst, _, _ = _load(args.path)
    k, examined = kruskal_rank_detail(inst.pointset, args.d, jobs=args.jobs)
    print(f"k_{args.d} = {k} ({examined} subsets examined)")
    return EXIT_VERDICT


def cmd_syzygy(args) -> int:
    inst, _, _ = _load(args.path)
    try:
        hb = hilbert_burch(inst.pointset)
        Cm, crank = normalization_check(hb)
        fam = residual_family(hb)
        report = second_decomposition_system(inst, fam, mode=args.mode)
    except WaringError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INPUT
    out = {
        "quartic": str(hb.Q),
        "quintics": [str(q) for q in hb.quintics],
        "syzygy_matrix": [[str(e) for e in row] for row in hb.M],
        "normalization_matrix": Cm.a.tolist(),
        "normalization_rank": crank,
        "system_mode": report.mode,
        "system_matrix": report.system_matrix.a.tolist(),
        "system_rank": report.system_rank,
    }
    if report.selected_columns is not None:
        out["selected_columns"] = list(report.selected_columns)
    sys.stdout.write(canonical_json(out))
    return EXIT_VERDICT


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="waringcert",
        description="Exact certificates of minimality and uniqueness for "
                    "Waring decompositions of ternary forms.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="certify an instance file")
    p.add_argument("path")
    p.add_argument("--mode", choices=MODES, default=FULL,
                   help="decision system: full 40x12 or reduced 13x12")
    p.add_argument("--criteria", default="all",
                   choices=("all", "range", "ranger", "kruskal", "octic14"))
    p.add_argument("--out", help="also write the report to this file")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("gen", help="generate a ground-truth instance")
    p.add_argument("kind", choices=("identifiable", "unidentifiable"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--prime", type=int, default=None)
    p.add_argument("--rational-residual", action="store_true",
                   help="small fields: make the second decomposition's "
                        "points rational")
    p.add_argument("--out")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("hilbert", help="print the Hilbert function table")
    p.add_argument("path")
    p.add_argument("--max-degree", type=int, default=None)
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("kruskal", help="print one Kruskal rank")
    p.add_argument("path")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_kruskal)

    p = sub.add_parser("syzygy", help="dump the octic pipeline's matrices")
    p.add_argument("path")
    p.add_argument("--mode", choices=MODES, default=FULL)
    p.set_defaults(func=cmd_syzygy)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code = args.func(args)
    except NotPrime as e:
        print(f"error: {e}", file=sys.stderr)
        code = EXIT_INPUT
    sys.exit(code)


if __name__ == "__main__":
    main()
