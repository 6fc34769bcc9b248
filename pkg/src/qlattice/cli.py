"""Command-line driver.

Exit codes: 0 for success (or a true predicate), 1 for a domain failure
(or a false predicate), 2 for usage / parse errors.  All randomness is
seeded (flag --seed, falling back to the QL_SEED environment variable),
so identical invocations produce byte-identical reports.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import identical, lattice, qspace, serialize, verify
from .hilbert import sector_space
from .serialize import dumps

PARSE_ERROR = 2
DOMAIN_ERROR = 1


def _load_state_set(path: str) -> lattice.StateSet:
    try:
        with open(path) as fh:
            obj = json.load(fh)
        return serialize.state_set_from_json(obj)
    except (OSError, json.JSONDecodeError, ValueError, KeyError) as exc:
        print(f"cannot parse {path}: {exc}", file=sys.stderr)
        raise SystemExit(PARSE_ERROR) from exc


def cmd_sector(args) -> int:
    sec = sector_space(args.n, args.sign)
    out = {
        "n": args.n,
        "sign": args.sign,
        "sector_dim": sec.sector_dim,
        "basis": [serialize.ket_to_json(k) for k in sec.basis],
    }
    print(dumps(out))
    if sec.is_empty:
        print("warning: sector is empty", file=sys.stderr)
    return 0


def cmd_sector_table(args) -> int:
    sys.stdout.write(identical.sector_dimension_table(args.max_n))
    return 0


def cmd_lattice(args) -> int:
    a = _load_state_set(args.inputs[0])
    if args.op == "neg":
        result = lattice.neg(a)
    else:
        if len(args.inputs) < 2:
            print(f"lattice {args.op} needs two input files", file=sys.stderr)
            raise SystemExit(PARSE_ERROR)
        b = _load_state_set(args.inputs[1])
        if args.op == "meet":
            result = lattice.meet(a, b)
        elif args.op == "join":
            result = lattice.join(a, b)
        else:  # leq
            truth = lattice.leq(a, b)
            print("true" if truth else "false")
            return 0 if truth else 1
    text = dumps(serialize.state_set_to_json(result))
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def cmd_scan(args) -> int:
    summary = identical.reduced_purity_scan(args.sign, args.n, args.samples, seed=args.seed)
    print(dumps(summary))
    return 0


def cmd_qspace(args) -> int:
    if args.qspace_cmd == "inner":
        f = serialize.occ_state_from_text(args.operands[0])
        g = serialize.occ_state_from_text(args.operands[1])
        print(qspace.inner_basis(f, g))
    elif args.qspace_cmd == "norm":
        f = serialize.occ_state_from_text(args.operands[0])
        print(repr(qspace.norm(qspace.basis_vector(f))))
    elif args.qspace_cmd == "pauli":
        f = serialize.occ_state_from_text(args.operands[0])
        excluded = qspace.pauli_check(f)
        print("excluded" if excluded else "allowed")
        return 0
    else:  # gram
        states = qspace.basis_states(args.stats, args.max_n, args.n_modes)
        gram = [[qspace.inner_basis(f, g) for g in states] for f in states]
        print(dumps({"stats": args.stats, "n": args.max_n, "n_modes": args.n_modes,
                     "states": [serialize.occ_state_to_text(f) for f in states],
                     "gram": gram}))
    return 0


def cmd_verify(args) -> int:
    config = verify.RunConfig(seed=args.seed)
    if args.trials is not None:
        config.samples = {args.suite: args.trials}
    suite = verify.SUITES[args.suite]
    report = suite(config)
    print(dumps(report))
    return 0 if report["passed"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qlattice",
        description="Convex-lattice quantum logic toolkit: symmetry sectors, "
                    "state-set lattices, occupation-number products.")
    parser.add_argument("--seed", type=int, default=None,
                        help="random seed (default: QL_SEED env var or 0)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sector", help="print a symmetry sector basis")
    p.add_argument("--n", type=int, required=True, help="single-particle dimension")
    p.add_argument("--sign", choices=["+", "-"], required=True)
    p.set_defaults(func=cmd_sector)

    p = sub.add_parser("sector-table", help="CSV of sector dimensions")
    p.add_argument("--max-n", type=int, default=8)
    p.set_defaults(func=cmd_sector_table)

    p = sub.add_parser("lattice", help="lattice operation on state-set JSON files")
    p.add_argument("op", choices=["meet", "join", "neg", "leq"])
    p.add_argument("inputs", nargs="+", help="input state-set JSON files")
    p.add_argument("-o", "--output", help="write result JSON here instead of stdout")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("scan", help="reduced-purity scan over random sector states")
    p.add_argument("--sign", choices=["+", "-"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, default=100)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("qspace", help="occupation-number products")
    qs = p.add_subparsers(dest="qspace_cmd", required=True)
    for name, nops in (("inner", 2), ("norm", 1), ("pauli", 1)):
        q = qs.add_parser(name)
        q.add_argument("operands", nargs=nops,
                       help="occupation states, e.g. \"f:1,2,3\"")
        q.set_defaults(func=cmd_qspace)
    q = qs.add_parser("gram", help="integer Gram matrix of a basis block")
    q.add_argument("--stats", choices=["b", "f"], required=True)
    q.add_argument("--n-modes", type=int, required=True)
    q.add_argument("--max-n", type=int, required=True)
    q.set_defaults(func=cmd_qspace)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=sorted(verify.SUITES))
    p.add_argument("--trials", type=int, default=None)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.seed is None:
        args.seed = verify.RunConfig().seed
    try:
        return args.func(args)
    except SystemExit:
        raise
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DOMAIN_ERROR


if __name__ == "__main__":
    sys.exit(main())
