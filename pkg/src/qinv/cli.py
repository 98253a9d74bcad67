"""Command line interface: ``qinv {eval,group,verify,certify,optimize}``.

JSON in, JSON out.  Exit codes: 0 success, 1 failed verification or
certification, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import invariants as inv
from . import qstate as qs
from . import reflection_group as rg
from . import verify
from .optimizer import OptConfig, check_L, maximize_abs_gamma


class InputError(ValueError):
    """Malformed user input; maps to exit code 2."""


def _complex_list(value, field: str) -> np.ndarray:
    try:
        pairs = [complex(float(re), float(im)) for re, im in value]
    except (TypeError, ValueError) as exc:
        raise InputError(f"field '{field}': expected a list of [re, im] pairs") from exc
    return np.array(pairs, dtype=np.complex128)


def parse_state(data) -> tuple[str, np.ndarray]:
    """Return ``("a", z)`` for A-coordinates or ``("full", amplitudes)``."""
    if not isinstance(data, dict):
        raise InputError("state JSON must be an object with 'a' or 'n'/'amps'")
    if "a" in data:
        z = _complex_list(data["a"], "a")
        if z.shape != (4,):
            raise InputError(f"field 'a': expected 4 coordinates, got {len(z)}")
        if not np.all(np.isfinite(z)):
            raise InputError("field 'a': non-finite entry")
        return "a", z
    if "amps" not in data:
        raise InputError("missing field 'amps' (or 'a')")
    amps = _complex_list(data["amps"], "amps")
    n = data.get("n")
    if not isinstance(n, int) or n < 1:
        raise InputError("field 'n': expected a positive integer")
    if amps.size != 2**n:
        raise InputError(f"field 'amps': expected {2**n} amplitudes for n={n}, got {amps.size}")
    if not np.all(np.isfinite(amps)):
        raise InputError("field 'amps': non-finite entry")
    return "full", amps


def _load_input(args) -> tuple[str, np.ndarray]:
    if getattr(args, "a", None) is not None:
        try:
            raw = json.loads(args.a)
        except json.JSONDecodeError as exc:
            raise InputError(f"field 'a': invalid JSON ({exc.msg})") from exc
        return parse_state({"a": raw})
    path = getattr(args, "state_file", None)
    try:
        text = sys.stdin.read() if path in (None, "-") else Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read state file: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"state: invalid JSON ({exc.msg})") from exc
    return parse_state(data)


def _pair(c: complex) -> list[float]:
    return [float(c.real), float(c.imag)]


POLYS = {
    "E0": lambda: inv.E(0), "E1": lambda: inv.E(1), "E2": lambda: inv.E(2),
    "E3": lambda: inv.E(3), "E4": lambda: inv.E(4),
    "F1": lambda: inv.F(1), "F3": lambda: inv.F(3), "F4": lambda: inv.F(4), "F6": lambda: inv.F(6),
    "delta": inv.delta, "gamma": inv.gamma, "jacobian": inv.jacobian_F,
}


def evaluate(kind: str, vec: np.ndarray) -> dict:
    if kind == "a":
        return {"kind": "a", "report": inv.eval_invariants(vec).to_dict()}
    n = qs.n_qubits(vec)
    if n == 2:
        return {"kind": "full", "n": 2, "f2": _pair(qs.f2(vec))}
    if n == 3:
        return {"kind": "full", "n": 3, "f4": _pair(qs.f4(vec))}
    if n == 4:
        if not np.any(vec):
            raise InputError("field 'amps': zero state")
        return {"kind": "full", "n": 4, "bilinear_form": _pair(qs.bilinear_form(vec)),
                "orbit_dim": qs.orbit_dim(vec), "generic": qs.is_generic(vec)}
    raise InputError(f"field 'n': evaluation supports n in 2..4, got {n}")


def cmd_eval(args) -> tuple[dict, int]:
    if args.dump_poly:
        if args.dump_poly not in POLYS:
            raise InputError(f"--dump-poly: unknown polynomial {args.dump_poly!r}; choose from {sorted(POLYS)}")
        p = POLYS[args.dump_poly]()
        return {"name": args.dump_poly, "degree": p.degree(), "poly": p.to_json()}, 0
    return evaluate(*_load_input(args)), 0


def cmd_group(args) -> tuple[dict, int]:
    group = rg.generate_closure(rg.group_generators(args.which))
    polys = {f"F{k}": inv.F(k) for k in (1, 3, 4, 6)}
    out = {
        "group": args.which,
        "order": group.order,
        "contains_minus_identity": group.contains_minus_identity(),
        "generators": [g.to_json() for g in group.generators],
        "table": rg.verification_table(group, polys),
        "invariant_on_all_elements": {name: rg.is_invariant(p, group) for name, p in polys.items()},
    }
    if args.dump_elements:
        Path(args.dump_elements).write_text(json.dumps([g.to_json() for g in group.elements]))
        out["elements_file"] = args.dump_elements
    ok = all(out["invariant_on_all_elements"].values())
    return out, 0 if ok else 1


def cmd_verify(args) -> tuple[dict, int]:
    suite = args.suite_pos or args.suite or "all"
    if suite not in (*verify.SUITES, "all"):
        raise InputError(f"unknown suite {suite!r}; choose symbolic, group, numeric or all")
    checks = verify.run(suite)
    failed = [c["check"] for c in checks if c["status"] != "pass"]
    return {"suite": suite, "passed": not failed, "failed": failed, "checks": checks}, 1 if failed else 0


def cmd_certify(args) -> tuple[dict, int]:
    kind, vec = _load_input(args)
    psi = qs.embed_A(vec) if kind == "a" else vec
    if psi.size != 16:
        raise InputError("field 'n': certify needs a 4-qubit state")
    if not np.any(psi):
        raise InputError("state: zero vector")
    out = {"orbit_dim": qs.orbit_dim(psi), "generic": qs.is_generic(psi)}
    if kind == "a":
        out["gamma"] = _pair(inv.eval_invariants(vec).gamma)
    return out, 0 if out["generic"] else 1


def cmd_optimize(args) -> tuple[dict, int]:
    if args.check_L:
        cert = check_L()
        ok = cert["critical_residual"] <= 1e-8 and cert["negative_semidefinite"]
        return cert, 0 if ok else 1
    try:
        cfg = OptConfig(restarts=args.restarts, max_iters=args.max_iters, tol_grad=args.tol, seed=args.seed)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    res = maximize_abs_gamma(cfg)
    return res.to_dict(), 1 if res.exceeds_conjecture else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qinv", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def state_flags(p):
        p.add_argument("--a", help="A-coordinates as JSON [[re,im] x 4]")
        p.add_argument("--state-file", help="state JSON file ('-' for stdin)")

    p = sub.add_parser("eval", help="evaluate invariants of a state")
    state_flags(p)
    p.add_argument("--dump-poly", help="print an exact polynomial (e.g. gamma, F6) instead")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("group", help="enumerate W, W+nu or Wtilde")
    p.add_argument("--which", default="Wtilde", choices=["W", "W+nu", "Wtilde"])
    p.add_argument("--dump-elements", help="write all elements as exact rationals to this file")
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite_pos", nargs="?", metavar="SUITE")
    p.add_argument("--suite", help="symbolic, group, numeric or all")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("certify", help="genericity certificate of a 4-qubit state")
    state_flags(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("optimize", help="maximise |gamma| over the unit sphere of A")
    p.add_argument("--restarts", type=int, default=50)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--max-iters", type=int, default=500)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--check-L", action="store_true", help="only certify the state |L>")
    p.set_defaults(func=cmd_optimize)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out, code = args.func(args)
    except (InputError, ValueError) as exc:
        print(f"qinv {args.command}: {exc}", file=sys.stderr)
        return 2
    print(json.dumps(out, indent=2))
    return code


if __name__ == "__main__":
    sys.exit(main())
