"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage or parameter error.
Artifacts go to ``--out`` when given, otherwise to stdout with the report on
stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path

from . import formats
from .compose import compose_via_pbd
from .design import plane_truncation_pbd, truncated_td_pbd, verify_pbd
from .errors import PermCodeError
from .extend import baer_ipc
from .latin import field_idempotent_mols, field_mols, macneish_mols, mols_to_ipc
from .perm import (
    INFINITE,
    PermutationCode,
    adjoin_identity,
    extract_ripc,
    identity,
    verify_pc,
    verify_ripc,
)
from .sieve import find_admissible_t, sieve_omega, synthesize_with_design

OK, VERIFY_FAILED, USAGE = 0, 1, 2


@dataclass
class CommandOutcome:
    exit_code: int
    report: str
    artifact: str | None = None
    artifact_path: str | None = None
    extra: dict = field(default_factory=dict)


def _emit(outcome: CommandOutcome, out: str | None) -> CommandOutcome:
    if outcome.exit_code == OK and outcome.artifact is not None and out:
        Path(out).write_text(outcome.artifact)
        outcome.artifact_path = out
    return outcome


def _certified_code(code: PermutationCode, r: int, fmt: str, out, threads: int, note=""):
    rep = verify_ripc(code, r, threads)
    if not rep.ok:
        return CommandOutcome(VERIFY_FAILED, f"self-verification failed: {rep.summary()}")
    code = code.with_claims(d=code.n - 1, r=r)
    text = f"{r}-IPC({code.n},{code.n - 1}) with {len(code)} words; {rep.summary()}"
    if note:
        text = f"{note}\n{text}"
    return _emit(CommandOutcome(OK, text, formats.dump_code(code, fmt)), out)


def cmd_construct(kind: str, q=None, n=None, fmt="text", out=None, threads=1) -> CommandOutcome:
    if kind == "mols-ipc":
        if q is None:
            return CommandOutcome(USAGE, "construct mols-ipc needs --q")
        code = mols_to_ipc(field_idempotent_mols(q))
        return _certified_code(code, q - 2, fmt, out, threads)
    if kind == "baer":
        if q is None:
            return CommandOutcome(USAGE, "construct baer needs --q")
        return _certified_code(baer_ipc(q), q - 1, fmt, out, threads)
    if kind == "macneish":
        if n is None:
            return CommandOutcome(USAGE, "construct macneish needs --n")
        mols = macneish_mols(n, idempotent=True)
        return _certified_code(mols_to_ipc(mols), len(mols), fmt, out, threads)
    return CommandOutcome(USAGE, f"unknown construction {kind!r}")


def _load_code(path, ingest):
    text = Path(path).read_text()
    if ingest and ingest != "none" or not text.lstrip().startswith(("#", "{")):
        return formats.ingest_rows(text, ingest or "none")
    return formats.load_code(text)


def cmd_verify(path, expect_r=None, expect_d=None, ingest=None, threads=1) -> CommandOutcome:
    code = _load_code(path, ingest)
    r = expect_r if expect_r is not None else code.claimed_r
    if r is not None:
        rep = verify_ripc(code, r, threads)
    else:
        d = expect_d if expect_d is not None else code.claimed_d
        rep = verify_pc(code, code.n - 1 if d is None else d, threads)
    lines = [rep.summary()]
    if rep.witness is not None and rep.min_distance != INFINITE:
        i, j = rep.witness
        lines.append(f"closest pair: words {i} and {j} at distance {rep.min_distance}")
    counts = sorted(set(rep.fixed_point_counts.values()))
    lines.append(f"fixed-point counts per symbol: {counts}")
    return CommandOutcome(OK if rep.ok else VERIFY_FAILED, "\n".join(lines))


def cmd_compose(pbd_path, ingredient_paths, r, fmt="text", out=None, threads=1) -> CommandOutcome:
    pbd = formats.read_pbd(pbd_path)
    ingredients = {}
    for p in ingredient_paths:
        code = formats.read_code(p)
        ingredients[code.n] = code
    code = compose_via_pbd(pbd, ingredients, r)
    return _certified_code(code, r, fmt, out, threads)


def cmd_synthesize(n, r, fmt="text", out=None, plan_out=None, threads=1) -> CommandOutcome:
    plan, code, pbd = synthesize_with_design(n, r)
    if not verify_pbd(pbd):
        return CommandOutcome(VERIFY_FAILED, "generated design failed verification")
    note = f"plan {json.dumps(plan.to_json())}; PBD({pbd.n},{sorted(pbd.K)})"
    outcome = _certified_code(code, r, fmt, out, threads, note)
    if outcome.exit_code == OK:
        outcome.report += f"\nM({n},{n - 1}) >= {r * n + 1}"
        if plan_out:
            Path(plan_out).write_text(json.dumps(plan.to_json()) + "\n")
    outcome.extra["plan"] = plan.to_json()
    return outcome


def cmd_bound(n, r, fmt="text", out=None, threads=1) -> CommandOutcome:
    _, code, _ = synthesize_with_design(n, r)
    rep = verify_ripc(code, r, threads)
    if not rep.ok:
        return CommandOutcome(VERIFY_FAILED, f"self-verification failed: {rep.summary()}")
    full = adjoin_identity(code)
    rep2 = verify_pc(full, n - 1, threads)
    if not rep2.ok:
        return CommandOutcome(VERIFY_FAILED, f"code with identity failed: {rep2.summary()}")
    text = f"PC({n},{n - 1}) of size {len(full)}: M({n},{n - 1}) >= {len(full)}"
    return _emit(CommandOutcome(OK, text, formats.dump_code(full, fmt)), out)


def cmd_extract(path, use_identity=False, ingest=None, fmt="text", out=None, threads=1):
    code = _load_code(path, ingest)
    sigma = None
    if use_identity:
        sigma = identity(code.n)
        if sigma not in code.words:
            code = adjoin_identity(code)
    r, sub = extract_ripc(code, sigma)
    if r == 0:
        return _emit(CommandOutcome(OK, "r=0: no regular idempotent subcode", formats.dump_code(sub, fmt)), out)
    return _certified_code(sub, r, fmt, out, threads)


def cmd_pbd(kind, m=None, t=None, u=None, p=None, keep=None, out=None) -> CommandOutcome:
    if kind == "td":
        if None in (m, t, u):
            return CommandOutcome(USAGE, "pbd td needs --m, --t and --u")
        pbd = truncated_td_pbd(m, t, u)
    elif kind == "plane":
        if None in (p, keep):
            return CommandOutcome(USAGE, "pbd plane needs --p and --keep")
        pbd = plane_truncation_pbd(p, keep)
    else:
        return CommandOutcome(USAGE, f"unknown design {kind!r}")
    check = verify_pbd(pbd)
    if not check:
        return CommandOutcome(VERIFY_FAILED, check.describe())
    text = f"PBD({pbd.n},{sorted(pbd.K)}) with {len(pbd.blocks)} blocks; {check.describe()}"
    return _emit(CommandOutcome(OK, text, formats.dump_pbd(pbd)), out)


def cmd_mols(kind, q=None, n=None, out=None) -> CommandOutcome:
    if kind == "field":
        mols = field_mols(q)
    elif kind == "idempotent":
        mols = field_idempotent_mols(q)
    elif kind == "macneish":
        mols = macneish_mols(n, idempotent=True)
    else:
        return CommandOutcome(USAGE, f"unknown family {kind!r}")
    text = f"{len(mols)} MOLS of order {mols.n} (idempotent={mols.idempotent})"
    return _emit(CommandOutcome(OK, text, formats.dump_latin(mols)), out)


def cmd_ingest(path, mode, kind="code", fmt="text", out=None) -> CommandOutcome:
    text = Path(path).read_text()
    if kind == "pbd":
        pbd = formats.ingest_blocks(text, mode)
        return _emit(CommandOutcome(OK, f"{len(pbd.blocks)} blocks on {pbd.n} points", formats.dump_pbd(pbd)), out)
    code = formats.ingest_rows(text, mode)
    return _emit(CommandOutcome(OK, f"{len(code)} words of length {code.n}", formats.dump_code(code, fmt)), out)


def cmd_sieve(n, m) -> CommandOutcome:
    t = find_admissible_t(n, m)
    omega = {p: sorted(v) for p, v in sieve_omega(n, m).items()}
    if t is None:
        return CommandOutcome(USAGE, f"no admissible t for n={n}, m={m}; residues {omega}")
    return CommandOutcome(OK, f"t={t} u={n - m * t}; residues {omega}")


@contextmanager
def forbid_randomness():
    """Make any use of the stdlib or numpy RNGs an error."""
    import numpy as np

    def refuse(*_a, **_k):
        raise RuntimeError("randomness consulted while PERMCODE_SEEDLESS=1")

    names = ["random", "randint", "randrange", "choice", "shuffle", "sample", "seed", "getrandbits"]
    saved = {name: getattr(random, name) for name in names}
    saved_np = (np.random.default_rng, np.random.seed)
    try:
        for name in names:
            setattr(random, name, refuse)
        np.random.default_rng = refuse
        np.random.seed = refuse
        yield
    finally:
        for name, fn in saved.items():
            setattr(random, name, fn)
        np.random.default_rng, np.random.seed = saved_np


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="permcodes", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, artifact=True):
        p.add_argument("--threads", type=int, default=1)
        if artifact:
            p.add_argument("--out")
            p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("construct", help="build a code from MOLS, extension, or MacNeish products")
    p.add_argument("kind", choices=("mols-ipc", "baer", "macneish"))
    p.add_argument("--q", type=int)
    p.add_argument("--n", type=int)
    common(p)

    p = sub.add_parser("verify", help="check distance, idempotency and regularity of a code file")
    p.add_argument("path")
    p.add_argument("--r", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--ingest", choices=formats.INGEST_MODES)
    common(p, artifact=False)

    p = sub.add_parser("compose", help="glue ingredient codes along a PBD")
    p.add_argument("pbd")
    p.add_argument("ingredients", nargs="+")
    p.add_argument("--r", type=int, required=True)
    common(p)

    for name in ("synthesize", "bound"):
        p = sub.add_parser(name, help="run the full n = m*t + u pipeline")
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--r", type=int, required=True)
        if name == "synthesize":
            p.add_argument("--plan-out")
        common(p)

    p = sub.add_parser("extract", help="pull a regular idempotent subcode from a PC(n, n-1)")
    p.add_argument("path")
    p.add_argument("--identity", action="store_true", help="centre the extraction on the identity word")
    p.add_argument("--ingest", choices=formats.INGEST_MODES)
    common(p)

    p = sub.add_parser("pbd", help="generate a pairwise balanced design")
    p.add_argument("kind", choices=("td", "plane"))
    for flag in ("--m", "--t", "--u", "--p", "--keep"):
        p.add_argument(flag, type=int)
    p.add_argument("--out")

    p = sub.add_parser("mols", help="write a MOLS family in latin v1 format")
    p.add_argument("kind", choices=("field", "idempotent", "macneish"))
    p.add_argument("--q", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--out")

    p = sub.add_parser("ingest", help="convert a transcribed array to a v1 file")
    p.add_argument("path")
    p.add_argument("--mode", choices=formats.INGEST_MODES, default="none")
    p.add_argument("--kind", choices=("code", "pbd"), default="code")
    p.add_argument("--out")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("sieve", help="find the cofactor t for n = m*t + u")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    return ap


def dispatch(args) -> CommandOutcome:
    c = args.command
    if c == "construct":
        return cmd_construct(args.kind, args.q, args.n, args.format, args.out, args.threads)
    if c == "verify":
        return cmd_verify(args.path, args.r, args.d, args.ingest, args.threads)
    if c == "compose":
        return cmd_compose(args.pbd, args.ingredients, args.r, args.format, args.out, args.threads)
    if c == "synthesize":
        return cmd_synthesize(args.n, args.r, args.format, args.out, args.plan_out, args.threads)
    if c == "bound":
        return cmd_bound(args.n, args.r, args.format, args.out, args.threads)
    if c == "extract":
        return cmd_extract(args.path, args.identity, args.ingest, args.format, args.out, args.threads)
    if c == "pbd":
        return cmd_pbd(args.kind, args.m, args.t, args.u, args.p, args.keep, args.out)
    if c == "mols":
        return cmd_mols(args.kind, args.q, args.n, args.out)
    if c == "ingest":
        return cmd_ingest(args.path, args.mode, args.kind, args.format, args.out)
    return cmd_sieve(args.n, args.m)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    guard = forbid_randomness() if os.environ.get("PERMCODE_SEEDLESS") == "1" else _null()
    try:
        with guard:
            outcome = dispatch(args)
    except (PermCodeError, OSError, KeyError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return USAGE
    if outcome.artifact is not None and outcome.artifact_path is None and outcome.exit_code == OK:
        sys.stdout.write(outcome.artifact)
        print(outcome.report, file=sys.stderr)
    else:
        print(outcome.report)
    return outcome.exit_code


@contextmanager
def _null():
    yield


if __name__ == "__main__":
    sys.exit(main())
