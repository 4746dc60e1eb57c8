"""Command-line front end: verify, sweep, fuzz, gen, table.

Exit codes: 0 success, 1 assertion/check failure, 2 usage error.

CSV schemas (stable, part of the public contract):

* ``sweep``:  ``input_bits,nu,output,incdec_steps,total_steps`` -- one row
  per input, inputs rendered MSB-first.
* ``verify --out``: ``check,program,width,status,detail``.
* ``fuzz --out``: ``kind,run,width,e,m,d,detail`` -- one row per violation
  (header only when the campaign is clean).
* ``table --format csv``: ``operation_set,lower_bound,upper_bound,measured``.

All output is deterministic for a given seed: identical invocations emit
byte-identical bytes.
"""

from __future__ import annotations

import argparse
import random
import sys
from typing import Callable, Sequence

from .adversary import lower_bound_audit
from .fuzzing import FUZZ_BUDGET, fuzz_divergence, fuzz_invariant
from .programs import (
    GeneratedProgram,
    combined_program,
    constant_inc_count,
    constant_program,
    dense_program,
    hakmem_popcount,
    broadword_popcount,
    twobit_program,
    wegner_program,
)
from .vm import DEFAULT_BUDGET, HaltReason, Machine, execute, parse_program
from .words import MAX_WIDTH, Word, popcount_naive

__all__ = ["main", "build_parser", "verify_suite", "sweep_rows", "table_rows"]

_ALGOS: dict[str, Callable[[int], GeneratedProgram]] = {
    "wegner": wegner_program,
    "dense": dense_program,
    "combined": combined_program,
    "twobit": lambda width: twobit_program(),
}

SAMPLED_SWEEP_SIZE = 4096  # rows when the width is too wide to enumerate
EXHAUSTIVE_WIDTH_LIMIT = 20


def _emit(lines: list[str], out_path: str | None) -> None:
    data = "\n".join(lines) + "\n"
    if out_path is None:
        sys.stdout.write(data)
    else:
        with open(out_path, "w", newline="") as fh:
            fh.write(data)


# ---------------------------------------------------------------- verify


def _shipped_programs(width: int) -> list[GeneratedProgram]:
    programs = [wegner_program(width), dense_program(width), combined_program(width)]
    if width == 2:
        programs.append(twobit_program())
    return programs


def verify_suite(
    widths: Sequence[int], machine: Machine | None = None
) -> tuple[bool, list[tuple[str, str, int, str, str]]]:
    """Oracle equivalence, exact step laws and lower-bound audits.

    Returns ``(ok, rows)`` with one ``(check, program, width, status,
    detail)`` row per check; failures carry a witness input in the detail.
    Width 1 only admits the single-bit identity check (the input already is
    the count); the audits are defined for widths 2..12.
    """
    machine = machine or Machine()
    rows: list[tuple[str, str, int, str, str]] = []
    ok = True

    def record(check: str, program: str, width: int, failures: list[str], detail: str) -> None:
        nonlocal ok
        if failures:
            ok = False
            rows.append((check, program, width, "FAIL", "; ".join(failures[:3])))
        else:
            rows.append((check, program, width, "PASS", detail))

    for width in widths:
        if width == 1:
            identity = parse_program("OUT x")
            failures = []
            for value in (0, 1):
                res = machine.run(identity, Word(1, value))
                if res.output is None or res.output.value != value:
                    failures.append(f"x={value}")
            record("single-bit-identity", "OUT x", 1, failures, "input is its own count")
            continue

        for gen in _shipped_programs(width):
            oracle_failures: list[str] = []
            law_failures: list[str] = []
            for value in range(1 << width):
                word = Word(width, value)
                nu = popcount_naive(word)
                res = machine.run(gen.program, word)
                if res.halt_reason is not HaltReason.OUT or res.output.value != nu:
                    got = res.output.value if res.output else res.halt_reason.value
                    oracle_failures.append(f"x={word.to_bits()} expected {nu} got {got}")
                    continue
                want = gen.predicted_incdec(width, nu)
                if res.counters.incdec_steps != want:
                    law_failures.append(
                        f"x={word.to_bits()} incdec {res.counters.incdec_steps} != {want}"
                    )
            record("oracle-equivalence", gen.name, width, oracle_failures,
                   f"all {1 << width} inputs match the bit-count oracle")
            record("step-law", gen.name, width, law_failures,
                   "measured inc/dec equals the closed form on every input")

            if width <= 12:
                audit = lower_bound_audit(gen, width, machine=machine)
                audit_failures = [
                    f"x={f.input_bits} {f.kind}: {f.detail}" for f in audit.failures
                ]
                ratio = "n/a" if audit.min_ratio is None else f"{audit.min_ratio:.3f}"
                record("lower-bound-audit", gen.name, width, audit_failures,
                       f"tightest incdec/bound {ratio}, worst incdec {audit.max_incdec}")

        if width == 2:
            twobit = twobit_program()
            failures = []
            for value in (1, 2, 3):
                res = machine.run(twobit.program, Word(2, value))
                if res.counters.incdec_steps != 1:
                    failures.append(f"x={value:02b} incdec {res.counters.incdec_steps} != 1")
            record("twobit-single-step", "twobit", 2, failures,
                   "every non-zero input costs exactly one inc/dec")

    return ok, rows


def cmd_verify(args: argparse.Namespace) -> int:
    widths = [args.width] if args.width is not None else list(range(2, 13))
    for width in widths:
        if not 1 <= width <= 12:
            raise SystemExit(_usage_error("verify supports widths 1..12"))
    ok, rows = verify_suite(widths)
    lines = [f"{status} {check} {program} n={width}: {detail}"
             for check, program, width, status, detail in rows]
    lines.append(f"{'OK' if ok else 'FAILED'}: {sum(r[3] == 'PASS' for r in rows)}"
                 f"/{len(rows)} checks passed")
    print("\n".join(lines))
    if args.out:
        csv_lines = ["check,program,width,status,detail"]
        csv_lines += [f"{c},{p},{w},{s},{d.replace(',', ';')}" for c, p, w, s, d in rows]
        _emit(csv_lines, args.out)
    return 0 if ok else 1


# ---------------------------------------------------------------- sweep


def sweep_rows(
    width: int, algo: str, seed: int = 0, budget: int = DEFAULT_BUDGET
) -> list[tuple[str, int, int, int, int]]:
    """(input_bits, nu, output, incdec_steps, total_steps) per input.

    Exhaustive up to width 20; wider words get ``SAMPLED_SWEEP_SIZE`` seeded
    samples.
    """
    gen = _ALGOS[algo](width)
    if width <= EXHAUSTIVE_WIDTH_LIMIT:
        values = range(1 << width)
    else:
        rng = random.Random(seed)
        values = [rng.randrange(1 << width) for _ in range(SAMPLED_SWEEP_SIZE)]
    rows = []
    for value in values:
        word = Word(width, value)
        res = execute(gen.program, word, budget=budget)
        out = res.output.value if res.output is not None else -1
        rows.append(
            (word.to_bits(), popcount_naive(word), out,
             res.counters.incdec_steps, res.counters.total_steps)
        )
    return rows


def cmd_sweep(args: argparse.Namespace) -> int:
    if args.algo == "twobit" and args.width != 2:
        raise SystemExit(_usage_error("twobit is defined for width 2 only"))
    rows = sweep_rows(args.width, args.algo, seed=args.seed, budget=args.budget)
    header = ("input_bits", "nu", "output", "incdec_steps", "total_steps")
    if args.format == "csv":
        lines = [",".join(header)]
        lines += [",".join(str(c) for c in row) for row in rows]
    else:
        lines = ["| " + " | ".join(header) + " |",
                 "|" + "|".join("---" for _ in header) + "|"]
        lines += ["| " + " | ".join(str(c) for c in row) + " |" for row in rows]
    _emit(lines, args.out)
    return 0


# ---------------------------------------------------------------- fuzz


def cmd_fuzz(args: argparse.Namespace) -> int:
    invariant = fuzz_invariant(
        args.seed,
        args.count,
        width_range=(args.width_min, args.width_max),
        max_len=args.max_len,
        budget=args.budget,
    )
    divergence = fuzz_divergence(
        args.seed,
        max(1, args.count // 10),
        width_range=(max(2, args.width_min), args.width_max),
        max_len=args.max_len,
        budget=args.budget,
    )
    print(
        f"prefix-invariant fuzz: {invariant.runs} runs, "
        f"{invariant.budget_exhausted} budget-exhausted, "
        f"{invariant.violation_count} violations"
    )
    print(
        f"msb-flip divergence fuzz: {divergence.runs} runs, "
        f"{divergence.diverged} diverged, "
        f"{divergence.violation_count} early divergences"
    )
    if args.out:
        lines = ["kind,run,width,e,m,d,detail"]
        for run_idx, params, violations in invariant.violating_runs:
            for v in violations:
                lines.append(
                    f"invariant,{run_idx},{params.n},{params.e},{params.m},{params.d},"
                    f"i={v.incdec_index} reg={v.register} prefix={v.prefix}"
                )
        for run_idx, probe in divergence.violating_probes:
            p = probe.params
            lines.append(
                f"divergence,{run_idx},{p.n},{p.e},{p.m},{p.d},"
                f"incdec={probe.divergence.incdec_index} bound={probe.bound}"
            )
        _emit(lines, args.out)
    return 0 if invariant.ok and divergence.ok else 1


# ---------------------------------------------------------------- gen


def cmd_gen(args: argparse.Namespace) -> int:
    if args.algo == "constant":
        if args.target is None:
            raise SystemExit(_usage_error("--algo constant requires --target"))
        width = args.width if args.width is not None else max(1, args.target.bit_length() + 1)
        gen = constant_program(args.target, width)
    else:
        if args.target is not None:
            raise SystemExit(_usage_error("--target only applies to --algo constant"))
        width = args.width if args.width is not None else (2 if args.algo == "twobit" else 8)
        if args.algo == "twobit" and width != 2:
            raise SystemExit(_usage_error("twobit is defined for width 2 only"))
        gen = _ALGOS[args.algo](width)
    _emit(gen.text.splitlines(), args.out)
    return 0


# ---------------------------------------------------------------- table


# Hand-counted word operations in the reference routines (see programs.py).
_BROADWORD_OPS = 18
_HAKMEM_OPS = 10


def table_rows(widths: tuple[int, ...] = (8, 12)) -> list[tuple[str, str, str, str]]:
    """Bounds-vs-measurement table rows for the operation-set comparison."""
    worst: dict[str, list[str]] = {}
    for algo in ("wegner", "dense", "combined"):
        cells = []
        for width in widths:
            gen = _ALGOS[algo](width)
            measured = max(
                execute(gen.program, Word(width, v)).counters.incdec_steps
                for v in range(1 << width)
            )
            cells.append(f"n={width}: {measured}")
        worst[algo] = cells
    restricted = "; ".join(
        f"{algo} worst inc/dec {', '.join(cells)}" for algo, cells in worst.items()
    )
    return [
        (
            "increment, decrement, AND, OR, constant 0",
            "min(nu, n-nu)",
            "min(nu, n-nu+log n)",
            restricted,
        ),
        ("addition, AND, OR", "log n / log log n", "log^2 n", "-"),
        (
            "addition, shift, AND, OR",
            "log n / log log n",
            "log n",
            f"broadword fold: {_BROADWORD_OPS} word ops at width 64",
        ),
        ("addition, shift, AND, OR, multiplication", "-", "log* n", "-"),
        (
            "addition, shift, AND, OR, division",
            "-",
            "log log n",
            f"octal/mod-63 routine: {_HAKMEM_OPS} word ops at width 32",
        ),
    ]


def cmd_table(args: argparse.Namespace) -> int:
    rows = table_rows()
    header = ("operation_set", "lower_bound", "upper_bound", "measured")
    if args.format == "csv":
        lines = [",".join(header)]
        lines += [",".join(cell.replace(",", ";") for cell in row) for row in rows]
    else:
        lines = ["| " + " | ".join(header) + " |",
                 "|" + "|".join("---" for _ in header) + "|"]
        lines += ["| " + " | ".join(row) + " |" for row in rows]
    _emit(lines, args.out)
    return 0


# ---------------------------------------------------------------- plumbing


def _usage_error(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="countones",
        description="population-count laboratory for a minimal register machine",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="exhaustive correctness, step-law and bound checks")
    p.add_argument("--width", type=int, help="check a single width (default: 2..12)")
    p.add_argument("--out", help="also write a CSV summary to this path")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="per-input measurements for one program")
    p.add_argument("--width", type=int, required=True, choices=range(1, MAX_WIDTH + 1),
                   metavar="N")
    p.add_argument("--algo", required=True, choices=sorted(_ALGOS))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--format", choices=("csv", "markdown"), default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("fuzz", help="random-program invariant and divergence fuzzing")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--count", type=int, default=10_000)
    p.add_argument("--budget", type=int, default=FUZZ_BUDGET)
    p.add_argument("--max-len", type=int, default=24)
    p.add_argument("--width-min", type=int, default=4)
    p.add_argument("--width-max", type=int, default=16)
    p.add_argument("--out", help="CSV of violations (header only when clean)")
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("gen", help="emit a generated program as instruction text")
    p.add_argument("--algo", required=True, choices=sorted(_ALGOS) + ["constant"])
    p.add_argument("--width", type=int, choices=range(1, MAX_WIDTH + 1), metavar="N")
    p.add_argument("--target", type=int, help="constant to build (--algo constant)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("table", help="operation-set bounds table with measurements")
    p.add_argument("--format", choices=("csv", "markdown"), default="markdown")
    p.add_argument("--out")
    p.set_defaults(func=cmd_table)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    for attr in ("count", "budget", "max_len", "seed"):
        value = getattr(args, attr, None)
        if value is not None and attr in ("count", "budget", "max_len") and value < 1:
            return _usage_error(f"--{attr.replace('_', '-')} must be >= 1")
    if getattr(args, "width_min", None) is not None:
        if not 1 <= args.width_min <= args.width_max <= MAX_WIDTH:
            return _usage_error("need 1 <= width-min <= width-max <= 64")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
