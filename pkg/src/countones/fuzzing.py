"""Random-program fuzzing for the prefix invariant and the flip bound.

The invariant and the divergence bound quantify over *all* programs of the
machine, so beyond the shipped generators we sample the program space:
syntactically valid random programs (up to 8 registers), run on randomly
drawn adversary inputs with full tracing.  Expected violation count is
exactly zero -- any hit means an interpreter bug, which is precisely what
the deliberately broken machines in the test suite demonstrate.

Everything is reproducible from the seed.  Non-terminating programs are cut
by the per-run budget; their snapshots up to the cut are still checked.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .adversary import (
    AdversaryParams,
    MsbFlipProbe,
    Violation,
    adversary_input,
    check_prefix_invariant,
    msb_flip_probe,
)
from .vm import HaltReason, Machine, parse_program

__all__ = [
    "FUZZ_BUDGET",
    "random_program_text",
    "random_adversary_params",
    "InvariantFuzzReport",
    "fuzz_invariant",
    "DivergenceFuzzReport",
    "fuzz_divergence",
]

# Default per-run step budget for fuzzing.  Random programs loop forever all
# the time; a few hundred steps is plenty to exercise the invariant, whose
# non-vacuous window closes after at most n/2 inc/dec events anyway.
FUZZ_BUDGET = 512

_REG_POOL = ("x", "a", "b", "c", "d", "e", "f", "g")

# Weighted opcode deck; duplicates are the weights.
_OP_DECK = (
    ("INC",) * 10
    + ("DEC",) * 10
    + ("MOV",) * 8
    + ("AND",) * 7
    + ("OR",) * 7
    + ("ZERO",) * 4
    + ("BZ",) * 8
    + ("BNZ",) * 8
    + ("BEQ",) * 6
    + ("BLT",) * 6
    + ("JMP",) * 6
    + ("OUT",) * 6
)

_ARITY = {
    "ZERO": (1, False), "MOV": (2, False), "INC": (1, False), "DEC": (1, False),
    "AND": (2, False), "OR": (2, False), "BZ": (1, True), "BNZ": (1, True),
    "BEQ": (2, True), "BLT": (2, True), "JMP": (0, True), "OUT": (1, False),
}


def random_program_text(rng: random.Random, max_len: int = 24) -> str:
    """A syntactically valid random program (labels resolve, grammar holds)."""
    length = rng.randint(2, max_len)
    regs = list(_REG_POOL[: rng.randint(2, len(_REG_POOL))])
    rows: list[tuple[str, list[str], int | None]] = []
    targets: set[int] = set()
    for _ in range(length):
        op = rng.choice(_OP_DECK)
        n_regs, takes_label = _ARITY[op]
        operands = [rng.choice(regs) for _ in range(n_regs)]
        target = rng.randrange(length) if takes_label else None
        if target is not None:
            targets.add(target)
        rows.append((op, operands, target))

    labels = {idx: f"L{idx}" for idx in targets}
    lines = []
    for idx, (op, operands, target) in enumerate(rows):
        parts = [op, *operands]
        if target is not None:
            parts.append(labels[target])
        prefix = f"{labels[idx]}: " if idx in labels else ""
        lines.append(prefix + " ".join(parts))
    return "\n".join(lines)


def random_adversary_params(
    rng: random.Random,
    width_range: tuple[int, int],
    equal_ends: bool = False,
) -> AdversaryParams:
    """Draw adversary parameters; ``equal_ends`` forces ``e == d``."""
    lo, hi = width_range
    n = rng.randint(lo, hi)
    m = rng.randint(0, (n - 1) // 2)
    e = rng.randint(0, 1)
    d = e if equal_ends else rng.randint(0, 1)
    return AdversaryParams(e, m, d, n)


@dataclass(frozen=True)
class InvariantFuzzReport:
    seed: int
    runs: int
    budget_exhausted: int
    violation_count: int
    violating_runs: tuple[tuple[int, AdversaryParams, tuple[Violation, ...]], ...]

    @property
    def ok(self) -> bool:
        return self.violation_count == 0


def fuzz_invariant(
    seed: int,
    program_count: int,
    width_range: tuple[int, int] = (4, 16),
    max_len: int = 24,
    budget: int = FUZZ_BUDGET,
    machine: Machine | None = None,
) -> InvariantFuzzReport:
    """Run ``program_count`` random (program, adversary input) pairs, traced,
    and check the prefix invariant at every snapshot.

    ``machine`` may be a deliberately broken interpreter; with the stock
    machine the expected violation count is zero.
    """
    rng = random.Random(seed)
    machine = machine or Machine()
    exhausted = 0
    violation_count = 0
    violating: list[tuple[int, AdversaryParams, tuple[Violation, ...]]] = []
    for run_idx in range(program_count):
        program = parse_program(random_program_text(rng, max_len))
        params = random_adversary_params(rng, width_range)
        result = machine.run(program, adversary_input(params), budget=budget, trace=True)
        if result.halt_reason is HaltReason.BUDGET_EXHAUSTED:
            exhausted += 1
        report = check_prefix_invariant(result.trace, params)
        if not report.ok:
            violation_count += len(report.violations)
            violating.append((run_idx, params, report.violations))
    return InvariantFuzzReport(
        seed, program_count, exhausted, violation_count, tuple(violating)
    )


@dataclass(frozen=True)
class DivergenceFuzzReport:
    seed: int
    runs: int
    diverged: int
    violation_count: int
    violating_probes: tuple[tuple[int, MsbFlipProbe], ...]

    @property
    def ok(self) -> bool:
        return self.violation_count == 0


def fuzz_divergence(
    seed: int,
    program_count: int,
    width_range: tuple[int, int] = (2, 16),
    max_len: int = 24,
    budget: int = FUZZ_BUDGET,
) -> DivergenceFuzzReport:
    """Probe random programs on adversary pairs (x, msb-flip(x)) with e = d.

    Counts probes whose first control-flow divergence lands below
    ``min(nu, n - nu)`` inc/dec steps; the expected count is zero.
    """
    rng = random.Random(seed)
    diverged = 0
    violation_count = 0
    violating: list[tuple[int, MsbFlipProbe]] = []
    for run_idx in range(program_count):
        program = parse_program(random_program_text(rng, max_len))
        params = random_adversary_params(rng, width_range, equal_ends=True)
        probe = msb_flip_probe(program, params, budget=budget)
        if probe.divergence is not None:
            diverged += 1
        if not probe.bound_holds:
            violation_count += 1
            violating.append((run_idx, probe))
    return DivergenceFuzzReport(
        seed, program_count, diverged, violation_count, tuple(violating)
    )
