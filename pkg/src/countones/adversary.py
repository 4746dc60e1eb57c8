"""Adversary inputs, the prefix invariant, flip probes and lower-bound audits.

The machinery that makes the ``min(nu, n - nu)`` inc/dec lower bound
empirically checkable:

* :func:`adversary_input` builds words of the form ``e (01)^m d^(n-2m-1)``
  (MSB first).  On such inputs, *every* program of this machine keeps every
  register in a tight straitjacket:

* the **prefix invariant** (:func:`check_prefix_invariant`): after ``i``
  inc/dec steps, the top ``k_i`` bits of every register are all-zeros,
  all-ones, or the input's own top ``k_i`` bits, where ``k_0 = n`` and
  ``k_i = 2*(m - i) + 1``.  Each inc/dec can chew at most two bits off the
  protected prefix, which is what the shrinking schedule expresses.

* the **MSB flip probe** (:func:`msb_flip_probe`): on inputs with ``e = d``,
  flipping the most significant bit cannot change the branch decisions of
  any program until at least ``min(nu, n - nu)`` inc/dec steps have run, so
  two traced runs must agree on their executed path up to that point.

* the **lower-bound audit** (:func:`lower_bound_audit`): exhaustively checks
  a counting program for correctness and for ``incdec_steps >=
  min(nu, n - nu)`` on every input with ``nu != n/2``.

Audits and fuzzing are embarrassingly parallel across (program, input)
pairs; every execution is independent.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .programs import GeneratedProgram
from .vm import (
    DEFAULT_BUDGET,
    Divergence,
    ExecResult,
    HaltReason,
    Machine,
    Program,
    TraceSnapshot,
    diff_traces,
)
from .words import MAX_WIDTH, Word, popcount_naive

__all__ = [
    "AdversaryParams",
    "adversary_input",
    "KSchedule",
    "Violation",
    "ViolationReport",
    "check_prefix_invariant",
    "MsbFlipProbe",
    "msb_flip_probe",
    "AuditFailure",
    "AuditReport",
    "lower_bound_audit",
]


@dataclass(frozen=True, slots=True)
class AdversaryParams:
    """Parameters (e, m, d, n) of the word ``e (01)^m d^(n-2m-1)``."""

    e: int
    m: int
    d: int
    n: int

    def __post_init__(self) -> None:
        if self.e not in (0, 1) or self.d not in (0, 1):
            raise ValueError("e and d must be single bits")
        if not 1 <= self.n <= MAX_WIDTH:
            raise ValueError(f"n must be 1..{MAX_WIDTH}, got {self.n}")
        if not 0 <= 2 * self.m < self.n:
            raise ValueError(f"m must satisfy 0 <= m < n/2, got m={self.m}, n={self.n}")


def adversary_input(p: AdversaryParams) -> Word:
    """The word ``e (01)^m d^(n-2m-1)``, MSB first."""
    bits = f"{p.e}" + "01" * p.m + str(p.d) * (p.n - 2 * p.m - 1)
    return Word.from_bits(bits)


@dataclass(frozen=True, slots=True)
class KSchedule:
    """Protected-prefix lengths: ``k_0 = n`` and ``k_i = 2*(m - i) + 1``.

    Beyond ``i = m`` the schedule runs out (the would-be length is no longer
    positive) and the invariant is vacuous; ``k_value`` returns ``None``
    there.
    """

    n: int
    m: int

    def k_value(self, i: int) -> int | None:
        if i < 0:
            raise ValueError(f"index must be >= 0, got {i}")
        if i == 0:
            return self.n
        k = 2 * (self.m - i) + 1
        return k if k >= 1 else None


@dataclass(frozen=True, slots=True)
class Violation:
    snapshot_index: int
    incdec_index: int
    register: str
    prefix: str
    allowed: tuple[str, str, str]


@dataclass(frozen=True)
class ViolationReport:
    params: AdversaryParams
    snapshots_checked: int
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def _prefix_bits(value: int, k: int) -> str:
    # A register that escaped its width renders wider than k; that is the
    # point -- such a state is itself a violation worth seeing verbatim.
    return format(value, f"0{k}b")


def check_prefix_invariant(
    trace: list[TraceSnapshot], params: AdversaryParams
) -> ViolationReport:
    """Check every snapshot of a traced run against the prefix invariant.

    ``trace`` must come from an execution on ``adversary_input(params)``.
    At each snapshot with inc/dec index ``i`` for which ``k_i`` is defined,
    every register's top ``k_i`` bits must be one of all-zeros, all-ones, or
    the input's own prefix.  Prefixes are compared as integers
    (``value >> (n - k)``), which additionally flags any register whose
    value escaped the word width.  Snapshots past ``i = m`` are vacuous and
    skipped.
    """
    x = adversary_input(params).value
    n, m = params.n, params.m
    allowed_by_i: list[tuple[int, int, int, int]] = []
    for i in range(m + 1):
        k = n if i == 0 else 2 * (m - i) + 1
        shift = n - k
        allowed_by_i.append((shift, 0, (1 << k) - 1, x >> shift))

    violations: list[Violation] = []
    checked = 0
    for snap_idx, snap in enumerate(trace):
        i = snap.incdec_index
        if i > m:
            break  # inc/dec index only grows; the rest is vacuous
        shift, zeros, ones, xpref = allowed_by_i[i]
        checked += 1
        for name, value in snap.registers.items():
            prefix = value >> shift
            if prefix != zeros and prefix != ones and prefix != xpref:
                k = n - shift
                violations.append(
                    Violation(
                        snap_idx,
                        i,
                        name,
                        _prefix_bits(prefix, k),
                        (
                            _prefix_bits(zeros, k),
                            _prefix_bits(ones, k),
                            _prefix_bits(xpref, k),
                        ),
                    )
                )
    return ViolationReport(params, checked, tuple(violations))


@dataclass(frozen=True)
class MsbFlipProbe:
    """Outcome of running a program on an adversary word and its MSB flip."""

    params: AdversaryParams
    x: Word
    x_flipped: Word
    nu: int
    bound: int
    divergence: Divergence | None
    result_x: ExecResult = field(repr=False)
    result_flipped: ExecResult = field(repr=False)

    @property
    def bound_holds(self) -> bool:
        return self.divergence is None or self.divergence.incdec_index >= self.bound


def msb_flip_probe(
    g: GeneratedProgram | Program,
    params: AdversaryParams,
    budget: int = DEFAULT_BUDGET,
) -> MsbFlipProbe:
    """Trace a program on ``x`` and on ``x`` with its MSB flipped.

    Requires ``e == d`` (the families ``1(01)^m 1^...`` and ``0(01)^m
    0^...``): those are the inputs for which the flip argument is sound, and
    for them ``min(nu, n - nu) = m`` and ``nu != n/2`` automatically.  For
    mixed ``e != d`` words the claimed bound is simply false -- ``1 0^(n-1)``
    flips to the zero word, which any program can tell apart with its first
    branch -- so such parameters are rejected.

    Returns the first control-flow divergence (if any) and whether it
    respects ``incdec_index >= min(nu, n - nu)``.
    """
    if params.e != params.d:
        raise ValueError(
            "msb_flip_probe needs e == d; the flip argument does not hold "
            "for mixed leading/trailing bits"
        )
    x = adversary_input(params)
    nu = popcount_naive(x)
    if 2 * nu == params.n:
        raise ValueError("inputs with nu = n/2 are outside the bound's domain")
    program = g.program if isinstance(g, GeneratedProgram) else g
    flipped = Word(params.n, x.value ^ (1 << (params.n - 1)))
    result_x = Machine().run(program, x, budget=budget, trace=True)
    result_flipped = Machine().run(program, flipped, budget=budget, trace=True)
    return MsbFlipProbe(
        params=params,
        x=x,
        x_flipped=flipped,
        nu=nu,
        bound=min(nu, params.n - nu),
        divergence=diff_traces(result_x, result_flipped),
        result_x=result_x,
        result_flipped=result_flipped,
    )


@dataclass(frozen=True, slots=True)
class AuditFailure:
    input_bits: str
    nu: int
    kind: str  # "output" or "bound"
    detail: str


@dataclass(frozen=True)
class AuditReport:
    program: str
    width: int
    inputs_checked: int
    failures: tuple[AuditFailure, ...]
    min_ratio: float | None  # tightest incdec/bound over inputs with bound >= 1
    max_incdec: int

    @property
    def ok(self) -> bool:
        return not self.failures


def lower_bound_audit(
    g: GeneratedProgram,
    width: int,
    machine: Machine | None = None,
) -> AuditReport:
    """Exhaustively audit a counting program at one width.

    For every input: the output must equal the naive bit count (including at
    density n/2), and for every input with ``nu != n/2`` the measured
    inc/dec steps must reach ``min(nu, n - nu)``.  Reports the tightest
    ratio of measured steps to bound and the worst-case step count.
    """
    if not 2 <= width <= 12:
        raise ValueError(f"audit width must be 2..12, got {width}")
    if g.width != width:
        raise ValueError(f"program was generated for width {g.width}, not {width}")
    machine = machine or Machine()
    program = g.program
    failures: list[AuditFailure] = []
    min_ratio: float | None = None
    max_incdec = 0
    for value in range(1 << width):
        word = Word(width, value)
        nu = popcount_naive(word)
        res = machine.run(program, word)
        incdec = res.counters.incdec_steps
        max_incdec = max(max_incdec, incdec)
        if res.halt_reason is not HaltReason.OUT or res.output.value != nu:
            got = res.output.value if res.output is not None else res.halt_reason.value
            failures.append(
                AuditFailure(word.to_bits(), nu, "output", f"expected {nu}, got {got}")
            )
            continue
        if 2 * nu != width:
            bound = min(nu, width - nu)
            if incdec < bound:
                failures.append(
                    AuditFailure(
                        word.to_bits(), nu, "bound", f"incdec {incdec} < bound {bound}"
                    )
                )
            elif bound > 0:
                ratio = incdec / bound
                if min_ratio is None or ratio < min_ratio:
                    min_ratio = ratio
    return AuditReport(g.name, width, 1 << width, tuple(failures), min_ratio, max_incdec)
