"""Exact-rational exploration around the inequality and its proof.

Four tools, all exact (no floating point anywhere):

  random_search      evaluates a target polynomial at seeded random rational
                     points and reports the exact minimum plus any strictly
                     negative hits
  greedy_minimize_z  replays the proof's coordinate descent: lower z3, then
                     z2, then z1 to the smallest feasible nonnegative value,
                     landing on a vertex with every z_i in {0, -p_i}
  case_classify      maps a vertex to one of the four canonical cases by
                     index permutation and evaluates its closed form
  sharpness_witness  for any bracket constant C > 1/2 produces an explicit
                     point where the C-version of the inequality fails

Randomness is reproducible by construction: sample ``i`` of a run with seed
``s`` is drawn from its own ``random.Random((s << 64) | i)`` (CPython's
Mersenne Twister, stable across platforms).  Every sampled point is a pure
function of (seed, index), so the index space can be partitioned across
workers with ``search_range`` and folded with ``merge_partials``; the merged
report is bit-identical no matter how the range was split.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterable, Mapping, Sequence

from . import corpus
from .poly import Polynomial, StructuralError, compile_evaluator

TARGET_NAMES = ("d-tilde", "d-k", "weak", "cs")

_ZERO = Fraction(0)
_HALF = Fraction(1, 2)


class PreconditionError(ValueError):
    """Input outside an operation's stated domain (infeasible state, zero p_i,
    constant not above 1/2, non-vertex state)."""


def resolve_target(name: str, c: Fraction | int | None = None) -> Polynomial:
    """Look up a search target by name.

    ``c`` fixes the bracket constant of the k-form (default 1/2) and is only
    meaningful for the "d-k" target.
    """
    if name != "d-k" and c is not None:
        raise StructuralError(f"constant c only applies to target 'd-k', not {name!r}")
    if name == "d-tilde":
        return corpus.build_inequality().d_tilde
    if name == "d-k":
        value = _HALF if c is None else Fraction(c)
        parametric = corpus.build_k_form(parametric=True)
        return parametric.substitute(corpus.constant_substitution(value))
    if name == "weak":
        return corpus.build_weak_difference()
    if name == "cs":
        return corpus.build_lagrange_and_cs().cs_diff
    raise StructuralError(f"unknown target {name!r}; valid: {', '.join(TARGET_NAMES)}")


def _frac(value: Fraction | int | str) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


@dataclass(frozen=True)
class SearchConfig:
    """Parameters of a seeded random search; the seed fully determines the
    sampled points."""

    sample_count: int
    seed: int
    numerator_bound: int = 100
    denominator_bound: int = 100
    zero_probability: Fraction = Fraction(1, 16)

    def __post_init__(self):
        if self.sample_count < 1:
            raise PreconditionError("sample_count must be positive")
        if not 0 <= self.seed < 2**64:
            raise PreconditionError("seed must fit in 64 unsigned bits")
        if self.numerator_bound < 1 or self.denominator_bound < 1:
            raise PreconditionError("numerator and denominator bounds must be >= 1")
        zp = _frac(self.zero_probability)
        object.__setattr__(self, "zero_probability", zp)
        if not 0 <= zp <= 1:
            raise PreconditionError("zero_probability must lie in [0, 1]")

    def to_dict(self) -> dict:
        return {
            "sample_count": self.sample_count,
            "seed": self.seed,
            "numerator_bound": self.numerator_bound,
            "denominator_bound": self.denominator_bound,
            "zero_probability": str(self.zero_probability),
        }


def _draw_rational(rng: random.Random, cfg: SearchConfig) -> Fraction:
    """One coordinate: exactly 0 with probability zero_probability, else a
    reduced +-num/den with num <= numerator_bound, den <= denominator_bound."""
    zp = cfg.zero_probability
    if zp.numerator and rng.randrange(zp.denominator) < zp.numerator:
        return _ZERO
    num = rng.randint(-cfg.numerator_bound, cfg.numerator_bound)
    den = rng.randint(1, cfg.denominator_bound)
    return Fraction(num, den)


def sample_rng(seed: int, index: int) -> random.Random:
    """The dedicated generator for sample ``index`` of a run with ``seed``."""
    return random.Random((seed << 64) | index)


def sample_point(seed: int, index: int, nvars: int, cfg: SearchConfig) -> tuple[Fraction, ...]:
    rng = sample_rng(seed, index)
    return tuple(_draw_rational(rng, cfg) for _ in range(nvars))


@dataclass
class SearchPartial:
    """Fold state for one slice [lo, hi) of the sample index space."""

    lo: int
    hi: int
    min_value: Fraction | None
    argmin_index: int | None
    argmin: tuple[Fraction, ...] | None
    counterexamples: list[tuple[int, tuple[Fraction, ...], Fraction]]


def search_range(poly: Polynomial, cfg: SearchConfig, lo: int, hi: int) -> SearchPartial:
    """Evaluate samples lo..hi-1; safe to run slices concurrently."""
    evaluate = compile_evaluator(poly)
    nvars = len(poly.varset)
    best: Fraction | None = None
    best_index: int | None = None
    best_point: tuple[Fraction, ...] | None = None
    hits: list[tuple[int, tuple[Fraction, ...], Fraction]] = []
    for index in range(lo, hi):
        point = sample_point(cfg.seed, index, nvars, cfg)
        value = evaluate(point)
        if best is None or value < best:
            best, best_index, best_point = value, index, point
        if value < 0:
            hits.append((index, point, value))
    return SearchPartial(lo, hi, best, best_index, best_point, hits)


def merge_partials(partials: Iterable[SearchPartial]) -> SearchPartial:
    """Fold slice results; ties on the minimum go to the smallest index."""
    parts = sorted(partials, key=lambda p: p.lo)
    if not parts:
        raise StructuralError("nothing to merge")
    merged = SearchPartial(parts[0].lo, parts[-1].hi, None, None, None, [])
    for part in parts:
        if part.min_value is not None and (
            merged.min_value is None
            or part.min_value < merged.min_value
            or (part.min_value == merged.min_value and part.argmin_index < merged.argmin_index)
        ):
            merged.min_value = part.min_value
            merged.argmin_index = part.argmin_index
            merged.argmin = part.argmin
        merged.counterexamples.extend(part.counterexamples)
    merged.counterexamples.sort(key=lambda item: item[0])
    return merged


@dataclass
class SearchReport:
    """Exact outcome of a random search.  ``min_value`` is always the value
    of the target at ``argmin``; ``counterexamples`` lists every point
    (probe or sample) with a strictly negative value, in evaluation order."""

    target: str
    variables: tuple[str, ...]
    samples_run: int
    seed: int
    min_value: Fraction
    argmin: tuple[Fraction, ...]
    counterexamples: list[tuple[tuple[Fraction, ...], Fraction]]
    probes: list[tuple[tuple[Fraction, ...], Fraction]]

    def _point_dict(self, point: tuple[Fraction, ...]) -> dict:
        return {name: str(v) for name, v in zip(self.variables, point)}

    def to_dict(self) -> dict:
        return {
            "target": self.target,
            "variables": list(self.variables),
            "samples_run": self.samples_run,
            "seed": self.seed,
            "min_value": str(self.min_value),
            "argmin": self._point_dict(self.argmin),
            "counterexample_count": len(self.counterexamples),
            "counterexamples": [
                {"point": self._point_dict(pt), "value": str(v)}
                for pt, v in self.counterexamples
            ],
            "probes": [
                {"point": self._point_dict(pt), "value": str(v)} for pt, v in self.probes
            ],
        }


def _normalize_probe(
    poly: Polynomial, probe: Mapping[str, Fraction | int] | Sequence[Fraction | int]
) -> tuple[Fraction, ...]:
    if isinstance(probe, Mapping):
        missing = [n for n in poly.varset.names if n not in probe]
        if missing:
            raise StructuralError(f"probe misses variables {missing}")
        return tuple(_frac(probe[n]) for n in poly.varset.names)
    values = tuple(_frac(v) for v in probe)
    if len(values) != len(poly.varset):
        raise StructuralError(
            f"probe has {len(values)} coordinates, expected {len(poly.varset)}"
        )
    return values


def random_search(
    poly: Polynomial,
    cfg: SearchConfig,
    probes: Sequence[Mapping[str, Fraction | int] | Sequence[Fraction | int]] = (),
    label: str = "",
) -> SearchReport:
    """Search ``poly`` at ``cfg.sample_count`` seeded points plus the fixed
    ``probes`` (evaluated first, before sample 0, and counted for the
    minimum and for counterexamples but not in ``samples_run``)."""
    probe_points = [_normalize_probe(poly, p) for p in probes]
    probe_results = [(pt, poly.evaluate(dict(zip(poly.varset.names, pt)))) for pt in probe_points]

    partial = search_range(poly, cfg, 0, cfg.sample_count)

    best_value: Fraction | None = None
    best_point: tuple[Fraction, ...] | None = None
    for pt, value in probe_results:
        if best_value is None or value < best_value:
            best_value, best_point = value, pt
    if partial.min_value is not None and (
        best_value is None or partial.min_value < best_value
    ):
        best_value, best_point = partial.min_value, partial.argmin

    counterexamples = [(pt, v) for pt, v in probe_results if v < 0]
    counterexamples.extend((pt, v) for _, pt, v in partial.counterexamples)

    return SearchReport(
        target=label or str(poly)[:40],
        variables=poly.varset.names,
        samples_run=cfg.sample_count,
        seed=cfg.seed,
        min_value=best_value,
        argmin=best_point,
        counterexamples=counterexamples,
        probes=probe_results,
    )


# -- the proof's minimization over z ------------------------------------------


@dataclass(frozen=True)
class MacroState:
    """A concrete assignment of (p1, p2, p3) and nonnegative (z1, z2, z3),
    with the derived quadratics c available as ``.c``."""

    p: tuple[Fraction, Fraction, Fraction]
    z: tuple[Fraction, Fraction, Fraction]

    def __post_init__(self):
        p = tuple(_frac(v) for v in self.p)
        z = tuple(_frac(v) for v in self.z)
        if len(p) != 3 or len(z) != 3:
            raise PreconditionError("p and z must each have three coordinates")
        if any(v < 0 for v in z):
            raise PreconditionError(f"z must be nonnegative, got {z}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "z", z)

    @property
    def c(self) -> tuple[Fraction, Fraction, Fraction]:
        p1, p2, p3 = self.p
        return (
            p2 * p2 + p2 * p3 + p3 * p3,
            p1 * p1 + p1 * p3 + p3 * p3,
            p2 * p2 + p2 * p1 + p1 * p1,
        )

    def feasibility(self) -> Fraction:
        """(p1+z1)(p2+z2)(p3+z3); feasible means >= 0."""
        p, z = self.p, self.z
        return (p[0] + z[0]) * (p[1] + z[1]) * (p[2] + z[2])

    def is_feasible(self) -> bool:
        return self.feasibility() >= 0

    def d_value(self) -> Fraction:
        p, z, c = self.p, self.z, self.c
        return p[0] * p[1] * p[2] + c[0] * z[0] + c[1] * z[1] + c[2] * z[2]

    def to_dict(self) -> dict:
        return {
            "p": [str(v) for v in self.p],
            "z": [str(v) for v in self.z],
            "c": [str(v) for v in self.c],
            "d": str(self.d_value()),
        }


@dataclass(frozen=True)
class MinimizeStep:
    coordinate: str
    old_value: Fraction
    new_value: Fraction
    d_before: Fraction
    d_after: Fraction

    def to_dict(self) -> dict:
        return {
            "coordinate": self.coordinate,
            "old_value": str(self.old_value),
            "new_value": str(self.new_value),
            "d_before": str(self.d_before),
            "d_after": str(self.d_after),
        }


@dataclass(frozen=True)
class MinimizeTrace:
    initial: MacroState
    steps: tuple[MinimizeStep, ...]
    final: MacroState
    case_label: str

    def to_dict(self) -> dict:
        return {
            "initial": self.initial.to_dict(),
            "steps": [s.to_dict() for s in self.steps],
            "final": self.final.to_dict(),
            "case": self.case_label,
        }


def vertex_label(state: MacroState) -> str:
    """i/ii/iii/iv by how many coordinates sit at -p_i; "mixed" if some z_i
    is neither 0 nor -p_i (never produced by the minimizer)."""
    pinned = 0
    for p_i, z_i in zip(state.p, state.z):
        if z_i == 0:
            continue
        if z_i == -p_i:
            pinned += 1
        else:
            return "mixed"
    return ("iv", "iii", "ii", "i")[pinned]


def greedy_minimize_z(state: MacroState, order: tuple[int, int, int] = (3, 2, 1)) -> MinimizeTrace:
    """Lower each z coordinate in turn to its smallest feasible value.

    With the other two factors fixed at their current values, the feasible
    set for z_i is a sign condition on the linear factor (p_i + z_i): when
    the product of the other factors is strictly positive the factor must
    stay nonnegative and z_i bottoms out at max(0, -p_i); when it is zero or
    negative the constraint is slack (or one-sided the other way) and z_i
    drops to 0.  The continuous lowering of the original argument stops at
    exactly these points, so the jump is taken directly.

    Coordinates are processed in ``order`` (default 3, 2, 1); a step is
    recorded only when the value actually changes.  Requires nonzero p_i and
    a feasible starting state.
    """
    if sorted(order) != [1, 2, 3]:
        raise PreconditionError(f"order must be a permutation of (1, 2, 3), got {order!r}")
    if any(v == 0 for v in state.p):
        raise PreconditionError("greedy minimization requires nonzero p coordinates")
    if not state.is_feasible():
        raise PreconditionError(
            f"infeasible start: constraint value {state.feasibility()} < 0"
        )
    p = state.p
    z = list(state.z)
    steps: list[MinimizeStep] = []
    for coord in order:
        i = coord - 1
        others = Fraction(1)
        for j in range(3):
            if j != i:
                others *= p[j] + z[j]
        new_value = max(_ZERO, -p[i]) if others > 0 else _ZERO
        if new_value != z[i]:
            before = MacroState(p, tuple(z)).d_value()
            old_value = z[i]
            z[i] = new_value
            after = MacroState(p, tuple(z)).d_value()
            steps.append(MinimizeStep(f"z{coord}", old_value, new_value, before, after))
    final = MacroState(p, tuple(z))
    return MinimizeTrace(state, tuple(steps), final, vertex_label(final))


@dataclass(frozen=True)
class CaseClassification:
    """Canonical case of a vertex: label, the 1-based index permutation that
    sends the state to the canonical shape (pinned coordinates first), and
    the value of the matching closed-form formula."""

    label: str
    permutation: tuple[int, int, int]
    closed_form_value: Fraction

    def to_dict(self) -> dict:
        return {
            "case": self.label,
            "permutation": list(self.permutation),
            "closed_form_value": str(self.closed_form_value),
        }


def case_classify(state: MacroState) -> CaseClassification:
    """Classify a vertex (every z_i in {0, -p_i}) into one of the four cases.

    The closed forms, after permuting so the pinned indices come first as
    q1..q3:

      i    all pinned          -(q1+q2)(q1+q3)(q2+q3)
      ii   two pinned          -q1*q2*(q1+q2) - q1*q2*q3 - (q1+q2)*q3^2
      iii  one pinned          -q1*(q2^2 + q3^2)
      iv   none pinned         q1*q2*q3   (the value of d at z = 0)
    """
    if any(v == 0 for v in state.p):
        raise PreconditionError("case analysis requires nonzero p coordinates")
    pinned: list[int] = []
    free: list[int] = []
    for i, (p_i, z_i) in enumerate(zip(state.p, state.z)):
        if z_i == 0:
            free.append(i)
        elif z_i == -p_i:
            if -p_i <= 0:
                raise PreconditionError(
                    f"invalid vertex: z{i + 1} = -p{i + 1} requires -p{i + 1} > 0"
                )
            pinned.append(i)
        else:
            raise PreconditionError(
                f"not a vertex: z{i + 1} = {z_i} is neither 0 nor -p{i + 1} = {-p_i}"
            )
    perm = pinned + free
    q1, q2, q3 = (state.p[j] for j in perm)
    label = ("iv", "iii", "ii", "i")[len(pinned)]
    if label == "i":
        value = -(q1 + q2) * (q1 + q3) * (q2 + q3)
    elif label == "ii":
        value = -q1 * q2 * (q1 + q2) - q1 * q2 * q3 + (-q1 - q2) * q3 * q3
    elif label == "iii":
        value = -q1 * (q2 * q2 + q3 * q3)
    else:
        value = q1 * q2 * q3
    return CaseClassification(label, tuple(j + 1 for j in perm), value)


# -- sharpness of the constant -------------------------------------------------


@dataclass(frozen=True)
class SharpnessWitness:
    """A point where the inequality with bracket constant c > 1/2 fails."""

    c: Fraction
    b: tuple[Fraction, Fraction, Fraction]
    k: tuple[Fraction, Fraction, Fraction]
    value: Fraction

    def to_dict(self) -> dict:
        return {
            "c": str(self.c),
            "b": [str(v) for v in self.b],
            "k": [str(v) for v in self.k],
            "value": str(self.value),
        }


def sharpness_witness(c: Fraction | int | str) -> SharpnessWitness:
    """Exhibit a failure of the k-form with bracket constant ``c`` > 1/2.

    At b = (1,1,1) and k = (0, 0, k3) the difference collapses to
    (1-2c)*k3^2 + 8, so the smallest positive integer k3 with
    k3^2 > 8/(2c-1) already drives it negative.  The returned value is the
    actual evaluation of the parametric polynomial at that point.
    """
    c = _frac(c)
    if c <= _HALF:
        raise PreconditionError(
            f"no witness exists for c = {c}: the inequality holds for c <= 1/2"
        )
    threshold = Fraction(8) / (2 * c - 1)
    k3 = isqrt(threshold.numerator // threshold.denominator)
    while Fraction(k3 * k3) <= threshold:
        k3 += 1
    point = {
        "k1": 0,
        "k2": 0,
        "k3": k3,
        "b1": 1,
        "b2": 1,
        "b3": 1,
        "C": c,
    }
    value = corpus.build_k_form(parametric=True).evaluate(point)
    one = Fraction(1)
    return SharpnessWitness(
        c=c, b=(one, one, one), k=(_ZERO, _ZERO, Fraction(k3)), value=value
    )


# -- end-to-end fuzz over the proof's minimization ------------------------------


@dataclass
class FuzzSummary:
    """Pass/fail tally of minimizer runs on random feasible states."""

    samples_run: int
    passed: int
    failed: int
    failures: dict[str, int]
    case_counts: dict[str, int]
    seed: int

    def to_dict(self) -> dict:
        return {
            "samples_run": self.samples_run,
            "passed": self.passed,
            "failed": self.failed,
            "failures": dict(self.failures),
            "case_counts": dict(self.case_counts),
            "seed": self.seed,
        }


def _draw_state(rng: random.Random, cfg: SearchConfig, require_negative_product: bool) -> MacroState:
    """Rejection-sample a feasible MacroState with nonzero p (and, when
    asked, p1*p2*p3 < 0) from one per-sample stream."""
    for _ in range(10000):
        p = []
        for _ in range(3):
            value = _ZERO
            while value == 0:
                value = Fraction(
                    rng.randint(-cfg.numerator_bound, cfg.numerator_bound),
                    rng.randint(1, cfg.denominator_bound),
                )
            p.append(value)
        z = tuple(abs(_draw_rational(rng, cfg)) for _ in range(3))
        state = MacroState(tuple(p), z)
        if not state.is_feasible():
            continue
        if require_negative_product and p[0] * p[1] * p[2] >= 0:
            continue
        return state
    raise RuntimeError("rejection sampling failed to find a feasible state")


def minimize_fuzz(cfg: SearchConfig, require_negative_product: bool = False) -> FuzzSummary:
    """Run the greedy minimizer and classifier on random feasible states and
    count violations of the proof's guarantees.

    Per state: the d column of the trace must be non-increasing, the final
    state must be a sound vertex, the classifier's closed form must equal
    the direct evaluation of d, and whenever p1*p2*p3 < 0 the final d must
    be nonnegative and the final case must not be iv.
    """
    failures = {
        "monotonicity": 0,
        "vertex": 0,
        "negativity": 0,
        "closed_form": 0,
        "case_iv_negative_product": 0,
    }
    case_counts = {"i": 0, "ii": 0, "iii": 0, "iv": 0, "mixed": 0}
    failed_samples = 0
    for index in range(cfg.sample_count):
        state = _draw_state(sample_rng(cfg.seed, index), cfg, require_negative_product)
        trace = greedy_minimize_z(state)
        classification = case_classify(trace.final)
        case_counts[trace.case_label] += 1
        negative_product = state.p[0] * state.p[1] * state.p[2] < 0

        sample_ok = True
        if any(step.d_after > step.d_before for step in trace.steps):
            failures["monotonicity"] += 1
            sample_ok = False
        for p_i, z_i in zip(trace.final.p, trace.final.z):
            if not (z_i == 0 or (z_i == -p_i and -p_i > 0)):
                failures["vertex"] += 1
                sample_ok = False
                break
        if negative_product and trace.final.d_value() < 0:
            failures["negativity"] += 1
            sample_ok = False
        if classification.closed_form_value != trace.final.d_value():
            failures["closed_form"] += 1
            sample_ok = False
        if negative_product and trace.case_label == "iv":
            failures["case_iv_negative_product"] += 1
            sample_ok = False
        if not sample_ok:
            failed_samples += 1
    return FuzzSummary(
        samples_run=cfg.sample_count,
        passed=cfg.sample_count - failed_samples,
        failed=failed_samples,
        failures=failures,
        case_counts=case_counts,
        seed=cfg.seed,
    )
