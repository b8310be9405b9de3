"""Symbolic replay of the proof: every identity is checked by exact expansion.

Each check expands a difference of two polynomial sides in canonical sparse
form and reports ``verified`` exactly when the difference cancels to the
zero polynomial.  There is no numeric tolerance anywhere; a single wrong
coefficient leaves a nonzero term behind and flips the status to
``refuted`` with the surviving difference as witness.

The seven checks:

  lagrange                  classical Lagrange identity in six variables
  key-identity              (b1*b2*b3)^2 * d_tilde  ==  d composed with the
                            macro substitution (the collapse that makes the
                            minimization tractable)
  constraint-factorization  the feasibility product maps to the perfect
                            square (a1*a2*a3*b1*b2*b3)^2
  k-equivalence             d_tilde with a_i -> k_i*b_i equals the k-form
  case-formulas             the four closed forms of the vertex case split,
                            plus the case-(ii) discriminant
  sharpness-reduction       specializing k1 = k2 = 0 in the C-parametric
                            k-form leaves (1-2C)*b1^2*b2^2*b3^2*k3^2 plus a
                            product of three positive factors
  weak-implication          the dropped bracket is exhibited as
                            1/2 * sum b_i^2 * cross_i^2

Note on key-identity: the raw change of variables only makes sense where
all b_i are nonzero, but after clearing y1*y2*y3 = (b1*b2*b3)^2 the claim
becomes a polynomial identity valid everywhere, which is what gets checked.

All checks are pure and deterministic; only ``elapsed_ms`` varies between
runs.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, Iterable

from . import corpus
from .poly import Polynomial, StructuralError, Substitution

STATUS_VERIFIED = "verified"
STATUS_REFUTED = "refuted"
STATUS_ERROR = "error"

CHECK_NAMES = (
    "lagrange",
    "key-identity",
    "constraint-factorization",
    "k-equivalence",
    "case-formulas",
    "sharpness-reduction",
    "weak-implication",
)

# (component name, lhs, rhs): the check asserts lhs == rhs exactly.
Component = tuple[str, Polynomial, Polynomial]


@dataclass
class Report:
    """Outcome of one identity check.

    ``term_count`` is the number of terms surviving in the expanded
    difference (0 exactly when verified); ``witness`` carries the surviving
    difference as text and is present iff the check is refuted.
    """

    check: str
    status: str
    witness: str | None
    term_count: int
    elapsed_ms: int

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "status": self.status,
            "witness": self.witness,
            "term_count": self.term_count,
            "elapsed_ms": self.elapsed_ms,
        }


def check_equal(check: str, components: Iterable[Component]) -> Report:
    """Expand each component difference and fold the outcomes into a Report."""
    start = time.perf_counter()
    witness: str | None = None
    term_count = 0
    status = STATUS_VERIFIED
    try:
        for name, lhs, rhs in components:
            diff = lhs - rhs
            term_count += diff.term_count
            if not diff.is_zero() and status == STATUS_VERIFIED:
                status = STATUS_REFUTED
                witness = f"{name}: {diff}"
    except StructuralError:
        status = STATUS_ERROR
        witness = None
        term_count = 0
    elapsed_ms = int((time.perf_counter() - start) * 1000)
    return Report(check, status, witness, term_count, elapsed_ms)


# -- component builders -------------------------------------------------------


def _zero_sub(zero_names: tuple[str, ...], neg_names: tuple[str, ...]) -> Substitution:
    """MACRO -> MACRO substitution pinning each z_i to 0 or to -p_i."""
    images = {name: Polynomial.variable(corpus.MACRO, name) for name in corpus.MACRO}
    for name in zero_names:
        images[name] = Polynomial.zero(corpus.MACRO)
    for name in neg_names:
        images[name] = -Polynomial.variable(corpus.MACRO, "p" + name[1])
    return Substitution(corpus.MACRO, corpus.MACRO, images)


def _lagrange_components() -> list[Component]:
    parts = corpus.build_lagrange_and_cs()
    return [("lagrange", parts.lagrange_lhs, parts.lagrange_rhs)]


def _key_identity_components() -> list[Component]:
    d_tilde = corpus.build_inequality().d_tilde
    y_product = Polynomial.monomial(corpus.AB, {"b1": 2, "b2": 2, "b3": 2})
    collapsed = corpus.build_d().substitute(corpus.build_macro_substitution())
    return [("key-identity", y_product * d_tilde, collapsed)]


def _constraint_components() -> list[Component]:
    image = corpus.build_constraint().substitute(corpus.build_macro_substitution())
    square = Polynomial.monomial(
        corpus.AB, {"a1": 2, "a2": 2, "a3": 2, "b1": 2, "b2": 2, "b3": 2}
    )
    return [("constraint-factorization", image, square)]


def _ratio_substitution() -> Substitution:
    """AB -> KB with a_i -> k_i*b_i and b_i -> b_i."""
    images = {}
    for i in (1, 2, 3):
        images[f"a{i}"] = Polynomial.monomial(corpus.KB, {f"k{i}": 1, f"b{i}": 1})
        images[f"b{i}"] = Polynomial.variable(corpus.KB, f"b{i}")
    return Substitution(corpus.AB, corpus.KB, images)


def _k_equivalence_components() -> list[Component]:
    d_tilde = corpus.build_inequality().d_tilde
    return [
        ("k-equivalence", d_tilde.substitute(_ratio_substitution()), corpus.build_k_form())
    ]


def _case_formula_components() -> list[Component]:
    d = corpus.build_d()
    p1, p2, p3 = (Polynomial.variable(corpus.MACRO, n) for n in ("p1", "p2", "p3"))

    case_i = d.substitute(_zero_sub((), ("z1", "z2", "z3")))
    case_ii = d.substitute(_zero_sub(("z3",), ("z1", "z2")))
    case_iii = d.substitute(_zero_sub(("z2", "z3"), ("z1",)))
    case_iv = corpus.build_constraint().substitute(_zero_sub(("z1", "z2", "z3"), ()))

    # Case (ii) is a convex quadratic in p3; read its coefficients off the
    # expanded polynomial and form the discriminant from those.
    quad_a = case_ii.coefficient_of("p3", 2)
    quad_b = case_ii.coefficient_of("p3", 1)
    quad_c = case_ii.coefficient_of("p3", 0)
    discriminant = quad_b**2 - 4 * quad_a * quad_c

    return [
        ("case-i", case_i, -(p1 + p2) * (p1 + p3) * (p2 + p3)),
        (
            "case-ii",
            case_ii,
            -p1 * p2 * (p1 + p2) - p1 * p2 * p3 + (-p1 - p2) * p3**2,
        ),
        (
            "case-ii-discriminant",
            discriminant,
            -p1 * p2 * (4 * p1**2 + 7 * p1 * p2 + 4 * p2**2),
        ),
        ("case-iii", case_iii, -p1 * (p2**2 + p3**2)),
        ("case-iv", case_iv, p1 * p2 * p3),
    ]


def _sharpness_components() -> list[Component]:
    parametric = corpus.build_k_form(parametric=True)
    images = {name: Polynomial.variable(corpus.KBC, name) for name in corpus.KBC}
    images["k1"] = Polynomial.zero(corpus.KBC)
    images["k2"] = Polynomial.zero(corpus.KBC)
    specialized = parametric.substitute(Substitution(corpus.KBC, corpus.KBC, images))

    c = Polynomial.variable(corpus.KBC, "C")
    k3 = Polynomial.variable(corpus.KBC, "k3")
    b1, b2, b3 = (Polynomial.variable(corpus.KBC, n) for n in ("b1", "b2", "b3"))
    expected = (1 - 2 * c) * (b1 * b2 * b3) ** 2 * k3**2 + (b1**2 + b2**2) * (
        b1**2 + b3**2
    ) * (b2**2 + b3**2)
    return [("sharpness-reduction", specialized, expected)]


def _weak_implication_components() -> list[Component]:
    dropped = corpus.build_weak_difference() - corpus.build_inequality().d_tilde
    half_square_sum = Polynomial.zero(corpus.AB)
    for b, cross in corpus.cross_products():
        half_square_sum = half_square_sum + corpus.HALF * b**2 * cross**2
    return [("weak-implication", dropped, half_square_sum)]


_COMPONENT_BUILDERS: dict[str, Callable[[], list[Component]]] = {
    "lagrange": _lagrange_components,
    "key-identity": _key_identity_components,
    "constraint-factorization": _constraint_components,
    "k-equivalence": _k_equivalence_components,
    "case-formulas": _case_formula_components,
    "sharpness-reduction": _sharpness_components,
    "weak-implication": _weak_implication_components,
}


def identity_components(check: str) -> list[Component]:
    """The exact (lhs, rhs) pairs whose equality the named check asserts."""
    try:
        builder = _COMPONENT_BUILDERS[check]
    except KeyError:
        raise StructuralError(
            f"unknown check {check!r}; valid names: {', '.join(CHECK_NAMES)}"
        ) from None
    return builder()


def run_check(check: str) -> Report:
    return check_equal(check, identity_components(check))


def run_all() -> list[Report]:
    return [run_check(name) for name in CHECK_NAMES]


def verify_lagrange() -> Report:
    return run_check("lagrange")


def verify_key_identity() -> Report:
    return run_check("key-identity")


def verify_constraint_factorization() -> Report:
    return run_check("constraint-factorization")


def verify_k_equivalence() -> Report:
    return run_check("k-equivalence")


def verify_case_formulas() -> Report:
    return run_check("case-formulas")


def verify_sharpness_reduction() -> Report:
    return run_check("sharpness-reduction")


def verify_weak_implication() -> Report:
    return run_check("weak-implication")
