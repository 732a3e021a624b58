"""Executable renditions of the four main inequalities and their equality
cases.

Each verifier checks its hypotheses (recording which were machine-checked
and which are user assertions), computes both sides exactly, and in an
equality case runs the predicted structural conclusion through its
numerical shadow (depth probes, explorer windows, closed-filtration fits).
A VIOLATION verdict is reserved for a falsified conclusion under fully
machine-checked hypotheses: it means the engine itself is wrong and fails
the build.  Reports resting on any user-asserted hypothesis downgrade to
ASSERTION_SUSPECT instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .config import DEFAULT
from .errors import NotContained
from .hilbert import relative_coefficients
from .reduction import (
    explore_asymptotic,
    is_reduction,
    minimal_reduction,
    superficial_sequence,
    vv_depth_probe,
)
from .ring import ideal_power, quotient_length, require_finite
from .rr import rr_closed_check, rr_closure, rr_series

HOLDS = "HOLDS"
EQUALITY_CASE_VERIFIED = "EQUALITY_CASE_VERIFIED"
HYPOTHESIS_NOT_MET = "HYPOTHESIS_NOT_MET"
VIOLATION = "VIOLATION"
ASSERTION_SUSPECT = "ASSERTION_SUSPECT"
NOT_APPLICABLE = "NOT_APPLICABLE"

MACHINE = "machine-checked"
ASSERTED = "user-asserted"
FAILED = "failed"


@dataclass
class Hypothesis:
    name: str
    status: str  # machine-checked | user-asserted | failed
    detail: str = ""


@dataclass
class VerificationReport:
    theorem_id: str
    hypotheses: list
    quantities: dict = field(default_factory=dict)
    verdict: str = ""
    notes: list = field(default_factory=list)

    @property
    def user_asserted(self):
        return any(h.status == ASSERTED for h in self.hypotheses)

    def conclude_failure(self):
        """A falsified conclusion: VIOLATION only under machine-checked
        hypotheses, otherwise the assertion is suspect."""
        self.verdict = ASSERTION_SUSPECT if self.user_asserted else VIOLATION
        return self

    def to_dict(self):
        return {
            "theorem": self.theorem_id,
            "hypotheses": [
                {"name": h.name, "status": h.status, "detail": h.detail}
                for h in self.hypotheses
            ],
            "quantities": self.quantities,
            "verdict": self.verdict,
            "notes": list(self.notes),
        }


def _check_reduction(report, I, J, config):
    try:
        cert = is_reduction(I, J, config=config)
    except NotContained:
        report.hypotheses.append(
            Hypothesis("I is a reduction of J", FAILED, "I is not inside J")
        )
        report.verdict = HYPOTHESIS_NOT_MET
        return None
    if not cert.is_reduction:
        report.hypotheses.append(
            Hypothesis("I is a reduction of J", FAILED, cert.note)
        )
        report.verdict = HYPOTHESIS_NOT_MET
        return None
    report.hypotheses.append(
        Hypothesis(
            "I is a reduction of J", MACHINE,
            f"reduction number {cert.reduction_number}",
        )
    )
    report.quantities["reduction_number"] = cert.reduction_number
    return cert


def _check_gr_cm(report, I, seed, config):
    """Machine hypothesis: the associated graded ring of I is CM."""
    probe = minimal_reduction(I, seed, config)
    q, seq, _ = probe
    result = vv_depth_probe(I, I.ring.dim, seq, config=config)
    if result.verdict == "CERTIFIED_CM":
        report.hypotheses.append(
            Hypothesis("Gr_I is Cohen-Macaulay", MACHINE, "depth probe certified")
        )
        return True
    report.hypotheses.append(
        Hypothesis(
            "Gr_I is Cohen-Macaulay", FAILED,
            f"depth probe failed at n={result.witness}",
        )
    )
    return False


def _relative(report, I, J, config):
    rc = relative_coefficients(I, J, config)
    report.quantities["c"] = list(rc.c)
    report.quantities["r"] = list(rc.r)
    report.quantities["e_inner"] = list(rc.e_inner.e)
    report.quantities["e_outer"] = list(rc.e_outer.e)
    return rc


def verify_northcott(I, J, seed=0, config=DEFAULT):
    """c_1 >= lambda(J/I) when Gr_I is CM; equality forces Gr_J CM."""
    report = VerificationReport("northcott_ext", [])
    if _check_reduction(report, I, J, config) is None:
        return report
    rc = _relative(report, I, J, config)
    lam = quotient_length(I, J, config)
    report.quantities["lambda_J_over_I"] = lam
    c1 = rc.c[0]
    if not _check_gr_cm(report, I, seed, config):
        report.verdict = HYPOTHESIS_NOT_MET
        if c1 == lam:
            report.notes.append(
                "informational: c_1 equals lambda(J/I) even though the CM "
                "hypothesis failed"
            )
        return report
    if c1 < lam:
        return report.conclude_failure()
    if c1 > lam:
        report.verdict = HOLDS
        return report
    probe = vv_depth_probe(
        J, J.ring.dim, minimal_reduction(J, seed, config)[1], config=config
    )
    report.quantities["gr_J_probe"] = probe.verdict
    if probe.verdict == "CERTIFIED_CM":
        report.verdict = EQUALITY_CASE_VERIFIED
        return report
    return report.conclude_failure()


def verify_narita(I, J, seed=0, config=DEFAULT):
    """c_2 >= 0 when Gr_I is CM; vanishing in dimension 2 forces the powers
    of J to have CM associated graded rings eventually."""
    report = VerificationReport("narita_ext", [])
    d = I.ring.dim
    if d < 2:
        report.hypotheses.append(Hypothesis("dim >= 2", FAILED, f"dim={d}"))
        report.verdict = HYPOTHESIS_NOT_MET
        return report
    report.hypotheses.append(Hypothesis("dim >= 2", MACHINE, f"dim={d}"))
    if _check_reduction(report, I, J, config) is None:
        return report
    rc = _relative(report, I, J, config)
    if not _check_gr_cm(report, I, seed, config):
        report.verdict = HYPOTHESIS_NOT_MET
        return report
    c2 = rc.c[1]
    if c2 < 0:
        return report.conclude_failure()
    if d != 2 or c2 > 0:
        report.verdict = HOLDS
        return report
    bundle = rr_series(I, J, config=config)
    report.quantities["r_tilde"] = list(bundle.r_tilde)
    report.quantities["w_tilde_fits"] = bundle.fits
    report.quantities["w_tilde_nonnegative"] = bundle.nonnegative
    explore = explore_asymptotic(J, seed=seed, config=config)
    report.quantities["explorer_first_certified"] = explore.first_certified
    report.quantities["explorer_steps"] = [
        {"n": s.n, "verdict": s.probe.verdict} for s in explore.steps
    ]
    if bundle.fits and bundle.nonnegative and explore.first_certified is not None:
        report.verdict = EQUALITY_CASE_VERIFIED
        report.notes.append(
            "eventual CM accepted as persistence-window evidence over the "
            "explorer range"
        )
        return report
    return report.conclude_failure()


def verify_ic_bound(I, J, seed=0, config=DEFAULT):
    """For integrally closed J in dimension 2 with c_1 = lambda(J/I) + 1:
    the closure of J^2 is pinched between 2*lambda and 2*lambda + 1 over
    I^2, and hitting the top forces eventual CM."""
    report = VerificationReport("ic_bound", [])
    d = I.ring.dim
    if d != 2:
        report.hypotheses.append(Hypothesis("dim = 2", FAILED, f"dim={d}"))
        report.verdict = HYPOTHESIS_NOT_MET
        return report
    report.hypotheses.append(Hypothesis("dim = 2", MACHINE, f"dim={d}"))
    if _check_reduction(report, I, J, config) is None:
        return report
    if not J.flags.integrally_closed:
        report.hypotheses.append(
            Hypothesis("J integrally closed", FAILED, "flag not asserted")
        )
        report.verdict = HYPOTHESIS_NOT_MET
        return report
    rr_closed_check(J, 1, config)  # raises FlagContradiction if falsified
    report.hypotheses.append(
        Hypothesis(
            "J integrally closed", ASSERTED,
            "flag; Ratliff-Rush closedness of J verified as necessary condition",
        )
    )
    if not _check_gr_cm(report, I, seed, config):
        report.verdict = HYPOTHESIS_NOT_MET
        return report
    rc = _relative(report, I, J, config)
    lam = quotient_length(I, J, config)
    report.quantities["lambda_J_over_I"] = lam
    if rc.c[0] != lam + 1:
        report.verdict = NOT_APPLICABLE
        report.notes.append("trigger c_1 = lambda(J/I) + 1 not met")
        return report
    closure2 = rr_closure(J, 2, config).closure
    gap = require_finite(ideal_power(I, 2), config).length - require_finite(
        closure2, config
    ).length
    report.quantities["lambda_closure_J2_over_I2"] = gap
    if not (2 * lam <= gap <= 2 * lam + 1):
        return report.conclude_failure()
    if gap == 2 * lam:
        report.verdict = HOLDS
        return report
    explore = explore_asymptotic(J, seed=seed, config=config)
    report.quantities["explorer_first_certified"] = explore.first_certified
    if explore.first_certified is not None:
        report.verdict = EQUALITY_CASE_VERIFIED
        return report
    return report.conclude_failure()


def verify_itoh(I, J, seed=0, config=DEFAULT):
    """c_3 >= 0 for asymptotically normal J in dimension >= 3; vanishing in
    dimension 3 forces eventual CM."""
    report = VerificationReport("itoh_ext", [])
    d = I.ring.dim
    if d < 3:
        report.hypotheses.append(Hypothesis("dim >= 3", FAILED, f"dim={d}"))
        report.verdict = HYPOTHESIS_NOT_MET
        return report
    report.hypotheses.append(Hypothesis("dim >= 3", MACHINE, f"dim={d}"))
    if _check_reduction(report, I, J, config) is None:
        return report
    if not _check_gr_cm(report, I, seed, config):
        report.verdict = HYPOTHESIS_NOT_MET
        rc = _relative(report, I, J, config)
        return report
    if not J.flags.asymptotically_normal:
        report.hypotheses.append(
            Hypothesis("J asymptotically normal", FAILED, "flag not asserted")
        )
        report.verdict = HYPOTHESIS_NOT_MET
        return report
    closed = rr_closed_check(J, 2, config)
    report.hypotheses.append(
        Hypothesis(
            "J asymptotically normal", ASSERTED,
            f"flag; Ratliff-Rush closedness over the window: {closed}",
        )
    )
    rc = _relative(report, I, J, config)
    c3 = rc.c[2]
    if c3 < 0:
        return report.conclude_failure()
    if d != 3 or c3 > 0:
        report.verdict = HOLDS
        return report
    explore = explore_asymptotic(J, seed=seed, config=config)
    report.quantities["explorer_first_certified"] = explore.first_certified
    depth2 = []
    for n in range(config.explore_lo, config.explore_hi + 1):
        K = ideal_power(J, n) if n > 1 else J
        try:
            seq = superficial_sequence(K, 2, seed=(seed, "d2", n), config=config)
            probe = vv_depth_probe(K, 2, seq, n_cap=3, config=config)
            depth2.append({"n": n, "verdict": probe.verdict})
        except Exception as exc:  # evidence-only; record the obstruction
            depth2.append({"n": n, "verdict": f"unavailable: {exc}"})
    report.quantities["depth_ge_2_window"] = depth2
    if explore.first_certified is not None:
        report.verdict = EQUALITY_CASE_VERIFIED
        return report
    return report.conclude_failure()


VERIFIERS = {
    "northcott": verify_northcott,
    "narita": verify_narita,
    "ic_bound": verify_ic_bound,
    "itoh": verify_itoh,
}


def verify(theorem, I, J, seed=0, config=DEFAULT):
    try:
        fn = VERIFIERS[theorem]
    except KeyError:
        raise ValueError(
            f"unknown theorem {theorem!r}; choose from {sorted(VERIFIERS)}"
        ) from None
    return fn(I, J, seed=seed, config=config)
