"""Bundled worked examples with exact expected-value manifests.

Each entry is a directory holding problem.txt (the ring and its ideals)
and expected.json (checks with provenance strings).  All integers in
manifests are decimal strings and all comparisons are bit-exact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources

from .config import DEFAULT
from .errors import ManifestMismatch
from .hilbert import (
    coefficients,
    relative_coefficients,
    series,
    w_series_check,
)
from .problemfile import parse_problem
from .reduction import (
    hm_sums,
    is_reduction,
    link_ideal,
    sequence_from_elements,
    vv_depth_probe,
)
from .ring import (
    ideal_power,
    ideal_sum,
    local_length,
    quotient_length,
    require_finite,
)
from .rr import rr_closed_check, rr_closure
from .verify import VIOLATION, verify


@dataclass
class CheckResult:
    check_id: str
    op: str
    passed: bool
    expected: object
    got: object
    source: str = ""


@dataclass
class EntryReport:
    label: str
    tag: str
    results: list = field(default_factory=list)
    violations: int = 0

    @property
    def passed(self):
        return all(r.passed for r in self.results) and self.violations == 0


@dataclass
class CorpusReport:
    entries: list = field(default_factory=list)

    @property
    def passed(self):
        return all(e.passed for e in self.entries)

    @property
    def violations(self):
        return sum(e.violations for e in self.entries)

    def to_dict(self):
        return {
            "entries": [
                {
                    "label": e.label,
                    "tag": e.tag,
                    "passed": e.passed,
                    "violations": e.violations,
                    "checks": [
                        {
                            "id": r.check_id,
                            "op": r.op,
                            "passed": r.passed,
                            "expected": r.expected,
                            "got": r.got,
                            "source": r.source,
                        }
                        for r in e.results
                    ],
                }
                for e in self.entries
            ],
            "passed": self.passed,
            "violations": self.violations,
        }


def _as_str(value):
    """Serialize computed values the way manifests store them: arbitrary
    precision integers become decimal strings, recursively."""
    if isinstance(value, bool):
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [_as_str(v) for v in value]
    if value is None:
        return None
    return str(value) if not isinstance(value, str) else value


def entry_names():
    root = resources.files("relcoeff") / "corpus_data"
    return sorted(p.name for p in root.iterdir() if p.is_dir())


def load_entry(name):
    root = resources.files("relcoeff") / "corpus_data" / name
    problem = parse_problem((root / "problem.txt").read_text(encoding="utf-8"))
    manifest = json.loads((root / "expected.json").read_text(encoding="utf-8"))
    return problem, manifest


def run_entry(name, config=DEFAULT, problem=None, manifest=None):
    if problem is None or manifest is None:
        problem, manifest = load_entry(name)
    seed = int(manifest.get("seed", config.seed))
    report = EntryReport(manifest.get("label", name), manifest.get("tag", ""))
    for idx, check in enumerate(manifest["checks"]):
        op = check["op"]
        check_id = check.get("id", f"{op}-{idx}")
        got = _dispatch(op, check, problem, seed, config)
        expected = _expected_of(op, check)
        passed = got == expected
        if op == "verify" and got == VIOLATION:
            report.violations += 1
        report.results.append(
            CheckResult(check_id, op, passed, expected, got,
                        check.get("source", ""))
        )
    return report


def _expected_of(op, check):
    for key in ("expected", "verdict"):
        if key in check:
            return check[key]
    raise ManifestMismatch(check.get("id", op), "expected", "<present>", "<missing>")


def _dispatch(op, check, problem, seed, config):
    ideals = problem.ideal_named
    if op == "length":
        return _as_str(require_finite(ideals(check["ideal"]), config).length)
    if op == "series":
        _, hs = series(ideals(check["ideal"]), config)
        return {
            "numerator": _as_str(list(hs.numerator)),
            "dim": _as_str(hs.denominator_exponent),
        }
    if op == "coeffs":
        _, hs = series(ideals(check["ideal"]), config)
        e = coefficients(hs, validate_ring=problem.ring, config=config)
        return _as_str(list(e.e))
    if op == "quotient_length":
        return _as_str(
            quotient_length(ideals(check["sub"]), ideals(check["super"]), config)
        )
    if op == "relcoeffs":
        rc = relative_coefficients(
            ideals(check["inner"]), ideals(check["outer"]), config
        )
        return {"c": _as_str(list(rc.c)), "r": _as_str(list(rc.r))}
    if op == "reduction":
        cert = is_reduction(
            ideals(check["inner"]), ideals(check["outer"]), config=config
        )
        return {
            "is_reduction": cert.is_reduction,
            "r": _as_str(cert.reduction_number),
        }
    if op == "hm":
        sums = hm_sums(ideals(check["ideal"]), ideals(check["q"]), config)
        return {
            "terms_lower": _as_str(list(sums.terms_lower)),
            "s_lower": _as_str(sums.s_lower),
            "e1": _as_str(sums.e1),
            "cm_consistent": "cm_consistent" in sums.verdicts,
        }
    if op == "vv":
        K = ideals(check["ideal"])
        k = int(check["k"])
        if "seq" in check:
            _, seq, _ = sequence_from_elements(K, check["seq"], config)
        else:
            from .reduction import minimal_reduction

            _, seq, _ = minimal_reduction(K, seed, config)
        probe = vv_depth_probe(K, k, seq, config=config)
        return probe.verdict
    if op == "intersection_gap":
        # lambda(K^n / (K^n ∩ L)) = lambda(A/L) - lambda(A/(K^n + L))
        K = ideal_power(ideals(check["ideal"]), int(check["power"]))
        L = ideals(check["with"])
        return _as_str(
            require_finite(L, config).length
            - require_finite(ideal_sum(K, L), config).length
        )
    if op == "rr_gap":
        power = int(check["power"])
        closure = rr_closure(ideals(check["outer"]), power, config).closure
        inner_pow = ideal_power(ideals(check["inner"]), power)
        return _as_str(
            require_finite(inner_pow, config).length
            - require_finite(closure, config).length
        )
    if op == "rr_closed":
        return rr_closed_check(ideals(check["ideal"]), int(check["n_max"]), config)
    if op == "rr_new_gens":
        res = rr_closure(ideals(check["ideal"]), int(check["power"]), config)
        return _as_str(len(res.new_generators))
    if op == "w_table":
        result = w_series_check(
            ideals(check["inner"]), ideals(check["outer"]),
            int(check["n_max"]), config
        )
        return {
            "observed": _as_str(list(result["observed"])),
            "first_mismatch": _as_str(result["first_mismatch"]),
        }
    if op == "link":
        I = link_ideal(ideals(check["q"]), ideals(check["m"]), config)
        return {"holds": True, "generator_count": _as_str(len(I.generators))}
    if op == "verify":
        rep = verify(
            check["theorem"], ideals(check["inner"]), ideals(check["outer"]),
            seed=seed, config=config,
        )
        return rep.verdict
    raise ManifestMismatch("?", "op", "<known op>", op)


def corpus_run(filter_text=None, config=DEFAULT, strict=False):
    """Run every bundled entry (optionally filtered by label/tag substring)
    and diff computed values against the manifests bit-exactly."""
    report = CorpusReport()
    for name in entry_names():
        problem, manifest = load_entry(name)
        label = manifest.get("label", name)
        tag = manifest.get("tag", "")
        if filter_text and filter_text not in label and filter_text != tag:
            continue
        entry = run_entry(name, config, problem, manifest)
        report.entries.append(entry)
        if strict:
            for r in entry.results:
                if not r.passed:
                    raise ManifestMismatch(label, r.check_id, r.expected, r.got)
    return report
