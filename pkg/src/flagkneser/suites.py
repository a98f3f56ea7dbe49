"""Randomised certificate sweeps over families of Gamma(n, 1, n-3)."""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field

from .setcore import (
    ElementSet,
    GraphSpec,
    is_independent,
    maximal_closure,
    opposition_graph,
    random_independent_family,
)
from .shifting import (
    certify_ab_properties,
    is_left_shifted,
    left_shift_normalize,
    left_shift_pairs,
    shift_family,
    shift_masks,
    shift_potential,
)
from .weights import (
    LemmaViolation,
    certify_full_weight_condition,
    certify_technical_weights,
    certify_weight_A,
    certify_weight_dichotomy,
)


@dataclass
class SuiteReport:
    name: str
    n: int
    samples: int
    checks: Counter = field(default_factory=Counter)
    statuses: Counter = field(default_factory=Counter)
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def fail(self, what: str) -> None:
        self.violations.append(what)

    def summary(self) -> str:
        verdict = "pass" if self.ok else f"FAIL ({len(self.violations)} violations)"
        checks = ", ".join(f"{k}={v}" for k, v in sorted(self.checks.items()))
        return f"{self.name} n={self.n} samples={self.samples}: {verdict} [{checks}]"


def shifting_suite(n: int, samples: int = 500, seed: int = 0) -> SuiteReport:
    """Shift invariants on random independent families of Gamma(n, 1, n-3)."""
    spec = GraphSpec.of(n, 1, n - 3)
    g = opposition_graph(spec)
    rng = random.Random(seed)
    report = SuiteReport("shifting", n, samples)
    pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    left = list(left_shift_pairs(n))
    for s in range(samples):
        fam = random_independent_family(spec, rng)
        for i, j in pairs:
            out = shift_family(fam, (i, j))
            report.checks["shift_family"] += 1
            if len(out) != len(fam):
                report.fail(f"sample {s}: S_{i},{j} changed size")
            if not is_independent(out):
                report.fail(f"sample {s}: S_{i},{j} broke independence")
            # pairwise non-opposition of raw images == independence of the image set
            images = {g.index[shift_masks(f.masks, i, j)] for f in fam.flags}
            report.checks["image_pairs"] += 1
            if not g.is_independent_mask(sum(1 << v for v in images)):
                report.fail(f"sample {s}: S_{i},{j} made two images opposite")
        norm = left_shift_normalize(fam)
        report.checks["normalize"] += 1
        if len(norm) != len(fam) or not is_independent(norm) or not is_left_shifted(norm):
            report.fail(f"sample {s}: normalisation lost size, independence or fixed point")
        if shift_potential(norm) > shift_potential(fam):
            report.fail(f"sample {s}: normalisation raised the potential")
        for i, j in left:
            if shift_family(norm, (i, j)) != norm:
                report.fail(f"sample {s}: left-shifted family moved by S_{i},{j}")
        present = {f.masks for f in norm.flags}
        if any(shift_masks(f.masks, i, j) not in present for f in norm.flags for i, j in left):
            report.fail(f"sample {s}: left-shift image missing from left-shifted family")
        if n >= 7:
            cert = certify_ab_properties(left_shift_normalize(maximal_closure(fam)))
            report.statuses[f"ab_properties:{cert.status}"] += 1
            if not cert.ok:
                report.fail(f"sample {s}: {cert.summary()}")
    return report


def weight_suite(n: int, samples: int = 100, seed: int = 0) -> SuiteReport:
    """Weight certificates on maximal closures of random families of Gamma(n, 1, n-3)."""
    spec = GraphSpec.of(n, 1, n - 3)
    rng = random.Random(seed)
    report = SuiteReport("weights", n, samples)
    b_sets = None
    for s in range(samples):
        fam = maximal_closure(random_independent_family(spec, rng))
        for cert in (certify_weight_dichotomy(fam), certify_technical_weights(fam)):
            report.checks[cert.lemma] += 1
            report.statuses[f"{cert.lemma}:{cert.status}"] += 1
            if not cert.ok:
                report.fail(f"sample {s}: {cert.summary()}")
        for x in range(1, n + 1):
            cert = certify_weight_A(fam, ElementSet.of(n, [x]))
            report.checks[cert.lemma] += 1
            if not cert.ok:
                report.fail(f"sample {s}: {cert.summary()}")
        if b_sets is None:
            b_sets = sorted({f.parts[1] for f in opposition_graph(spec).flags},
                            key=lambda e: e.mask)
        for b_set in b_sets:
            report.checks["full_weight_iff"] += 1
            try:
                certify_full_weight_condition(fam, b_set)
            except LemmaViolation as exc:
                report.fail(f"sample {s}: {exc}")
    return report
