"""Batch runs of the theorem harness: many random hypothesis-valid cases per entry.

Every trial gets its own seed derived from ``(seed, entry index)``, so a run is
reproducible and independent of the number of worker processes.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .calculus import TWO_LOG_INTERPRETATIONS
from .errors import ExhaustedRetries
from .theorems import (
    Overall,
    RandomCaseConfig,
    TheoremId,
    Tolerances,
    check_case,
    descriptor,
    random_case,
)

DEFAULT_SIZES = (2, 3, 5)
DEFAULT_BLOCKS = ((1, 1), (2, 2), (3, 1))
MAX_WITNESS_REPORTS = 3


@dataclass(frozen=True)
class SuiteEntry:
    """Tallies for one catalog entry under one interpretation."""

    id: str
    interpretation: str | None
    trials: int
    counts: dict
    refuted: tuple = field(default_factory=tuple)
    note: str = ""

    @property
    def valid(self) -> int:
        return self.trials - self.counts["exhausted"]

    def passed(self, min_valid: int) -> bool:
        return self.counts[Overall.REFUTED.value] == 0 and self.valid >= min_valid

    def to_dict(self) -> dict:
        out = {
            "id": self.id,
            "trials": self.trials,
            "valid": self.valid,
            "counts": dict(self.counts),
            "refuted": [r for r in self.refuted],
        }
        if self.interpretation is not None:
            out["interpretation"] = self.interpretation
        if self.note:
            out["note"] = self.note
        return out


def _trial_seeds(seed: int, index: int, trials: int) -> list:
    children = np.random.SeedSequence([seed, index]).spawn(trials)
    return [int(ss.generate_state(1, np.uint64)[0]) for ss in children]


def run_entry(
    tid,
    trials: int,
    seed: int,
    index: int,
    interpretation: str = "default",
    tolerances: Tolerances = Tolerances(),
    sizes=DEFAULT_SIZES,
    blocks=DEFAULT_BLOCKS,
) -> SuiteEntry:
    d = descriptor(tid)
    counts = {o.value: 0 for o in Overall}
    counts["exhausted"] = 0
    refuted, note = [], ""
    config = RandomCaseConfig(interpretation=interpretation)
    for k, s in enumerate(_trial_seeds(seed, index, trials)):
        kw = {}
        if d.multiple_outlier:
            n1, n2 = blocks[k % len(blocks)]
            kw = {"n": n1 + n2, "n1": n1, "n2": n2}
        else:
            kw = {"n": sizes[k % len(sizes)]}
        try:
            case = random_case(d.id, seed=s, config=config, **kw)
        except ExhaustedRetries as exc:
            counts["exhausted"] += 1
            note = str(exc)
            continue
        report = check_case(case, tolerances=tolerances, interpretation=interpretation, seed=s)
        counts[report.overall.value] += 1
        if report.overall is Overall.REFUTED and len(refuted) < MAX_WITNESS_REPORTS:
            refuted.append(report.to_dict())
    interp = interpretation if d.interpretation_dependent else None
    return SuiteEntry(d.id.value, interp, trials, counts, tuple(refuted), note)


def _run_job(job):
    return run_entry(*job[0], **job[1])


def suite_jobs(ids, trials: int, seed: int, tolerances: Tolerances, alternatives: bool = True,
               sizes=DEFAULT_SIZES, blocks=DEFAULT_BLOCKS) -> list:
    """One job per (id, interpretation); interpretation-dependent ids also run every alternative."""
    jobs = []
    for tid in ids:
        tid = TheoremId(tid)
        interps = ["default"]
        if alternatives and descriptor(tid).interpretation_dependent:
            interps += [i for i in TWO_LOG_INTERPRETATIONS if i != "default"]
        for interp in interps:
            # the substream depends only on the entry, so subsets reproduce the full run
            index = list(TheoremId).index(tid) * len(TWO_LOG_INTERPRETATIONS) + TWO_LOG_INTERPRETATIONS.index(interp)
            jobs.append(((tid, trials, seed, index, interp, tolerances, tuple(sizes), tuple(blocks)), {}))
    return jobs


def run_suite(
    ids=tuple(TheoremId),
    trials: int = 100,
    seed: int = 0,
    tolerances: Tolerances = Tolerances(),
    jobs: int = 1,
    alternatives: bool = True,
    sizes=DEFAULT_SIZES,
    blocks=DEFAULT_BLOCKS,
) -> list:
    """Run every entry; results come back in catalog order whatever ``jobs`` is."""
    work = suite_jobs(ids, trials, seed, tolerances, alternatives, sizes, blocks)
    if jobs <= 1:
        return [_run_job(j) for j in work]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_job, work))
