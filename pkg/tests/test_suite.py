from lscopula.suite import run_entry, run_suite, suite_jobs
from lscopula.theorems import Tolerances, descriptor


def test_entry_counts_add_up():
    e = run_entry("T5", 6, seed=0, index=0)
    assert sum(e.counts.values()) == 6
    assert e.valid == 6 - e.counts["exhausted"]
    d = e.to_dict()
    assert d["id"] == "T5" and d["trials"] == 6


def test_vacuous_entry_is_exhausted():
    e = run_entry("T9", 2, seed=0, index=0)
    assert e.counts["exhausted"] == 2 and e.valid == 0
    assert not e.passed(1) and e.note


def test_alternatives_for_interpretation_dependent_entries():
    ids = [d for d in ("T1", "T5", "T13", "T16") if descriptor(d).interpretation_dependent]
    jobs = suite_jobs(["T1", "T5", "T13", "T16"], 1, 0, Tolerances())
    assert len(jobs) == 4 + len(ids)
    assert len(suite_jobs(["T1", "T5", "T13", "T16"], 1, 0, Tolerances(), alternatives=False)) == 4


def test_subset_reproduces_full_run():
    full = run_suite(["T5", "T7"], trials=3, seed=2)
    alone = run_suite(["T7"], trials=3, seed=2)
    assert full[-1].to_dict() == alone[0].to_dict()


def test_parallel_matches_serial():
    a = [e.to_dict() for e in run_suite(["T2", "T16"], trials=4, seed=1, jobs=1)]
    b = [e.to_dict() for e in run_suite(["T2", "T16"], trials=4, seed=1, jobs=2)]
    assert a == b
