"""Check one catalog entry on a hand-built case, then on random cases."""

from lscopula import BaselineDistribution, check_case, make_case, run_suite

w = BaselineDistribution("weibull", 0.5)
case = make_case("T6", w, w, [1, 1], [1, 0.5], xi=[2, 0.4], cone="Dplus", sub_case="i")
report = check_case(case)
for name, verdict in report.hypotheses.items():
    print(f"{name:>12}: {verdict.status.value}")
print(f"{'conclusion':>12}: {report.conclusion.status.value} -> {report.overall.value}")

for entry in run_suite(["T5", "T16"], trials=20, seed=0):
    print(entry.id, entry.counts)
