"""Search random hypothesis-valid cases for a failing conclusion.

A plain search that finds something has found either a harness bug or a
flaw in the claimed result; the report carries every parameter needed to
replay it.
"""

from lscopula import counterexample_search

result = counterexample_search("T6", 200, seed=0)
print("found:", result.found, "after", result.trials, "trials")
if result.found:
    r = result.report
    print("sub-case", r.sub_case, "| conclusion slack", f"{r.conclusion.slack:.3g}")
    for side in ("x", "y"):
        comps = r.case[side]["components"]
        print(side, [(round(c["location"], 4), round(c["scale"], 4)) for c in comps])

# a hypothesis that is dropped on purpose should quickly expose failures
print("premise dropped:", counterexample_search("T6", 50, seed=0, mutate="premise").found)
