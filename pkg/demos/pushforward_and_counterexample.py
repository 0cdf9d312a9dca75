"""Pushforward of fibrations, and where the biased variant breaks down.

First the dependent product of the finite-set map f: 5 -> 3 along 3 -> 1:
its elements are the sections of f, one choice per fiber.  Then a full
scenario over reflexive graphs, and finally the biased counterexample,
in which pulling back vertex 0 along vertex 1 leaves nothing.
"""

from presheaf_workbench import (FibrationWitness, left_fibration_counterexample,
                                preset_terminal, pushforward, to_terminal)
from presheaf_workbench.presheaf import Presheaf, PresheafMap
from presheaf_workbench.scenarios import render_text, run_scenario

base = preset_terminal()


def finite_set(n):
    return Presheaf(base, {"*": n}, {"*<=*": tuple(range(n))})


X, Y = finite_set(5), finite_set(3)
f = PresheafMap(X, Y, {"*": (0, 0, 1, 1, 2)})
pf = pushforward(f, to_terminal(Y))
print("sections of f:", pf.Xp.sizes["*"])
for k in range(pf.Xp.sizes["*"]):
    _, s = pf.section("*", k)
    print("  section", k, "picks", s.components["*"])

doc, code = run_scenario("cor9_reflexive_graphs")
print(render_text(doc))

report, details = left_fibration_counterexample()
print(report.render())
print("the pulled-back map:", details["llp problem"].u)
print("a witness for 0 -> 1 is", FibrationWitness(details["llp problem"].p, name="0 -> 1"))
