"""Pulling a gtc back along a fibration, and the retract certificate.

We take Z to be a path of two edges, C its two endpoints, and i the map that
climbs the first edge and then stays at 1.  The fibration p projects away
a codiscrete factor.  The pullback of u = c (x)_i delta along p is not
itself a gtc, but it is a retract of one, and the certificate records
every map involved.
"""

import random

from presheaf_workbench import (FibrationWitness, all_lifts, build_gtc, lift_via_retract,
                                solve_lift)
from presheaf_workbench.certificates import emit, parse, retract_certificate_document, reverify
from presheaf_workbench.frobenius import pullback_gtc_retract
from presheaf_workbench.scenarios import Workspace, bundled, sample_problems

ws = Workspace(bundled("prop7_reflexive_graphs"))
c, i, p = ws.map("c"), ws.map("i"), ws.map("p")
gtc = build_gtc(ws.ctx, c, i)
print("D levels:", gtc.D.sizes, " Z x I levels:", gtc.ZxI.sizes)

cert = pullback_gtc_retract(gtc, FibrationWitness(p, name="p"))
cube = cert.cube
print("X levels:", cube.X.sizes)
print("pullback of u has domain levels:", cube.X_D.sizes)
print("the gtc v it is a retract of has domain levels:", cert.v.D.sizes)
print(cert.transcript.render().splitlines()[0])

# serialize, then check it again without the library's constructions
doc = parse(emit(retract_certificate_document(cert)))
print("claims:", len(doc["claims"]), "re-verified:", reverify(doc).ok)

# lifting problems against the pulled-back map, solved through the retract
rng = random.Random(0)
problems = sample_problems(cert.pstar_u, [p], 10, rng)
for prob in problems[:5]:
    L = lift_via_retract(prob, cert.v.u, cert.retract, solve_lift)
    print("lift via retract ok:", prob.is_lift(L), "| lifts by search:", len(all_lifts(prob)))
