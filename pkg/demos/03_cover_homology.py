# # Lifting to the homology of the cover
#
# The k-fold cyclic cover branched over 2n+2 points has genus n(k-1).
# Lifts of liftable mapping classes act on its first homology; the deck
# rotation zeta acts with order exactly k.

import numpy as np

from smodpres.cover import build_cover, deck_matrix, lift_matrix, matrix_power, verify_smod_relator
from smodpres.presentations import smod_presentation
from smodpres.words import r, t

n, k = 1, 3
model = build_cover(n, k, "closed")
print("genus", model.genus, "rank", model.rank, model.euler_check())

Z = deck_matrix(model).matrix
print(model.dump(Z))
print("trace of zeta:", np.trace(Z), "(Lefschetz: 2 - #fixed points =", 2 - model.m, ")")

R = lift_matrix(model, r()).matrix
print("r zeta r^-1 == zeta^-1:", np.array_equal(R.dot(Z).dot(matrix_power(R, -1)), matrix_power(Z, -1)))
print("lift of t_{1,3} is zeta:", np.array_equal(lift_matrix(model, t(1, 3)).matrix, Z))

# A whole presentation, then a deliberately wrong power.
pres = smod_presentation("closed", n, k)
print("all relators hold:", all(verify_smod_relator(model, rel).holds for rel in pres.relators))
print("t13^2:", verify_smod_relator(model, t(1, 3, k - 1)))
