# # Checking relations on the punctured sphere
#
# Every word in the liftable generators acts on the free group
# pi_1 of the (2n+2)-punctured sphere.  A relation holds in the mapping
# class group exactly when the two sides differ by an inner automorphism.

import time

from smodpres.presentations import lemma_suite, lmod_presentation
from smodpres.sphere_rep import equal_in_mod, fformat, relator_holds, rep_of_word
from smodpres.words import h, t

m = 6

# h_1 squared is the twist around points 1..3, up to an inner automorphism.
f = rep_of_word(h(1, 2) * t(1, 3, -1), m)
print("images:", [fformat(w) for w in f.images[:-1]])
print("h1^2 = t13:", equal_in_mod(h(1, 2), t(1, 3), m))

# Whole presentations, three variants, n = 1..3.
for n in (1, 2, 3):
    for variant in ("boundary", "marked", "closed"):
        t0 = time.perf_counter()
        rels = lmod_presentation(variant, n).relators
        ok = all(relator_holds(rel.word, 2 * n + 2, exact=(variant == "boundary")) for rel in rels)
        print(f"n={n} {variant:8s} {len(rels):4d} relators ok={ok} {time.perf_counter() - t0:.2f}s")

# The supporting identities between h's and twists.
suite = lemma_suite(2)
print(len(suite), "identities, all hold:", all(equal_in_mod(l, r, 6) for _, (l, r) in suite))
