# # Which half-twists lift to the cover?
#
# A mapping class of the sphere with 2n+2 marked points lifts to the
# balanced superelliptic cover when its permutation of the marked points
# keeps the odd points together and the even points together (possibly
# swapping the two blocks).

from smodpres.perm import closure, generator_image, is_liftable, psi, w_order
from smodpres.presentations import lmod_presentation
from smodpres.words import a, h, r, s, t

n = 2
m = 2 * n + 2

# A plain half-twist swaps an odd and an even point, so it does not lift.
for w in [s(1), h(1), h(2), t(2, 5), a(1), r()]:
    print(f"{str(w):10s} {str(psi(w, m)):16s} {is_liftable(w, n).value}")

# The generators of the liftable group map onto the whole parity subgroup.
gens = {generator_image(g, m) for g in lmod_presentation("closed", n).generators}
group = closure(gens, m)
print("image size", len(group), "expected", w_order(n))
