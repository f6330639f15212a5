# # First homology of the groups
#
# Abelianizing a presentation is a Smith normal form of its exponent-sum
# matrix.  The table below follows the parity of n (and of k).

from smodpres.abelianize import h1_of, smith_normal_form, as_int_matrix

U, D, V = smith_normal_form(as_int_matrix([[6, 0], [0, 4]]))
print("diag(6,4) ->", [D[0, 0], D[1, 1]])

for n in range(1, 5):
    row = [str(h1_of(f, n)) for f in ("lmod-closed", "lmod-marked", "lmod-boundary")]
    print(f"LMod n={n}:", " | ".join(row))

for n in (1, 2, 3):
    for k in (3, 4):
        row = [str(h1_of(f, n, k)) for f in ("smod-closed", "smod-marked", "smod-boundary")]
        print(f"SMod n={n} k={k}:", " | ".join(row))
