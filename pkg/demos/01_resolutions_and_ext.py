"""Projective resolutions and Ext between simple perverse sheaves on P^2.

Run: python3 demos/01_resolutions_and_ext.py
"""
from perv_pn.ext import ext_basis, ext_dims, graded_end_ring_profile, resolution, yoneda_compose
from perv_pn.modules import named
from perv_pn.quiver import build_An

n = 2
A = build_An(n)
print(A, "with basis", [A.basis_name(i) for i in range(A.dim)])

for k in range(n + 1):
    C = resolution(named(A, "IC", k)).complex
    print(f"res IC_{k}:", C)

print("\ndim Ext^r(IC_k, IC_l), r = 0..2n")
for k in range(n + 1):
    print("  ", [ext_dims(named(A, "IC", k), named(A, "IC", l)) for l in range(n + 1)])

# the degree-2 loop at IC_1 can be written through either neighbour
ic = [named(A, "IC", k) for k in range(n + 1)]
for via in (0, 2):
    f = ext_basis(ic[1], ic[via], 1)[0]
    g = ext_basis(ic[via], ic[1], 1)[0]
    print(f"loop 1->{via}->1 nonzero:", not yoneda_compose(g, f).is_zero())

prof = graded_end_ring_profile(ic[2])
print("End*(IC_2) dims", prof.dims, "-> P^%s-like" % prof.p_like)
