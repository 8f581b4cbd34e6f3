"""The inverse Serre functor of Perv(P^n) agrees with the P-twist at IC_n.

Run: python3 demos/02_serre_and_ptwist.py [n]
"""
import sys

from perv_pn.complexes import complexes_iso
from perv_pn.functors import inverse_serre, p_twist, ptwist_context, serre
from perv_pn.modules import census_tags, named, tag_label
from perv_pn.quiver import build_An

n = int(sys.argv[1]) if len(sys.argv) > 1 else 2
A = build_An(n)
ctx = ptwist_context(A)
print(f"E = res IC_{n}: {ctx.E}")

for tag in census_tags(n):
    X = named(A, tag)
    L, R = p_twist(ctx, X), inverse_serre(X)
    res = complexes_iso(L, R, seed=0)
    print(f"{tag_label(tag):>10}  P-twist {L}  {res.status}")

print("serre(IC_n) =", serre(named(A, "IC", n)), f"(IC_{n} shifted by {2 * n})")
