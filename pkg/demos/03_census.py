"""Indecomposable perverse sheaves on P^n and their graded endomorphism rings.

Run: python3 demos/03_census.py [n]
"""
import sys

from perv_pn.ext import graded_end_ring_profile
from perv_pn.functors import cy_check, is_zero_spherical
from perv_pn.modules import indecomposables
from perv_pn.quiver import build_An

n = int(sys.argv[1]) if len(sys.argv) > 1 else 3
A = build_An(n)
objs = indecomposables(A)
print(f"{len(objs)} indecomposables (n + (n+1)^2 = {n + (n + 1) ** 2})")
for obj in objs:
    M = obj.module
    prof = graded_end_ring_profile(M)
    if prof.p_like is not None:
        kind = f"P^{prof.p_like}-like"
        if cy_check(M, 2 * prof.p_like).value:
            kind += f", {2 * prof.p_like}-Calabi-Yau"
    elif is_zero_spherical(M):
        kind = "0-spherical"
    else:
        kind = "?"
    print(f"{obj.label:>10}  dims {M.dims}  End* {prof.dims}  {kind}")
