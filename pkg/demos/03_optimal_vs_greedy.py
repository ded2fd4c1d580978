"""
Optimal and greedy partitions
=============================

Solve the unbounded knapsack for K=7, M=45880 exactly and greedily, and
compare with giving all dimensions to one 7-user group.
"""

# %%
import time

from gia import build_pattern_set, format_decimal, mg_bf, solve_brute, solve_greedy, solve_optimal

ps = build_pattern_set(7, 45880)
bf = mg_bf(7, 3)

# %%
t0 = time.perf_counter()
opt = solve_optimal(ps)
print(f"optimal ({time.perf_counter() - t0:.1f} s): {opt.parts}")
print(f"  total MG {format_decimal(opt.total_mg)}  vs single group {format_decimal(bf)}"
      f"  (+{format_decimal(100 * (opt.total_mg / bf - 1), 3)}%)")

# %%
grd = solve_greedy(ps)
print(f"greedy: {grd.parts}")
print(f"  total MG {format_decimal(grd.total_mg)}, z_g/z_o = {format_decimal(grd.z / opt.z, 4)}")

# %%
# Cross-check against exhaustive search on a small instance
# ---------------------------------------------------------
small = build_pattern_set(5, 300)
assert solve_brute(small).z == solve_optimal(small).z
print("brute force agrees on K=5, M=300:", solve_optimal(small).total_mg)
