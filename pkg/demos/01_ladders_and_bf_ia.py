"""
Feasible dimensions and single-group multiplexing gain
======================================================

Where beamforming-optimized IA is feasible, and what it gains when every
user shares all the dimensions.
"""

# %%
from gia import feasible_dims, format_decimal, mg_bf, mg_bf_from_streams, mg_oia

# %%
# Ladders
# -------
# Alignment for k >= 3 users only closes on specific dimension counts.
for k in (3, 4, 5, 7):
    dims = [e.m for e in feasible_dims(k, 50_000)]
    print(f"L_{k}: {dims[:8]}{' ...' if len(dims) > 8 else ''}")

# %%
# Exact gains
# -----------
# Both the stream-count form and the closed form give the same fraction.
for k, n in [(4, 0), (3, 2), (7, 3)]:
    r = mg_bf(k, n)
    assert r == mg_bf_from_streams(k, n)
    print(f"mg_bf({k}, n*={n}) = {r} ~ {format_decimal(r, 5)}")

# %%
# Small groups win when dimensions are scarce
# -------------------------------------------
# K=3 on the largest fitting K=3 dimension versus K=4 on its ladder.
for e in feasible_dims(4, 1000):
    k3 = mg_bf(3, (e.m - 3) // 2)
    k4 = mg_bf(4, e.n_star)
    winner = "K=4" if k4 > k3 else "K=3"
    print(f"M={e.m:5d}  K=3: {format_decimal(k3, 5)}  K=4: {format_decimal(k4, 5)}  -> {winner}")

# %%
# Original IA for comparison
# --------------------------
for n in (1, 2, 3):
    m, r = mg_oia(3, n)
    print(f"OIA K=3 n={n}: M={m}, r={r} ~ {format_decimal(r, 5)}")
