"""
GIA versus BF-IA across resource budgets
========================================

Greedy group planning against the single-group scheme at every ladder
point, for one and two antennas per user. Writes CSV files next to this
script.
"""

# %%
from pathlib import Path

from gia import format_decimal
from gia.cli import render_sweep, sweep_points

out_dir = Path(__file__).parent

# %%
for T in (1, 2):
    K = 7 * T
    rows = sweep_points(K, 10**12, "greedy", mode="sparse", timing=False)
    (out_dir / f"sweep_K7_T{T}.csv").write_text(render_sweep(rows, "csv"))
    print(f"K'={K}")
    for r in rows:
        gap = r["mg_gia"] - r["mg_bf"]
        print(f"  M={r['M']:>15d}  BF {format_decimal(r['mg_bf'])}  "
              f"GIA {format_decimal(r['mg_gia'])}  gap {format_decimal(gap, 4)}")
