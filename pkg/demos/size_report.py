"""Label size study: how the two composite variants scale on dense orders.

Dense partial orders are the worst case for reachability labels; this
report encodes a family of them and prints mean and max label bits next
to the n/4 and n/2 reference lines. The half-table variant trims the
retired side's pair tables to zero bits, which is where its advantage
on the mean comes from.

    python3 demos/size_report.py [--full]

--full adds n=2000 (about ten extra seconds).
"""

import statistics
import sys
import time

from reachlabel.oracle import GenSpec, generate
from reachlabel.scheme import Pipeline, encode

sizes_n = [200, 500, 1000] + ([2000] if "--full" in sys.argv[1:] else [])

print("dense posets, edge density 0.5, relaxed matching profile")
print(f"{'n':>6} {'variant':>8} {'mean':>9} {'max':>6} {'n/4':>6} {'n/2':>6}")
trend = []
for n in sizes_n:
    g = generate(GenSpec("poset", n, 0.5, seed=42))
    pl = Pipeline(g)
    t0 = time.monotonic()
    for scheme in ("third", "average"):
        ls = encode(g, scheme, "force", pipeline=pl)
        bits = [len(b) for b in ls.labels]
        mean = statistics.fmean(bits)
        print(f"{n:6d} {scheme:>8} {mean:9.1f} "
              f"{max(bits):6d} {n // 4:6d} {n // 2:6d}")
        if scheme == "average":
            trend.append((n, mean))
    print(f"       ({time.monotonic() - t0:.1f}s to encode both)")

print()
print("mean bits per node, divided by n, should fall as n grows:")
for n, mean in trend:
    bar = "#" * round(12 * mean / n)
    print(f"  n={n:<5d} mean/n={mean / n:5.2f} {bar}")
