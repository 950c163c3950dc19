"""Time the compiled distance kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Both backends run the same searches on codes built by the library; the
script checks that they return the same distance before printing timings.
"""
import argparse
import time

import numpy as np

from hyperlrc import kernels
from hyperlrc.automorphisms import catalog_group, group_generate
from hyperlrc.curve import curve_make
from hyperlrc.finite_field import conway_field
from hyperlrc.lrc import build_code_even, build_code_odd, even_plan, odd_plan
from hyperlrc.verify import min_distance


def cases():
    c9 = curve_make(conway_field(3, 2), "x5+x3+2x")
    _, full = catalog_group(c9)
    plan9 = odd_plan(c9, group_generate(c9, [full.generators[0]]))
    c25 = curve_make(conway_field(5, 2), "x5+x")
    s5 = even_plan(c25, "4t+1")
    yield "F9 [16,10] support", plan9.curve.field, build_code_odd(plan9, 4, 4), "support"
    yield "F9 [12,4] exhaustive", plan9.curve.field, build_code_odd(plan9, 3, 2), "exhaustive"
    yield "F25 [20,9] support", c25.field, build_code_even(s5, 4, 2), "support"
    yield "F25 [15,5] exhaustive", c25.field, build_code_even(s5, 3, 1), "exhaustive"


def timed(F, code, strategy, repeat):
    best, d = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        d = min_distance(F, code.G, strategy, code.r, threads=1).d
        best = min(best, time.perf_counter() - t0)
    return best, d


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = kernels.backends()
    if "cython" not in backends:
        print("compiled extension not built; only the fallback is available")
    print(f"{'case':<24}" + "".join(f"{name:>12}" for name in backends) + f"{'speedup':>10}")
    for label, F, code, strategy in cases():
        times = {}
        dists = set()
        for name, mod in backends.items():
            kernels.support_branch, kernels.gray_scan = mod.support_branch, mod.gray_scan
            times[name], d = timed(F, code, strategy, args.repeat)
            dists.add(d)
        assert len(dists) == 1, f"backends disagree on {label}: {dists}"
        speed = times["python"] / times["cython"] if "cython" in times else np.nan
        print(f"{label:<24}" + "".join(f"{t:>11.4f}s" for t in times.values()) + f"{speed:>9.1f}x")


if __name__ == "__main__":
    main()
