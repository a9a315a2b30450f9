"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import os
import time

from ctcong import _accel
from ctcong.ctseq import get_spec
from ctcong.engine import chz_reduce
from ctcong.numeric import padic_table
from ctcong.series import invert_product


def series_case(sid, r, p):
    red = chz_reduce(get_spec(sid), r, p)

    def run(force_python):
        # the backend switch is read on every kernel call
        os.environ["CTCONG_PURE_PYTHON"] = "1" if force_python else "0"
        try:
            return invert_product(red.denominator_factors, p, red.box, red.vars).data
        finally:
            os.environ.pop("CTCONG_PURE_PYTHON", None)

    return f"series_divide {sid} r={r} p={p} box={red.box}", run


def box_case(v, p, k, power=1):
    bounds = [p] * v
    val, unit, inv = padic_table(p, k).tables(sum(bounds))

    def run(force_python):
        return _accel.multinomial_box_sum(bounds, val, unit, inv, p, k, power, force_python=force_python)

    return f"multinomial_box_sum v={v} p={p} k={k}", run


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if not _accel.compiled_available():
        raise SystemExit("compiled extension not built; run pip install -e . --no-build-isolation")
    cases = [
        series_case("binomial_squared", (2, 2), 47),
        series_case("multinomial3", (2, 2, 2), 29),
        series_case("multinomial5", (1, 1, 1, 1, 1), 19),
        box_case(3, 23, 3),
        box_case(4, 13, 2),
        box_case(5, 11, 1),
    ]
    print(f"{'case':66s} {'compiled':>10s} {'python':>10s} {'speedup':>8s}")
    for name, run in cases:
        tc, a = best_of(lambda: run(False), args.repeat)
        tp, b = best_of(lambda: run(True), args.repeat)
        if a != b:
            raise SystemExit(f"backends disagree on {name}")
        print(f"{name:66s} {tc * 1e3:9.2f}ms {tp * 1e3:9.2f}ms {tp / tc:7.1f}x")


if __name__ == "__main__":
    main()
