"""Compare the compiled kernels with the pure-Python fallback.

Usage::

    python benchmarks/bench_kernels.py [--repeat 5] [--samples 2000]

Prints per-kernel timings for ``antisym._kernels`` against ``antisym._pykernels``
and then runs one containment campaign end to end under each backend (the
pure-Python run is a subprocess with ``ANTISYM_PURE_PYTHON=1``).
"""
import argparse
import json
import os
import random
import subprocess
import sys
import timeit
from array import array

from antisym import _pykernels as py

try:
    from antisym import _kernels as ext
except ImportError:
    ext = None

CAMPAIGN = """
import json, time
from fractions import Fraction
from antisym import kernels
from antisym.hamel import y
from antisym.verify import containment_campaign
x = y("", 1) + y("01", Fraction(1, 2)) + y("111", -1)
t = time.perf_counter()
rep = containment_campaign(x, {samples}, seed=1)
print(json.dumps({{"backend": kernels.BACKEND, "seconds": time.perf_counter() - t,
                  "pass": rep.passed}}))
"""


def workloads(rng):
    py.cw_node(1)
    nums, dens = [], []
    for m in range(1, 2 ** 12):
        a, b = py.cw_node(m)
        nums += [a, -a]
        dens += [b, b]
    nums, dens = array("q", [0] + nums), array("q", [1] + dens)
    nodes = [rng.randrange(1, 2 ** 40) for _ in range(200)]
    pairs = [py.cw_node(m) for m in nodes]
    queries = [(rng.randrange(-50, 50), rng.randrange(1, 50)) for _ in range(50)]
    ranks = [(rng.randrange(2 ** 4), rng.randrange(2), rng.randrange(2 ** 4),
              rng.randrange(2 ** 4), 4) for _ in range(500)]
    positions = sorted(rng.sample(range(70000), 40))
    labels = ["", "1", "01", "11"]
    masks = [rng.randrange(2 ** 6) for _ in labels]
    return {
        "cw_node": lambda k: [k.cw_node(m) for m in nodes],
        "cw_heap_index": lambda k: [k.cw_heap_index(a, b) for a, b in pairs],
        "below_mask": lambda k: [k.below_mask(a, b, nums, dens, 2 ** 12) for a, b in queries],
        "entry_rank": lambda k: [k.entry_rank(*r) for r in ranks],
        "ternary_numerator": lambda k: k.ternary_numerator(positions, 70000),
        "prefix_ranks": lambda k: [k.prefix_ranks(labels, masks, 6) for _ in range(100)],
    }


def campaign(samples, pure):
    env = dict(os.environ)
    if pure:
        env["ANTISYM_PURE_PYTHON"] = "1"
    out = subprocess.run([sys.executable, "-c", CAMPAIGN.format(samples=samples)],
                         env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--samples", type=int, default=2000)
    args = ap.parse_args(argv)
    if ext is None:
        sys.exit("antisym._kernels is not built; run `pip install -e . --no-build-isolation`")

    print(f"{'kernel':<20}{'python ms':>12}{'cython ms':>12}{'speedup':>10}")
    for name, fn in workloads(random.Random(0)).items():
        t_py = min(timeit.repeat(lambda: fn(py), number=1, repeat=args.repeat)) * 1e3
        t_ext = min(timeit.repeat(lambda: fn(ext), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:<20}{t_py:>12.3f}{t_ext:>12.3f}{t_py / t_ext:>9.1f}x")

    print(f"\ncontainment campaign, {args.samples} samples")
    for pure in (True, False):
        r = campaign(args.samples, pure)
        print(f"  {r['backend']:<8}{r['seconds']:>8.2f}s  pass={r['pass']}")


if __name__ == "__main__":
    main()
