#!/usr/bin/env python3
"""Time the hot kernels with numba and with the pure-numpy fallback.

Each mode runs in its own interpreter, since STEERWIT_NO_JIT is read at import.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
import numpy as np
from steerwit import kernels, _accel

repeat = int(sys.argv[1])
rng = np.random.default_rng(0)
H = [(lambda M: M + M.conj().T)(rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))
     for _ in range(repeat)]
cT = [(rng.normal(size=3) * 0.3, rng.normal(size=(3, 3)) * 0.5) for _ in range(repeat)]
starts = rng.normal(size=(70, 3))
pts = rng.normal(size=(10_000, 3))
pts /= np.linalg.norm(pts, axis=1, keepdims=True)

cases = {
    "jacobi_eigh": lambda i: kernels.jacobi_eigh(H[i], 100),
    "lu_det": lambda i: kernels.lu_det(H[i]),
    "secular_max_radius": lambda i: kernels.secular_max_radius(cT[i][0], cT[i][1], 200),
    "alternating_product_min": lambda i: kernels.alternating_product_min(
        cT[i][0], cT[i][0], cT[i][1], starts, 2000, 1e-16),
    "grid_radius_sq": lambda i: kernels.grid_radius_sq(cT[i][0], cT[i][1], pts),
}
out = {"jit": _accel.JIT_ENABLED}
for name, fn in cases.items():
    t0 = time.perf_counter()
    fn(0)
    first = time.perf_counter() - t0
    t0 = time.perf_counter()
    for i in range(repeat):
        fn(i)
    out[name] = {"first_call_s": first, "per_call_us": (time.perf_counter() - t0) / repeat * 1e6}
print(json.dumps(out))
"""


def run(no_jit, repeat):
    env = dict(os.environ)
    env.pop("STEERWIT_NO_JIT", None)
    if no_jit:
        env["STEERWIT_NO_JIT"] = "1"
    res = subprocess.run([sys.executable, "-c", WORKER, str(repeat)], env=env,
                         capture_output=True, text=True, check=True)
    return json.loads(res.stdout)


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=200)
    args = p.parse_args()
    fast, slow = run(False, args.repeat), run(True, args.repeat)
    if not fast["jit"]:
        print("warning: numba unavailable, both columns use the fallback")
    print(f"{'kernel':<26}{'numba us':>12}{'numpy us':>12}{'speedup':>10}{'first call s':>14}")
    for name in fast:
        if name == "jit":
            continue
        a, b = fast[name]["per_call_us"], slow[name]["per_call_us"]
        print(f"{name:<26}{a:>12.2f}{b:>12.2f}{b / a:>9.1f}x{fast[name]['first_call_s']:>14.3f}")


if __name__ == "__main__":
    main()
