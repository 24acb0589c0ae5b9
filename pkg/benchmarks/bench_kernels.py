"""Benchmark: compiled kernel vs pure-Python fallback on the hot loops.

Run with ``python3 benchmarks/bench_kernels.py`` after building the
extension in place (``python3 setup.py build_ext --inplace``).  The
numbers also show the end-to-end effect on a full reflection +
verification pipeline.
"""

import random
import time
from fractions import Fraction

from wreathq import _kernel_py
from wreathq.cyclotomic import Scalar

try:
    from wreathq import _kernel
except ImportError:
    _kernel = None


def random_matrix(rng, rows, cols, order=1, density=0.8):
    out = []
    phi = len(Scalar.zero(order).coeffs)
    for _ in range(rows * cols):
        if rng.random() > density:
            out.append(Scalar.zero(order))
        else:
            out.append(Scalar([Fraction(rng.randint(-9, 9), rng.randint(1, 9))
                               for _ in range(phi)], order))
    return out


def timeit(fn, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _pairs(entries):
    return ([x.coeffs[0].numerator for x in entries],
            [x.coeffs[0].denominator for x in entries])


def bench_kernels():
    rng = random.Random(0)
    cases = [
        ("mat_mul 30x30 rational", 1, "mul", 30),
        ("mat_mul 20x20 cyclotomic(4)", 4, "mul", 20),
        ("rref 40x40 rational", 1, "rref", 40),
        ("rref 24x24 cyclotomic(4)", 4, "rref", 24),
    ]
    print(f"{'case':36} {'python':>10} {'cython':>10} {'speedup':>9}")
    for label, order, kind, size in cases:
        a = random_matrix(rng, size, size, order)
        b = random_matrix(rng, size, size, order)
        zero, one = Scalar.zero(order), Scalar.one(order)
        if kind == "mul":
            py = timeit(lambda: _kernel_py.mat_mul(a, b, size, size, size, zero))
            if _kernel is None:
                cy = None
            elif order == 1:
                an, ad = _pairs(a)
                bn, bd = _pairs(b)
                cy = timeit(lambda: _kernel.mat_mul_q(an, ad, bn, bd, size, size, size))
            else:
                cy = timeit(lambda: _kernel.mat_mul(a, b, size, size, size, zero))
        else:
            py = timeit(lambda: _kernel_py.rref(a, size, size, zero, one))
            if _kernel is None:
                cy = None
            elif order == 1:
                an, ad = _pairs(a)
                cy = timeit(lambda: _kernel.rref_q(an, ad, size, size))
            else:
                cy = timeit(lambda: _kernel.rref(a, size, size, zero, one))
        if cy is None:
            print(f"{label:36} {py * 1000:9.2f}ms {'n/a':>10} {'n/a':>9}")
        else:
            print(f"{label:36} {py * 1000:9.2f}ms {cy * 1000:9.2f}ms {py / cy:8.2f}x")


PIPELINE_CODE = """
import time
from fractions import Fraction
from wreathq.cyclotomic import Scalar
from wreathq.quiver import Quiver, Weight
from wreathq.modules import Params, build_induced_zero_e, verify_relations
from wreathq.reflection import reflection_functor
from wreathq.symmetric import YoungDiagram

q = Quiver(["0", "1"], [("a", "0", "1"), ("b", "0", "1")])
p = Params(q, 3, Weight({"0": Scalar.rational(1), "1": Scalar.rational(-1)}),
           Scalar.rational(Fraction(1, 2)))
v = build_induced_zero_e(p, [(YoungDiagram([3]), "1")])
t0 = time.perf_counter()
w = reflection_functor(v, "0").module
assert verify_relations(w).passed
print(f"{time.perf_counter() - t0:.3f}s")
"""


def bench_pipeline():
    import os
    import subprocess
    import sys

    for label, env_extra in (("cython", {}), ("python", {"WREATHQ_PURE": "1"})):
        env = dict(os.environ, **env_extra)
        out = subprocess.run([sys.executable, "-c", PIPELINE_CODE],
                             capture_output=True, text=True, env=env)
        result = out.stdout.strip() or out.stderr.strip().splitlines()[-1]
        print(f"reflect+verify pipeline ({label}): {result}")


if __name__ == "__main__":
    bench_kernels()
    print()
    bench_pipeline()
