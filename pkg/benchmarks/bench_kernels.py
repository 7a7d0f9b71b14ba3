"""Benchmark the compiled kernel against the pure-Python fallback.

Times the per-face arc/Jacobian evaluation on a random corpus, then an
end-to-end prescribed-curvature solve with each backend.

Run:  python benchmarks/bench_kernels.py
"""

import math
import random
import time

from hexcurv._kernels import _core_py


def load_compiled():
    try:
        from hexcurv._kernels import _core_cy
        return _core_cy
    except ImportError:
        return None


def corpus(n=4000, seed=12345):
    rng = random.Random(seed)
    fams = [
        ((0, 0, 0), (0, 0, 0), (2.0, 5.0)),
        ((1, 1, 1), (-1, -1, -1), (1.0, 3.0)),
        ((2, 2, 2), (0, 0, 0), (0.5, 4.0)),
        ((5, 2, 5), (0, 0, 0), (0.5, 4.0)),
        ((3, 0, 3), (1, 0, 0), (0.5, 4.0)),
    ]
    out = []
    while len(out) < n:
        codes, al, er = rng.choice(fams)
        et = tuple(rng.uniform(*er) for _ in range(3))
        if al == (-1, -1, -1):
            f = tuple(rng.uniform(0.05, 1.5) for _ in range(3))
        else:
            f = tuple(rng.uniform(-1.0, 1.0) for _ in range(3))
        if _core_py.face_eval(codes, al, et, f, (1.0, 1.0, 1.0))[0] == 0:
            out.append((codes, al, et, f))
    return out


def time_backend(mod, faces, repeats=5):
    du = (1.0, 1.0, 1.0)
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        for codes, al, et, f in faces:
            mod.face_eval(codes, al, et, f, du)
        best = min(best, time.perf_counter() - t0)
    return len(faces) / best


def time_solve(backend_name):
    import importlib
    import os
    import sys

    os.environ.pop("HEXCURV_PURE_PYTHON", None)
    if backend_name == "python":
        os.environ["HEXCURV_PURE_PYTHON"] = "1"
    for m in [m for m in sys.modules if m.startswith("hexcurv")]:
        del sys.modules[m]
    import hexcurv._kernels as kk
    import hexcurv.curvature as curvature
    import hexcurv.solver as solver
    from hexcurv.conformal import StructureSpec

    sys.path.insert(0, "tests")
    from helpers import make_spec, sphere_triangulation

    rng = random.Random(7)
    tri = sphere_triangulation(40, rng)
    spec = make_spec("A1", tri, rng)
    targets = [{i: rng.uniform(0.8, 4.0) for i in range(tri.n_boundary)}
               for _ in range(10)]
    t0 = time.perf_counter()
    for tgt in targets:
        solver.solve_prescribed_curvature(spec, tri, tgt)
    dt = time.perf_counter() - t0
    return kk.BACKEND, dt / len(targets)


def main():
    faces = corpus()
    py_rate = time_backend(_core_py, faces)
    print(f"pure python : {py_rate:12.0f} face evals/s")
    compiled = load_compiled()
    if compiled is None:
        print("compiled    : not built (pip install -e . builds it)")
    else:
        cy_rate = time_backend(compiled, faces)
        print(f"compiled    : {cy_rate:12.0f} face evals/s   "
              f"(speedup x{cy_rate / py_rate:.1f})")
    for backend in ("python", "compiled") if compiled else ("python",):
        name, per_solve = time_solve(backend)
        print(f"solve (N=40, {name:8s}): {per_solve * 1e3:8.2f} ms / solve")


if __name__ == "__main__":
    main()
