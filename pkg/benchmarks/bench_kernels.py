"""Compare the compiled and pure-Python kernels.

Run with ``python benchmarks/bench_kernels.py [--repeat N]``. Both backends
are imported directly, so the environment switch is not needed here.
"""

import argparse
import random
import timeit

from delzant import _kernels_py

try:
    from delzant import _kernels as _compiled
except ImportError:
    _compiled = None


def polygon_rows(k, rng):
    # a k x k box plus random extra half-spaces; many turn out redundant
    normals = [(1, 0), (0, 1), (-1, 0), (0, -1)]
    rhs = [0, 0, -k, -k]
    while len(normals) < k:
        u = (rng.randint(-3, 3), rng.randint(-3, 3))
        if u != (0, 0):
            normals.append(u)
            rhs.append(rng.randint(-3 * k, -1))
    return normals, rhs


def cube_rows(n, side):
    normals = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    normals += [tuple(-int(i == j) for j in range(n)) for i in range(n)]
    return normals, [0] * n + [-side] * n


def workloads(rng):
    mats = [[[rng.randint(-50, 50) for _ in range(6)] for _ in range(6)] for _ in range(200)]
    poly2 = polygon_rows(24, rng)
    cube4 = cube_rows(4, 3)
    return {
        "int_det 6x6 x200": lambda m: [m.int_det(M) for M in mats],
        "int_rank 6x6 x200": lambda m: [m.int_rank(M, 6) for M in mats],
        "vertices 2d, 24 facets": lambda m: m.enumerate_vertices(poly2[0], poly2[1], 2),
        "vertices+edges 4-cube": lambda m: m.edge_pairs(
            [t for _, _, t in m.enumerate_vertices(cube4[0], cube4[1], 4)], cube4[0], 4
        ),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = random.Random(0)
    backends = [("python", _kernels_py)]
    if _compiled is not None:
        backends.append(("cython", _compiled))
    else:
        print("compiled extension not available; timing the fallback only")
    print(f"{'workload':28s}" + "".join(f"{name:>12s}" for name, _ in backends) + "   speedup")
    for label, fn in workloads(rng).items():
        results = [fn(mod) for _, mod in backends]
        assert all(r == results[0] for r in results), label
        times = [min(timeit.repeat(lambda: fn(mod), number=1, repeat=args.repeat)) for _, mod in backends]
        row = f"{label:28s}" + "".join(f"{t * 1000:10.2f}ms" for t in times)
        if len(times) == 2:
            row += f"   {times[0] / times[1]:6.2f}x"
        print(row)


if __name__ == "__main__":
    main()
