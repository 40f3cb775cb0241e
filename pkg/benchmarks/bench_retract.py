"""Compare the compiled and pure-Python retraction search kernels.

    python benchmarks/bench_retract.py [--repeat N]
"""

import argparse
import itertools
import timeit
from pathlib import Path

from toricgkm import _retract_py
from toricgkm.io import load_pair
from toricgkm.polytope import SimplePolytope
from toricgkm.retraction import _face_masks, admissible_table

try:
    from toricgkm import _retract_core
except ImportError:  # extension not built
    _retract_core = None

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def hypercube(n):
    """Product of n intervals; facet 2i is x_i = 0 and facet 2i+1 is x_i = 1."""
    verts = [[2 * i + b for i, b in enumerate(bits)] for bits in itertools.product((0, 1), repeat=n)]
    return SimplePolytope(n, verts)


def cases():
    cube = load_pair(FIXTURES / "cube.json").polytope
    prism = load_pair(FIXTURES / "prism.json")
    yield "cube, all sequences", (_face_masks(cube), cube.vertex_count, None, 0, 0)
    P4 = hypercube(4)
    yield "4-cube, first 20000 sequences", (_face_masks(P4), P4.vertex_count, None, 20000, 0)
    P5 = hypercube(5)
    yield "5-cube, first 2000 sequences", (_face_masks(P5), P5.vertex_count, None, 2000, 0)
    table = bytes(admissible_table(prism))
    yield "prism, divisive search", (_face_masks(prism.polytope), 6, table, 1, 0)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _retract_core is None:
        print("compiled kernel not available; build with `pip install -e . --no-build-isolation`")
    print(f"{'case':32} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for label, call in cases():
        py = min(timeit.repeat(lambda: _retract_py.search(*call), number=1, repeat=args.repeat))
        if _retract_core is None:
            print(f"{label:32} {py:10.4f} {'-':>10} {'-':>8}")
            continue
        assert _retract_core.search(*call) == _retract_py.search(*call)
        cy = min(timeit.repeat(lambda: _retract_core.search(*call), number=1, repeat=args.repeat))
        print(f"{label:32} {py:10.4f} {cy:10.4f} {py / cy:7.1f}x")


if __name__ == "__main__":
    main()
