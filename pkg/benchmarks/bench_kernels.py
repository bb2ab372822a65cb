"""Compare the compiled and pure-Python elimination kernels.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Three workloads: random sparse integer rows pushed straight into the
eliminator, once with coefficients in [-3, 3] (entries soon outgrow 64 bits,
so many rows are redone on Python integers) and once with coefficients +-1;
then a full ideal-membership search (elimination plus the word
scan that generates columns) on the antipode law on b for the 2x2
antisymmetric form, which needs words of length 6.
"""
from __future__ import annotations

import argparse
import random
import time
from unittest import mock

from prg import _elim_py


def random_rows(n_rows: int, band: int, density: int, seed: int, coeffs=(-3, -2, -1, 1, 2, 3)) -> list[dict]:
    """Banded random rows: row r touches keys near r/2, which bounds fill-in."""
    rng = random.Random(seed)
    rows = []
    for r in range(n_rows):
        keys = rng.sample(range(r // 2, r // 2 + band), density)
        rows.append({k: rng.choice(coeffs) for k in keys})
    return rows


def kernels() -> dict:
    out = {"python": _elim_py}
    try:
        from prg import _elim
    except ImportError:
        pass
    else:
        out["cython"] = _elim
    return out


def elimination_workload(mod, rows):
    elim = mod.SparseEliminator(track=True)
    for tag, row in enumerate(rows):
        elim.insert(row, tag)
    return elim.rank


def membership_workload(mod):
    from prg.cogroupoid import antipode_targets, build_presentation
    from prg.forms import MLForm
    from prg.ncalg import membership

    e = MLForm.from_matrix([[0, 1], [-1, 0]])
    left, _ = antipode_targets(e, e)
    targets = [t for label, t in left if label.startswith("b")]
    pres = build_presentation(e, e).pres
    with mock.patch.object(membership, "SparseEliminator", mod.SparseEliminator), \
            mock.patch.object(membership.kernel, "scan_word", mod.scan_word):
        res = membership.ideal_membership_batch(targets, pres, 8)
    assert all(r.found for r in res)
    return sum(r.columns for r in res)


def best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--rows", type=int, default=1200)
    args = ap.parse_args()

    backends = kernels()
    if "cython" not in backends:
        print("compiled kernel not built; only the Python kernel is timed")
    wide = random_rows(args.rows, 40, 6, seed=0)
    unit = random_rows(args.rows, 40, 6, seed=0, coeffs=(-1, 1))
    results = {}
    for name, mod in backends.items():
        results[name] = (
            best_of(lambda: elimination_workload(mod, wide), args.repeat),
            best_of(lambda: elimination_workload(mod, unit), args.repeat),
            best_of(lambda: membership_workload(mod), args.repeat),
        )
    for rows in (wide, unit):
        ranks = {name: elimination_workload(mod, rows) for name, mod in backends.items()}
        assert len(set(ranks.values())) == 1, ranks

    heads = ("elim [-3,3] [s]", "elim +-1 [s]", "membership [s]")
    print(f"{'backend':<8}" + "".join(f"{h:>17}" for h in heads))
    for name, times in results.items():
        print(f"{name:<8}" + "".join(f"{t:>17.3f}" for t in times))
    if len(results) == 2:
        py, cy = results["python"], results["cython"]
        print(f"{'speedup':<8}" + "".join(f"{p / c:>16.2f}x" for p, c in zip(py, cy)))


if __name__ == "__main__":
    main()
