"""Compare the compiled rewriting kernel with the pure-Python fallback.

Each workload runs once per backend (best of ``--repeat``) and the traces are checked to agree.

    python3 benchmarks/bench_kernels.py [--repeat N] [--json]
"""

from __future__ import annotations

import argparse
import json
import statistics
import time
from typing import Callable, Dict, List

from brauerfold import _kernels_py, kernels
from brauerfold.phiver import verify_phi_relations
from brauerfold.presentations import derived_sets_for, presentation_for
from brauerfold.prover import SearchBounds, certify_lemma_pipeline, prove_equal

try:
    from brauerfold import _ckernels
except ImportError:  # extension not built
    _ckernels = None


def _d4_search():
    p = presentation_for("D4")
    t = prove_equal("E1 E2 E4 R3 E1 E2 E4", "E1 E2 E4", p)
    return (t.depth, t.total_delta, t.states_visited)


def _d4_frontier():
    p = presentation_for("D4")
    res = prove_equal("E1 E2 E3 E4 R1", "E4 E3", p, bounds=SearchBounds(24, 12, 150_000))
    return (bool(res), res.states_visited)


def _d4_pipeline():
    rep = certify_lemma_pipeline(presentation_for("D4"), [derived_sets_for("D4")])
    return tuple(r.result.depth for r in rep.results)


def _phi_prover():
    rep = verify_phi_relations(("prover",))
    return tuple((s.relation.tag, s.prover["depth"], s.prover["delta"]) for s in rep.relations)


WORKLOADS: Dict[str, Callable[[], object]] = {
    "d4 search (delta^2 image)": _d4_search,
    "d4 bounded failure": _d4_frontier,
    "d4 lemma pipeline": _d4_pipeline,
    "phi relation images": _phi_prover,
}


def _timed(fn: Callable[[], object], repeat: int):
    times: List[float] = []
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t0)
    return min(times), statistics.median(times), result


def run(repeat: int) -> List[dict]:
    backends = {"python": _kernels_py.expand_level}
    if _ckernels is not None:
        backends["compiled"] = _ckernels.expand_level
    original = kernels.expand_level
    rows = []
    try:
        for name, fn in WORKLOADS.items():
            row: dict = {"workload": name}
            results = {}
            for label, impl in backends.items():
                kernels.expand_level = impl
                best, median, results[label] = _timed(fn, repeat)
                row[label] = {"best_s": round(best, 4), "median_s": round(median, 4)}
            row["agree"] = len({repr(r) for r in results.values()}) == 1
            if "compiled" in row:
                row["speedup"] = round(row["python"]["best_s"] / max(row["compiled"]["best_s"], 1e-9), 2)
            rows.append(row)
    finally:
        kernels.expand_level = original
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    rows = run(args.repeat)
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    if _ckernels is None:
        print("compiled kernel not built; timing the Python fallback only")
    print(f"{'workload':<28} {'python s':>10} {'compiled s':>11} {'speedup':>8}  agree")
    for r in rows:
        c = r.get("compiled", {}).get("best_s", float("nan"))
        print(f"{r['workload']:<28} {r['python']['best_s']:>10.4f} {c:>11.4f} {r.get('speedup', float('nan')):>8.2f}  {r['agree']}")


if __name__ == "__main__":
    main()
