"""Benchmark the compiled application kernels against the pure-Python path.

Both backends implement the same contract (apply the assembled operator of
an instance to a state vector), so the comparison is a single matvec loop
per backend on identical inputs.  Typical output on one CPU core::

    qubits  terms  k  backend      best matvec    speedup
        10     20  3  pure-python    1.52 ms          1.0x
        10     20  3  compiled       0.11 ms         13.8x
        ...

Run as ``python benchmarks/bench_kernels.py`` from the repository root.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

import qsatkit as qk


def build_case(num_qubits: int, num_terms: int, k: int, seed: int):
    rng = np.random.Generator(np.random.Philox(key=seed))
    terms = [
        qk.haar_random_term(
            tuple(int(q) for q in rng.choice(num_qubits, size=k, replace=False)),
            rng,
        )
        for _ in range(num_terms)
    ]
    instance = qk.QsatInstance(num_qubits, terms)
    state = rng.standard_normal(1 << num_qubits) + 1j * rng.standard_normal(
        1 << num_qubits
    )
    return instance, state / np.linalg.norm(state)


def best_time(applier, state, repeats: int) -> float:
    out = np.empty_like(state)
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        applier(state, out=out)
        best = min(best, time.perf_counter() - start)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--qubits", type=int, nargs="+", default=[8, 10, 12, 14, 16]
    )
    parser.add_argument("--terms", type=int, default=20)
    parser.add_argument("--k", type=int, default=3)
    parser.add_argument("--repeats", type=int, default=25)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    backends = ["pure-python"]
    if qk.compiled_available():
        backends.append("compiled")
    else:
        print("note: compiled kernels unavailable; timing the fallback only")

    print(f"{'qubits':>6}  {'terms':>5}  {'k':>2}  {'backend':<12}"
          f"{'best matvec':>14}  {'speedup':>9}")
    for n in args.qubits:
        instance, state = build_case(n, args.terms, args.k, args.seed)
        baseline = None
        for backend in backends:
            applier = qk.InstanceApplier(instance, backend=backend)
            reference = qk.InstanceApplier(instance, backend=backends[0])(state)
            if not np.allclose(applier(state), reference, atol=1e-10):
                raise AssertionError(f"backend {backend} disagrees at n={n}")
            elapsed = best_time(applier, state, args.repeats)
            if baseline is None:
                baseline = elapsed
            print(
                f"{n:>6}  {args.terms:>5}  {args.k:>2}  {backend:<12}"
                f"{elapsed * 1e3:>11.3f} ms  {baseline / elapsed:>8.1f}x"
            )


if __name__ == "__main__":
    main()
