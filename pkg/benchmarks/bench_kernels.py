"""Benchmark the compiled stepping kernel against the pure-Python twin.

Times the three hot loops (group-word action, first-level sections via
the word problem, and ball construction) on both backends and prints a
small table with the speedups.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import random
import time

from zcgroups import ball, build_kneading, commutator
from zcgroups._kernels import modules


def timed(fn, repeat):
    best = None
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        elapsed = time.perf_counter() - start
        best = elapsed if best is None else min(best, elapsed)
    return best


def bench_act(aut, rng):
    words = [aut.word("a1 b1 a1^-1 b1^-1"), aut.word("b1 a1 b1"), aut.word("a1^3 b1^-1")]
    vertices = [
        tuple(rng.randint(-6, 6) for _ in range(rng.randint(1, 8)))
        for _ in range(2000)
    ]

    def run():
        for word in words:
            for v in vertices:
                word.act(v)

    return run


def bench_word_problem(aut, rng):
    gens = []
    for s in aut.generators:
        gens.append(aut.generator_word(s))
        gens.append(aut.generator_word(s).inverse())
    samples = []
    for _ in range(120):
        word = aut.identity_word()
        for _ in range(rng.randint(1, 6)):
            word = word * gens[rng.randrange(len(gens))]
        samples.append(word)
    samples.append(commutator(gens[0], gens[2]))

    def run():
        for word in samples:
            word.is_trivial()

    return run


def bench_ball(aut, rng):
    def run():
        ball(aut, (0, 0), 14)
        ball(aut, (0, 0, 0), 10)

    return run


BENCHES = [
    ("group-word action", bench_act),
    ("word problem", bench_word_problem),
    ("schreier ball", bench_ball),
]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    available = modules()
    print(f"backends: {', '.join(available)}")
    results = {}
    for name, setup in BENCHES:
        for backend in available:
            aut = build_kneading([0], [1])
            aut._force_backend(backend)
            run = setup(aut, random.Random(11))
            results[(name, backend)] = timed(run, args.repeat)

    width = max(len(name) for name, _ in BENCHES)
    print(f"{'benchmark'.ljust(width)}  {'pure':>10}  {'compiled':>10}  {'speedup':>8}")
    for name, _ in BENCHES:
        pure = results[(name, "pure")]
        line = f"{name.ljust(width)}  {pure * 1e3:9.2f}ms"
        if ("compiled" in available):
            fast = results[(name, "compiled")]
            line += f"  {fast * 1e3:9.2f}ms  {pure / fast:7.1f}x"
        else:
            line += f"  {'n/a':>10}  {'n/a':>8}"
        print(line)


if __name__ == "__main__":
    main()
