"""Regenerates the bundled label and spike fixtures (seeded, deterministic)."""
import pathlib

import numpy as np

root = pathlib.Path(__file__).resolve().parent.parent
fx = root / "fixtures"
fx.mkdir(exist_ok=True)


def write_labels(name, labels):
    (fx / name).write_text("".join(f"{x}\n" for x in labels))


n = 1338
states = 2 * n
rng = np.random.default_rng(1338)
p = 1.0 / np.arange(1, states + 1)
p /= p.sum()
write_labels("zipf1338.txt", [f"s{i}" for i in rng.choice(states, size=n, p=p)])
write_labels("uniform1338.txt", [f"s{i}" for i in rng.integers(0, states, size=n)])
write_labels("aab.txt", ["a", "a", "b"])

rng = np.random.default_rng(7)
T = 100.0
slow = np.sort(rng.uniform(0, T / 2, rng.poisson(T / 2 * 1.0)))
fast = np.sort(rng.uniform(T / 2, T, rng.poisson(T / 2 * 20.0)))
times = np.concatenate([slow, fast])
(fx / "two_rate_spikes.txt").write_text(f"# T={T:g}\n" + "".join(f"{t:.6f}\n" for t in times))
