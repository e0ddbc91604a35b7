"""Pure-Python/numpy fallback for the compiled kernels in ``_kernels.pyx``.

Outputs are bit-identical to the compiled versions.
"""
import numpy as np

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def _mix64_array(z):
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


def pb_pmf(probs) -> np.ndarray:
    f = [1.0]
    for p in probs:
        p = float(p)
        q = 1.0 - p
        nxt = [0.0] * (len(f) + 1)
        nxt[len(f)] = f[-1] * p
        for k in range(len(f) - 1, 0, -1):
            nxt[k] = f[k] * q + f[k - 1] * p
        nxt[0] = f[0] * q
        f = nxt
    return np.array(f, dtype=np.float64)


def draw_counts(probs, seed: int, start: int, stop: int) -> np.ndarray:
    probs = np.ascontiguousarray(probs, dtype=np.float64)
    m = max(stop - start, 0)
    seed_key = np.uint64(mix64(seed + GAMMA))
    idx = np.arange(start + 1, start + m + 1, dtype=np.uint64)
    rep_key = _mix64_array(seed_key + idx * np.uint64(GAMMA))
    counts = np.zeros(m, dtype=np.int64)
    for i, p in enumerate(probs):
        bits = _mix64_array(rep_key + np.uint64((i + 1) * GAMMA & MASK64))
        u = (bits >> np.uint64(11)).astype(np.float64) * 2.0**-53
        counts += u < p
    return counts
