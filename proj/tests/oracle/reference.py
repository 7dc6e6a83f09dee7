#!/usr/bin/env python3
"""Independent reference for the engine's randomness primitives and shuffles.

Written from the algorithm descriptions in core/include/eit/random.hpp, not
from the C++ sources. Running it prints the golden values frozen into the
C++ unit tests (tests/test_core.cpp, tests/test_block_transforms.cpp).
"""

MASK = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


def fmix64(z):
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
    return z ^ (z >> 31)


class SplitMix64:
    def __init__(self, seed):
        self.state = seed & MASK

    def next(self):
        self.state = (self.state + GOLDEN) & MASK
        return fmix64(self.state)

    def uniform(self):
        return (self.next() >> 11) * 2.0 ** -53

    def bounded(self, n):
        x = self.next()
        m = x * n
        low = m & MASK
        if low < n:
            t = ((1 << 64) - n) % n
            while low < t:
                x = self.next()
                m = x * n
                low = m & MASK
        return m >> 64


def fnv1a64(data: bytes):
    h = 0xCBF29CE484222325
    for b in data:
        h ^= b
        h = (h * 0x100000001B3) & MASK
    return h


def mix64(a, b):
    return fmix64(a ^ fmix64((b + GOLDEN) & MASK))


def derive_image_seed(master, key):
    return mix64(master, fnv1a64(key.encode("utf-8")))


def seeded_permutation(seed, n):
    rng = SplitMix64(seed)
    perm = list(range(n))
    for i in range(n - 1, 0, -1):
        j = rng.bounded(i + 1)
        perm[i], perm[j] = perm[j], perm[i]
    return perm


def bernoulli_select(seed, n, p):
    rng = SplitMix64(seed)
    return [i for i in range(n) if rng.uniform() < p]


def shuffle_positions(pixels, positions, p, seed):
    """Select-then-permute over an ordered position list; returns a new list."""
    out = list(pixels)
    picked = bernoulli_select(mix64(seed, 1), len(positions), p)
    sel = [positions[i] for i in picked]
    perm = seeded_permutation(mix64(seed, 2), len(sel))
    for i, dst in enumerate(sel):
        out[dst] = pixels[sel[perm[i]]]
    return out


def full_random_shuffle(pixels, p, seed):
    return shuffle_positions(pixels, list(range(len(pixels))), p, seed)


def tiles(width, height, edge):
    cols = max(1, width // edge)
    rows = max(1, height // edge)
    out = []
    for r in range(rows):
        for c in range(cols):
            x0, y0 = c * edge, r * edge
            w = width - x0 if c == cols - 1 else edge
            h = height - y0 if r == rows - 1 else edge
            out.append((r, c, x0, y0, w, h))
    return out


def grid_shuffle(pixels, width, height, edge, seed):
    ts = tiles(width, height, edge)
    classes = []
    for t in ts:
        shape = (t[4], t[5])
        for cls in classes:
            if cls[0] == shape:
                cls[1].append(t)
                break
        else:
            classes.append((shape, [t]))
    out = list(pixels)
    for k, (_, members) in enumerate(classes):
        perm = seeded_permutation(mix64(seed, k), len(members))
        for i, dst in enumerate(members):
            src = members[perm[i]]
            for dy in range(dst[5]):
                for dx in range(dst[4]):
                    out[(dst[3] + dy) * width + dst[2] + dx] = \
                        pixels[(src[3] + dy) * width + src[2] + dx]
    return out


def main():
    print("derive_image_seed(7, 'img/001.png') = 0x%016x" % derive_image_seed(7, "img/001.png"))
    print("derive_image_seed(0, 'a') = 0x%016x" % derive_image_seed(0, "a"))
    print("fnv1a64('') = 0x%016x" % fnv1a64(b""))
    print("fnv1a64('a') = 0x%016x" % fnv1a64(b"a"))
    print("mix64(1, 2) = 0x%016x" % mix64(1, 2))
    rng = SplitMix64(0)
    print("splitmix64(0) first 3 =", ["0x%016x" % rng.next() for _ in range(3)])
    print("seeded_permutation(42, 5) =", seeded_permutation(42, 5))
    print("seeded_permutation(1, 10) =", seeded_permutation(1, 10))
    print("bernoulli_select(42, 16, 0.5) =", bernoulli_select(42, 16, 0.5))
    ramp = list(range(16))
    print("full_random_shuffle(4x4 ramp, 0.5, 42) =", full_random_shuffle(ramp, 0.5, 42))
    ramp64 = list(range(64))
    print("grid_shuffle(8x8 ramp, 4, 7) =", grid_shuffle(ramp64, 8, 8, 4, 7))
    ramp100 = list(range(100))
    print("grid_shuffle(10x10 ramp, 4, 3) =", grid_shuffle(ramp100, 10, 10, 4, 3))
    print("grid_shuffle(14x10 ramp, 4, 11) =", grid_shuffle(list(range(140)), 14, 10, 4, 11))


if __name__ == "__main__":
    main()
