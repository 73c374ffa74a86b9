"""Small shared helpers."""

_MASK = (1 << 64) - 1


def mix_seed(*parts: int) -> int:
    """Fold integers into one 63-bit seed, splitmix64 style.

    Explicit mixing keeps derived seeds stable across interpreter
    versions; never feed tuples to random.Random directly.
    """
    h = 0x9E3779B97F4A7C15
    for p in parts:
        h = (h ^ (p & _MASK)) & _MASK
        h = (h + 0x9E3779B97F4A7C15) & _MASK
        z = h
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        h = z ^ (z >> 31)
    return h & ((1 << 63) - 1)
