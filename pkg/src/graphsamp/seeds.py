"""Deterministic derivation of independent seed streams."""

_UINT64_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def mix_seed(seed: int, index: int) -> int:
    """Derive an independent 64-bit stream seed from (seed, index).

    SplitMix64 finalizer applied to the seed advanced by ``index + 1``
    golden-ratio increments; the avalanche step makes nearby indices
    yield uncorrelated streams. Pure and stable across platforms, so
    derived streams are reproducible anywhere.
    """
    z = (int(seed) + (int(index) + 1) * _GOLDEN) & _UINT64_MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _UINT64_MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _UINT64_MASK
    return (z ^ (z >> 31)) & _UINT64_MASK
