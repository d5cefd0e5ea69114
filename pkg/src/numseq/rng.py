"""Deterministic, splittable random streams for instance generation.

Every instance is generated from its own stream, keyed by
``(master_seed, stream_id)``.  Streams are counter-based (splitmix64),
so generation can be sharded across workers in any order and still
produce bit-identical datasets.

Seed derivation, fixed for all time:

    state_0 = mix64(mix64(master_seed) + GAMMA * stream_id)   (mod 2**64)
    output_i = mix64(state_0 + (i + 1) * GAMMA)               (mod 2**64)

where ``mix64`` is the splitmix64 finalizer and GAMMA is the 64-bit
golden-ratio constant.  Bounded draws use rejection sampling on the raw
64-bit outputs, so they are unbiased and platform independent.
"""

from __future__ import annotations

from dataclasses import dataclass

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def _mix64(z: int) -> int:
    z &= _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


@dataclass(frozen=True)
class SeedContext:
    """Addresses one random stream: (master_seed, stream_id)."""

    master_seed: int
    stream_id: int = 0

    def __post_init__(self):
        if not (0 <= self.master_seed <= _MASK64 and 0 <= self.stream_id <= _MASK64):
            raise ValueError("master_seed and stream_id must be 64-bit unsigned")

    def stream(self) -> "Stream":
        return Stream(self)

    def substream(self, stream_id: int) -> "SeedContext":
        return SeedContext(self.master_seed, stream_id)


class Stream:
    """Stateful draw cursor over one splitmix64 stream."""

    def __init__(self, ctx: SeedContext):
        self._state = _mix64((_mix64(ctx.master_seed) + _GAMMA * ctx.stream_id) & _MASK64)
        self._counter = 0

    def next64(self) -> int:
        self._counter += 1
        return _mix64((self._state + self._counter * _GAMMA) & _MASK64)

    def randrange(self, lower: int, upper: int) -> int:
        """Uniform integer in the half-open range [lower, upper)."""
        span = upper - lower
        if span <= 0:
            raise ValueError(f"empty range [{lower}, {upper})")
        # Rejection sampling keeps the draw unbiased for any span.
        limit = (_MASK64 + 1) - ((_MASK64 + 1) % span)
        while True:
            u = self.next64()
            if u < limit:
                return lower + u % span

    def randbelow(self, n: int) -> int:
        return self.randrange(0, n)

    def choice(self, items):
        return items[self.randbelow(len(items))]
