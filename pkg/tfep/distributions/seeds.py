"""
Reproducible random streams.

A Seed names one independent stream: the master seed of a study plus the
replication index (``stream``) and, for two-sample studies, which of the two
samples is being drawn (``substream``). Streams are derived with numpy's
SeedSequence spawn keys and drive the counter-based Philox generator, so the
numbers drawn for a replication never depend on which worker ran it or in
what order.
"""

import os
from dataclasses import dataclass

import numpy as np

from tfep.errors import UsageError

SEED_ENV_VAR = "TFEP_SEED"
DEFAULT_MASTER_SEED = 20240101

_UINT64_MAX = 2**64 - 1


@dataclass(frozen=True)
class Seed:
    """Identifies one random stream of a study."""

    master: int
    stream: int = 0
    substream: int = 0

    def __post_init__(self) -> None:
        for name in ("master", "stream", "substream"):
            value = getattr(self, name)
            if not isinstance(value, (int, np.integer)) or not 0 <= value <= _UINT64_MAX:
                raise UsageError(f"Seed {name} must be an unsigned 64-bit integer, got {value!r}")

    def sequence(self) -> np.random.SeedSequence:
        """SeedSequence for this stream."""
        return np.random.SeedSequence(
            int(self.master), spawn_key=(int(self.stream), int(self.substream))
        )

    def rng(self) -> np.random.Generator:
        """A fresh generator positioned at the start of this stream."""
        return np.random.Generator(np.random.Philox(self.sequence()))

    def with_substream(self, substream: int) -> "Seed":
        return Seed(self.master, self.stream, substream)


def resolve_master_seed(flag: int | None = None) -> int:
    """
    Pick the master seed for a run.

    The explicit flag wins; otherwise TFEP_SEED from the environment;
    otherwise DEFAULT_MASTER_SEED.

    Raises:
        UsageError: If TFEP_SEED is set but is not an unsigned integer.
    """
    if flag is not None:
        return int(flag)

    env_value = os.environ.get(SEED_ENV_VAR)
    if env_value is None or not env_value.strip():
        return DEFAULT_MASTER_SEED

    try:
        seed = int(env_value.strip(), 0)
    except ValueError as e:
        raise UsageError(f"{SEED_ENV_VAR} must be an integer, got {env_value!r}") from e
    if not 0 <= seed <= _UINT64_MAX:
        raise UsageError(f"{SEED_ENV_VAR} must fit in 64 unsigned bits, got {seed}")
    return seed
