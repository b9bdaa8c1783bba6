from rsg.fortuna import (
    SeedGenerator,
    Transcript,
    new_state,
    pool_feed,
    reseed,
    generate,
    next_seed_pair,
)

__all__ = [
    "SeedGenerator",
    "Transcript",
    "new_state",
    "pool_feed",
    "reseed",
    "generate",
    "next_seed_pair",
]
