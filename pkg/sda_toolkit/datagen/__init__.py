from sda_toolkit.datagen.partition import assign_communities
from sda_toolkit.datagen.rmat import (
    RmatGenerationError,
    RmatParams,
    RmatSampler,
    generate_rmat,
)

__all__ = [
    "RmatGenerationError",
    "RmatParams",
    "RmatSampler",
    "assign_communities",
    "generate_rmat",
]
