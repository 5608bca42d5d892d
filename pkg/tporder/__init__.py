"""
tporder: unranking permutations in transposition order
"""

from os.path import abspath, join, dirname
import toml

# Load Config
src_dir = abspath(dirname(__file__))
config = toml.load(join(src_dir, "config.toml"))

from .factoradic import (  # noqa: E402
    FactoradicCode,
    Permutation,
    code_from_integer,
    decode_permutation,
    encode_permutation,
    integer_from_code,
)
from .unranker import (  # noqa: E402
    UnrankTrace,
    minimal_width,
    rank,
    rank_permutation,
    unrank,
    unrank_permutation,
    unrank_with_trace,
)
from .distance import (  # noqa: E402
    DistanceQuery,
    bfs_distance,
    cayley_distance,
    distance,
    seed_distance,
    transpositions_between,
)
from .stream import DeltaStep, SeedRange, Transposition, delta, open_stream, partition  # noqa: E402

__all__ = [
    "config",
    "FactoradicCode",
    "Permutation",
    "code_from_integer",
    "decode_permutation",
    "encode_permutation",
    "integer_from_code",
    "UnrankTrace",
    "minimal_width",
    "rank",
    "rank_permutation",
    "unrank",
    "unrank_permutation",
    "unrank_with_trace",
    "DistanceQuery",
    "bfs_distance",
    "cayley_distance",
    "distance",
    "seed_distance",
    "transpositions_between",
    "DeltaStep",
    "SeedRange",
    "Transposition",
    "delta",
    "open_stream",
    "partition",
]
