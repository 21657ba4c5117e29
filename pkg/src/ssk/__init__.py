"""Gap-weighted string subsequence kernels.

Four interchangeable algorithms compute the same K_1..K_p values:

- :func:`ssk.oracle.brute_force_ssk` enumerates occurrences (the oracle),
- :func:`ssk.dp.dp_ssk` fills suffix/accumulator tables,
- :func:`ssk.sparse.sparse_ssk` sweeps match lists over a range-sum tree,
- :func:`ssk.geo.geometric_ssk` answers strict-dominance queries on a
  layered range sum tree,

plus the gap-capped approximation :func:`ssk.trie.trie_ssk`.  The
``ssk-bench`` CLI cross-validates them and times synthetic and corpus
workloads.
"""

from .core import (KernelParams, KernelVector, MatchList, SymbolSeq,
                   build_match_list, build_occurrence_index, encode_texts,
                   match_list_size, normalize)
from .dp import DpTables, dp_ssk, dp_tables
from .geo import geo_level_lists, geometric_ssk
from .geometry import (CompositeKey, LayeredRangeSumTree, RangeQuery2D,
                       WeightedPoint, tilde_match_points)
from .hdr import HdrScalar
from .oracle import (ORACLE_LENGTH_CAP, brute_force_ssk, brute_force_suffix,
                     explicit_feature_map)
from .sparse import RangeSumTree, sparse_level_lists, sparse_ssk
from .trie import AliveLists, alive_lists_snapshot, trie_ssk

__version__ = "0.1.0"

__all__ = [
    "AliveLists", "CompositeKey", "DpTables", "HdrScalar", "KernelParams",
    "KernelVector", "LayeredRangeSumTree", "MatchList", "ORACLE_LENGTH_CAP",
    "RangeQuery2D", "RangeSumTree", "SymbolSeq", "WeightedPoint",
    "alive_lists_snapshot", "brute_force_ssk", "brute_force_suffix",
    "build_match_list", "build_occurrence_index", "dp_ssk", "dp_tables",
    "encode_texts", "explicit_feature_map", "geo_level_lists",
    "geometric_ssk", "match_list_size", "normalize", "sparse_level_lists",
    "sparse_ssk", "tilde_match_points", "trie_ssk",
]
