"""Prefix and enumerative coding, compression distances, randomness censuses
and a toy program-size machine."""

from ._core import (
    HitIndex,
    KolmoError,
    census,
    class_size,
    compressed_size,
    deficiency,
    distance_matrix,
    entropy,
    entropy_of_counts,
    enum_decode,
    enum_encode,
    huffman_code,
    k_exact,
    k_upper,
    kadic_decode,
    kadic_encode,
    kraft_construct,
    kraft_sum,
    ncd,
    ngd_from_counts,
    pack_len,
    shortest_program,
    toy_decode,
    unpack_len,
    upgma_newick,
)

__all__ = [name for name in dir() if not name.startswith("_")]
