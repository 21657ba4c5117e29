import numpy as np
import pytest

from ssk import KernelParams, SymbolSeq, encode_texts


@pytest.fixture(scope="session")
def gatta_cata():
    _vocab, (s, t) = encode_texts(["gatta", "cata"], "character")
    return s, t


@pytest.fixture(scope="session")
def gatta_cata_vocab():
    vocab, (s, t) = encode_texts(["gatta", "cata"], "character")
    return vocab, s, t


def random_pair(rng, max_len, sigma, min_len=1):
    n1 = int(rng.integers(min_len, max_len + 1))
    n2 = int(rng.integers(min_len, max_len + 1))
    s = SymbolSeq(rng.integers(0, sigma, n1, dtype=np.int32), sigma)
    t = SymbolSeq(rng.integers(0, sigma, n2, dtype=np.int32), sigma)
    return s, t


def params(p=2, lam=0.5):
    return KernelParams(p=p, lam=lam)
