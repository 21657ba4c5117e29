from collections import Counter

import numpy as np
import pytest

from ssk import (KernelParams, alive_lists_snapshot, build_occurrence_index,
                 dp_ssk, encode_texts, trie_ssk)

from conftest import random_pair


class TestAliveLists:
    def test_single_symbol(self, gatta_cata_vocab):
        vocab, s, t = gatta_cata_vocab
        snap = alive_lists_snapshot(s, t, [vocab["a"]], g_max=3)
        assert snap.s_lists == {0: Counter({2: 1, 5: 1})}
        assert snap.t_lists == {0: Counter({2: 1, 4: 1})}

    def test_ata_with_duplicate_entries(self, gatta_cata_vocab):
        vocab, s, t = gatta_cata_vocab
        u = [vocab["a"], vocab["t"], vocab["a"]]
        snap = alive_lists_snapshot(s, t, u, g_max=3)
        # two occurrences of 'ata' in gatta end at 5 with one gap each
        assert snap.s_lists == {1: Counter({5: 2})}
        assert snap.t_lists == {0: Counter({4: 1})}

    def test_missing_subsequence(self, gatta_cata_vocab):
        vocab, s, t = gatta_cata_vocab
        u = [vocab["g"], vocab["g"]]
        snap = alive_lists_snapshot(s, t, u, g_max=3)
        assert snap.s_lists == {}

    def test_empty_u_rejected(self, gatta_cata):
        s, t = gatta_cata
        with pytest.raises(ValueError):
            alive_lists_snapshot(s, t, [], g_max=1)

    def test_gap_cap_respected(self, gatta_cata_vocab):
        vocab, s, t = gatta_cata_vocab
        u = [vocab["a"], vocab["t"], vocab["a"]]
        snap = alive_lists_snapshot(s, t, u, g_max=0)
        assert snap.s_lists == {}  # both occurrences need one gap
        assert snap.t_lists == {0: Counter({4: 1})}

    def test_depth1_cardinality(self):
        rng = np.random.default_rng(2)
        s, t = random_pair(rng, 20, 4)
        occ_s = build_occurrence_index(s)
        for c in range(s.alphabet_size):
            snap = alive_lists_snapshot(s, t, [c], g_max=5)
            total = sum(sum(cnt.values()) for cnt in snap.s_lists.values())
            assert total == occ_s[c].size
            assert set(snap.s_lists) <= {0}  # level-1 gaps are all zero


class TestTrieKernel:
    @pytest.mark.parametrize("g_max", [0, 1, 5])
    def test_k1_any_gap_cap(self, g_max, gatta_cata):
        s, t = gatta_cata
        vec = trie_ssk(s, t, KernelParams(p=1, lam=0.5), g_max=g_max)
        assert vec.level(1).to_float() == 6 * 0.5 ** 2

    def test_k3_worked(self, gatta_cata):
        s, t = gatta_cata
        vec = trie_ssk(s, t, KernelParams(p=3, lam=0.5), g_max=3)
        assert vec.level(3).to_float() == 2 * 0.5 ** 7

    def test_contiguous_only(self, gatta_cata):
        s, t = gatta_cata
        vec = trie_ssk(s, t, KernelParams(p=2, lam=0.5), g_max=0)
        assert vec.level(2).to_float() == 2 * 0.5 ** 4

    def test_negative_g_max_rejected(self, gatta_cata):
        s, t = gatta_cata
        with pytest.raises(ValueError):
            trie_ssk(s, t, KernelParams(p=1, lam=0.5), g_max=-1)

    def test_empty_inputs(self):
        _, (s, t) = encode_texts(["", "ab"], "character")
        vec = trie_ssk(s, t, KernelParams(p=2, lam=0.5), g_max=3)
        assert all(v.is_zero for v in vec)

    def test_monotone_in_g_max_and_converges_to_dp(self):
        rng = np.random.default_rng(31)
        for _ in range(10):
            sigma = int(rng.choice([2, 4]))
            s, t = random_pair(rng, 16, sigma)
            p = int(rng.integers(1, 4))
            params = KernelParams(p=p, lam=0.5)
            exact = dp_ssk(s, t, params)
            longest = max(len(s), len(t))
            prev = None
            for g in [0, 1, 2, 4, 8, longest]:
                vec = trie_ssk(s, t, params, g_max=g)
                if prev is not None:
                    for a, b in zip(prev, vec):
                        assert a <= b
                prev = vec
                for q in range(1, p + 1):
                    if g >= longest - q:
                        dev = abs(vec.level(q).log() - exact.level(q).log())
                        if exact.level(q).is_zero:
                            assert vec.level(q).is_zero
                        else:
                            assert dev < 1e-9
