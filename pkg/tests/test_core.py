import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ssk import (HdrScalar, KernelParams, SymbolSeq, build_match_list,
                 build_occurrence_index, encode_texts, match_list_size,
                 normalize)
from ssk.core import KernelVector, zero_vector
from ssk.hdr import ZERO


class TestEncodeTexts:
    def test_character_mode(self):
        vocab, (seq,) = encode_texts(["aba"], "character")
        assert vocab == {"a": 0, "b": 1}
        assert list(seq) == [0, 1, 0]
        assert seq.alphabet_size == 2

    def test_word_mode(self):
        vocab, seqs = encode_texts(["cat dog", "dog"], "word")
        assert len(vocab) == 2
        assert list(seqs[0]) == [0, 1]
        assert list(seqs[1]) == [1]

    def test_empty_text(self):
        vocab, (seq,) = encode_texts([""], "character")
        assert vocab == {}
        assert len(seq) == 0

    def test_bad_mode(self):
        with pytest.raises(ValueError):
            encode_texts(["x"], "syllable")

    def test_shared_ids_across_texts(self):
        _, (a, b) = encode_texts(["abc", "cba"], "character")
        assert list(a) == [0, 1, 2]
        assert list(b) == [2, 1, 0]


class TestSymbolSeq:
    def test_rejects_out_of_alphabet(self):
        with pytest.raises(ValueError):
            SymbolSeq([0, 3], alphabet_size=3)
        with pytest.raises(ValueError):
            SymbolSeq([-1], alphabet_size=3)

    def test_immutable(self):
        seq = SymbolSeq([0, 1], alphabet_size=2)
        with pytest.raises(AttributeError):
            seq.alphabet_size = 5
        with pytest.raises(ValueError):
            seq.symbols[0] = 1

    def test_prefix(self):
        seq = SymbolSeq([0, 1, 0], alphabet_size=2)
        assert list(seq.prefix(2)) == [0, 1]


class TestOccurrenceIndex:
    def test_gatta(self, gatta_cata_vocab):
        vocab, s, _t = gatta_cata_vocab
        index = build_occurrence_index(s)
        assert index[vocab["a"]].tolist() == [2, 5]
        assert index[vocab["t"]].tolist() == [3, 4]
        assert index[vocab["g"]].tolist() == [1]

    def test_empty(self):
        index = build_occurrence_index(SymbolSeq([], alphabet_size=3))
        assert [ix.tolist() for ix in index] == [[], [], []]

    def test_repeated(self):
        index = build_occurrence_index(SymbolSeq([0, 0, 0], alphabet_size=1))
        assert index[0].tolist() == [1, 2, 3]


class TestMatchList:
    def test_gatta_cata_pairs(self, gatta_cata):
        s, t = gatta_cata
        ml = build_match_list(s, t, 0.5)
        assert ml.pairs() == [(2, 2), (2, 4), (3, 3), (4, 3), (5, 2), (5, 4)]

    def test_tilde_values(self, gatta_cata):
        s, t = gatta_cata
        ml = build_match_list(s, t, 0.5)
        # lambda**(2-i-j)
        assert ml.value_at(2, 2) == HdrScalar.from_lambda_power(0.5, -2)
        assert ml.value_at(5, 4) == HdrScalar.from_lambda_power(0.5, -7)

    def test_disjoint_alphabets(self):
        _, (s, t) = encode_texts(["ab", "cd"], "character")
        assert len(build_match_list(s, t, 0.5)) == 0

    def test_empty_input(self):
        _, (s, t) = encode_texts(["", "abc"], "character")
        assert len(build_match_list(s, t, 0.5)) == 0

    def test_alphabet_mismatch(self):
        s = SymbolSeq([0], alphabet_size=1)
        t = SymbolSeq([0], alphabet_size=2)
        with pytest.raises(ValueError):
            build_match_list(s, t, 0.5)

    @settings(max_examples=60, deadline=None)
    @given(st.data())
    def test_cardinality_matches_occurrences(self, data):
        sigma = data.draw(st.integers(1, 6))
        s_syms = data.draw(st.lists(st.integers(0, sigma - 1), max_size=30))
        t_syms = data.draw(st.lists(st.integers(0, sigma - 1), max_size=30))
        s = SymbolSeq(s_syms, sigma)
        t = SymbolSeq(t_syms, sigma)
        occ_s = build_occurrence_index(s)
        occ_t = build_occurrence_index(t)
        expected = sum(occ_s[c].size * occ_t[c].size for c in range(sigma))
        ml = build_match_list(s, t, 0.5)
        assert len(ml) == expected == match_list_size(s, t)
        # sorted, unique (i, j), and every pair really matches
        pairs = ml.pairs()
        assert pairs == sorted(set(pairs))
        for i, j in pairs:
            assert s_syms[i - 1] == t_syms[j - 1]


class TestKernelParams:
    @pytest.mark.parametrize("p,lam", [(0, 0.5), (1, 0.0), (1, 1.5), (-2, 0.5)])
    def test_invalid(self, p, lam):
        with pytest.raises(ValueError):
            KernelParams(p=p, lam=lam)

    def test_boundary_lambda_one(self):
        KernelParams(p=1, lam=1.0)


class TestNormalize:
    def test_self_similarity(self):
        x = HdrScalar.from_float(0.125)
        assert normalize(x, x, x) == 1.0

    def test_zero_self_kernel_rejected(self):
        x = HdrScalar.from_float(1.0)
        with pytest.raises(ValueError):
            normalize(x, ZERO, x)

    def test_zero_cross_is_zero(self):
        x = HdrScalar.from_float(1.0)
        assert normalize(ZERO, x, x) == 0.0

    def test_huge_exponents(self):
        a = HdrScalar.from_lambda_power(0.5, 10_000)
        b = HdrScalar.from_lambda_power(0.5, 9_000)
        c = HdrScalar.from_lambda_power(0.5, 11_000)
        # a / sqrt(b*c) = lambda^(10000 - 10000) = 1
        assert normalize(a, b, c) == pytest.approx(1.0, rel=1e-12)


class TestKernelVector:
    def test_level_access(self):
        vec = KernelVector([HdrScalar.from_float(1.0), ZERO])
        assert vec.level(1).to_float() == 1.0
        assert vec.level(2) == ZERO
        assert vec.p == 2

    def test_zero_vector(self):
        assert all(v == ZERO for v in zero_vector(3))

    def test_rel_deviation_between_vectors(self):
        a = KernelVector([HdrScalar.from_float(1.0)])
        b = KernelVector([HdrScalar.from_float(1.0 + 1e-10)])
        assert 0 < a.max_rel_deviation(b) < 2e-10
