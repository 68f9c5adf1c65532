"""Block bit interleaver and Forney byte interleaver tests."""

import numpy as np
import pytest

from wimax_phy.interleaving import (
    ForneyDeinterleaver,
    ForneyInterleaver,
    ForneyParams,
    block_deinterleave,
    block_interleave,
    block_permutation,
    first_permutation,
    forney_deinterleave,
    forney_interleave,
)

SCHEMES = [(400, 2), (800, 4), (1200, 6)]


class TestBlockInterleaver:
    def test_first_permutation_frozen_values(self):
        m = first_permutation(400)
        assert m[0] == 0
        assert m[1] == 25, "coded bit 1 must move 400/16 = 25 positions away"

    def test_permutation_is_bijective(self):
        for ncbps, bps in SCHEMES:
            j = block_permutation(ncbps, bps)
            assert len(np.unique(j)) == ncbps, f"ncbps={ncbps}"

    def test_round_trip(self):
        rng = np.random.default_rng(31)
        for ncbps, bps in SCHEMES:
            bits = rng.integers(0, 2, 4 * ncbps, dtype=np.uint8)
            woven = block_interleave(bits, ncbps, bps)
            assert np.array_equal(block_deinterleave(woven, ncbps, bps), bits)
            assert not np.array_equal(woven, bits)

    def test_adjacent_bits_spread_across_subcarriers(self):
        for ncbps, _ in SCHEMES:
            m = first_permutation(ncbps)
            gaps = np.abs(np.diff(m))
            assert gaps.min() >= ncbps // 16, f"ncbps={ncbps}"

    def test_qpsk_second_step_is_identity(self):
        # s = 1 for QPSK, so j reduces to m
        assert np.array_equal(block_permutation(400, 2), first_permutation(400))

    def test_each_symbol_interleaved_independently(self):
        rng = np.random.default_rng(32)
        a = rng.integers(0, 2, 400, dtype=np.uint8)
        b = rng.integers(0, 2, 400, dtype=np.uint8)
        both = block_interleave(np.concatenate([a, b]), 400, 2)
        assert np.array_equal(both[:400], block_interleave(a, 400, 2))
        assert np.array_equal(both[400:], block_interleave(b, 400, 2))

    def test_partial_symbol_rejected(self):
        with pytest.raises(ValueError):
            block_interleave(np.zeros(399, dtype=np.uint8), 400, 2)
        with pytest.raises(ValueError):
            block_deinterleave(np.zeros(401, dtype=np.uint8), 400, 2)


class TestForneyBlock:
    def test_pair_identity(self):
        rng = np.random.default_rng(33)
        x = rng.integers(0, 256, 255 * 4, dtype=np.uint8)
        assert np.array_equal(forney_deinterleave(forney_interleave(x)), x)

    def test_length_preserved_and_permuted(self):
        rng = np.random.default_rng(34)
        x = rng.integers(0, 256, 255, dtype=np.uint8)
        y = forney_interleave(x)
        assert y.shape == x.shape
        assert not np.array_equal(y, x)
        assert np.array_equal(np.sort(y), np.sort(x))

    def test_indivisible_length_rejected(self):
        with pytest.raises(ValueError):
            forney_interleave(np.zeros(254, dtype=np.uint8))

    def test_burst_spreading_bound(self):
        # with M large enough that B*M covers a codeword, a channel burst of
        # B*L symbols leaves at most L errors in any 255-symbol window
        params = ForneyParams(branches=5, delay_step=52)
        n = 2550
        burst_tolerance = 8
        for start in (0, 700, 2000):
            y = np.zeros(n, dtype=np.uint8)
            y[start : start + 5 * burst_tolerance] = 1
            z = forney_deinterleave(y, params)
            windows = np.lib.stride_tricks.sliding_window_view(z, 255)
            worst = int(windows.sum(axis=1).max())
            assert worst <= burst_tolerance, f"burst at {start}: {worst} errors in a window"


class TestForneyStream:
    def test_pair_identity_after_flush(self):
        rng = np.random.default_rng(35)
        params = ForneyParams()
        x = rng.integers(0, 256, 1000, dtype=np.int64)
        intl = ForneyInterleaver(params)
        dein = ForneyDeinterleaver(params)
        y = np.concatenate([intl.process(x), intl.flush()])
        z = dein.process(y)
        assert np.array_equal(z[params.latency : params.latency + x.size], x)

    def test_latency_value(self):
        assert ForneyParams(branches=5, delay_step=3).latency == 60

    def test_state_carries_across_calls(self):
        rng = np.random.default_rng(36)
        params = ForneyParams()
        x = rng.integers(0, 256, 600, dtype=np.int64)
        whole = ForneyInterleaver(params).process(x)
        split = ForneyInterleaver(params)
        parts = np.concatenate([split.process(x[:100]), split.process(x[100:])])
        assert np.array_equal(whole, parts)

    def test_branch_zero_passes_through(self):
        intl = ForneyInterleaver(ForneyParams())
        out = intl.process(np.array([7, 9, 11, 13, 15], dtype=np.int64))
        assert out[0] == 7, "branch 0 has no delay"
