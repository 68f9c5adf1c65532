"""Convolutional encoder and hard-decision Viterbi tests."""

import numpy as np
import pytest

from wimax_phy.convolutional import (
    ConvCodeParams,
    cc_encode,
    cc_encode_blocks,
    viterbi_decode,
    viterbi_decode_blocks,
)

# impulse response of the (171, 133) pair, derived by stepping the
# shift register by hand: (G1, G2) outputs for input [1] plus 6 flush bits
IMPULSE_PAIRS = [(1, 1), (1, 0), (1, 1), (1, 1), (0, 0), (0, 1), (1, 1)]


class TestEncoder:
    def test_impulse_response(self):
        coded = cc_encode(np.array([1], dtype=np.uint8))
        assert len(coded) == 2 * (1 + 6)
        pairs = list(zip(coded[0::2].tolist(), coded[1::2].tolist()))
        assert pairs == IMPULSE_PAIRS

    def test_zero_input_gives_zero_output(self):
        assert not cc_encode(np.zeros(50, dtype=np.uint8)).any()

    def test_output_length(self):
        for n in (1, 7, 200, 1913):
            assert len(cc_encode(np.zeros(n, dtype=np.uint8))) == 2 * (n + 6)

    def test_linearity(self):
        # the code is linear over GF(2): enc(a ^ b) = enc(a) ^ enc(b)
        rng = np.random.default_rng(21)
        a = rng.integers(0, 2, 500, dtype=np.uint8)
        b = rng.integers(0, 2, 500, dtype=np.uint8)
        assert np.array_equal(cc_encode(a ^ b), cc_encode(a) ^ cc_encode(b))

    def test_batch_matches_scalar(self):
        rng = np.random.default_rng(22)
        blocks = rng.integers(0, 2, (5, 64), dtype=np.uint8)
        batch = cc_encode_blocks(blocks)
        for i in range(5):
            assert np.array_equal(batch[i], cc_encode(blocks[i]))


class TestViterbi:
    def test_clean_round_trip(self):
        rng = np.random.default_rng(23)
        bits = rng.integers(0, 2, 1000, dtype=np.uint8)
        assert np.array_equal(viterbi_decode(cc_encode(bits)), bits)

    def test_every_single_flip_corrected(self):
        rng = np.random.default_rng(42)
        bits = rng.integers(0, 2, 200, dtype=np.uint8)
        coded = cc_encode(bits)
        for i in range(len(coded)):
            rx = coded.copy()
            rx[i] ^= 1
            assert np.array_equal(viterbi_decode(rx), bits), f"flip at {i} not corrected"

    def test_twelve_bit_burst_breaks_decoding(self):
        # free distance 10: a 12-bit coded burst exceeds any correction
        # guarantee, and the error-injection harness shows this position fails
        rng = np.random.default_rng(42)
        bits = rng.integers(0, 2, 200, dtype=np.uint8)
        rx = cc_encode(bits)
        rx[100:112] ^= 1
        assert not np.array_equal(viterbi_decode(rx), bits)

    def test_matches_nearest_codeword_small_block(self):
        # exhaustive ML check on 10-bit messages with a fixed 2-flip pattern
        msgs = np.array(
            [[(m >> (9 - i)) & 1 for i in range(10)] for m in range(1024)], dtype=np.uint8
        )
        book = cc_encode_blocks(msgs)
        rx = book.copy()
        rx[:, 3] ^= 1
        rx[:, 20] ^= 1
        dec = viterbi_decode_blocks(rx)
        dists = (rx[:, None, :] != book[None, :, :]).sum(axis=2)
        nearest = msgs[np.argmin(dists, axis=1)]
        assert np.array_equal(dec, nearest)

    def test_batch_matches_scalar(self):
        rng = np.random.default_rng(24)
        blocks = rng.integers(0, 2, (6, 128), dtype=np.uint8)
        coded = cc_encode_blocks(blocks)
        coded[2, 40] ^= 1
        coded[4, 7] ^= 1
        batch = viterbi_decode_blocks(coded)
        for i in range(6):
            assert np.array_equal(batch[i], viterbi_decode(coded[i]))

    def test_odd_length_rejected(self):
        with pytest.raises(ValueError):
            viterbi_decode(np.zeros(13, dtype=np.uint8))

    def test_too_short_rejected(self):
        with pytest.raises(ValueError):
            viterbi_decode(np.zeros(10, dtype=np.uint8))

    def test_empty_message(self):
        coded = cc_encode(np.zeros(0, dtype=np.uint8))
        assert len(coded) == 12
        assert len(viterbi_decode(coded)) == 0


def test_params_validation():
    with pytest.raises(ValueError):
        ConvCodeParams(constraint_length=7, tail_bits=5)
