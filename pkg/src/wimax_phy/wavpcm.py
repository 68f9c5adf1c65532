"""Audio payload I/O: unsigned 8-bit PCM, 8 kHz, mono RIFF WAVE only.

The demo treats each audio sample as one payload byte, unpacked to bits
MSB-first.  Anything other than the exact PCM-u8/8000 Hz/mono format is
rejected; there is no resampling or format conversion.
"""

from __future__ import annotations

import os
import wave

import numpy as np

SAMPLE_RATE = 8000
SAMPLE_WIDTH = 1  # bytes
CHANNELS = 1


class WavFormatError(ValueError):
    """The file is not 8-bit/8 kHz/mono PCM WAVE."""


def read_wav_u8(source) -> np.ndarray:
    """Load samples from a RIFF WAVE file (path or binary stream) as uint8."""
    if isinstance(source, os.PathLike):
        source = os.fspath(source)
    path = source if isinstance(source, str) else getattr(source, "name", "<stream>")
    try:
        with wave.open(source, "rb") as wf:
            if wf.getcomptype() != "NONE":
                raise WavFormatError(
                    f"{path}: compressed WAVE ({wf.getcomptype()}) not supported, need PCM"
                )
            if wf.getsampwidth() != SAMPLE_WIDTH:
                raise WavFormatError(
                    f"{path}: {8 * wf.getsampwidth()}-bit samples not supported, need 8-bit"
                )
            if wf.getframerate() != SAMPLE_RATE:
                raise WavFormatError(
                    f"{path}: sample rate {wf.getframerate()} not supported, need {SAMPLE_RATE}"
                )
            if wf.getnchannels() != CHANNELS:
                raise WavFormatError(
                    f"{path}: {wf.getnchannels()} channels not supported, need mono"
                )
            n = wf.getnframes()
            if n == 0:
                raise WavFormatError(f"{path}: no audio frames")
            data = wf.readframes(n)
    except wave.Error as exc:
        raise WavFormatError(f"{path}: not a PCM WAVE file ({exc})") from None
    return np.frombuffer(data, dtype=np.uint8).copy()


def write_wav_u8(dest, samples: np.ndarray) -> None:
    """Write a uint8 vector as a RIFF WAVE file (path or binary stream)."""
    if isinstance(dest, os.PathLike):
        dest = os.fspath(dest)
    samples = np.asarray(samples, dtype=np.uint8)
    with wave.open(dest, "wb") as wf:
        wf.setnchannels(CHANNELS)
        wf.setsampwidth(SAMPLE_WIDTH)
        wf.setframerate(SAMPLE_RATE)
        wf.writeframes(samples.tobytes())


def samples_to_bits(samples: np.ndarray) -> np.ndarray:
    """Unpack u8 samples to bits, MSB first within each sample."""
    return np.unpackbits(np.asarray(samples, dtype=np.uint8))


def bits_to_samples(bits: np.ndarray) -> np.ndarray:
    """Pack bits (MSB first) back into u8 samples."""
    bits = np.asarray(bits, dtype=np.uint8)
    if bits.size % 8:
        raise ValueError(f"bit count {bits.size} is not a whole number of samples")
    return np.packbits(bits)
