"""WAV decoding and excerpt extraction against brute-force sample oracles."""

import numpy as np
import pytest

from slakit.media import (
    MediaDecodeError,
    MediaRangeError,
    PcmAudio,
    decode_wav,
    encode_wav,
    excerpt,
)
from slakit.timebase import TimeSpan

from wavgen import silence, sine, stereo_opposed, wav_bytes


def test_silence_decodes_to_zeros():
    pcm = decode_wav(silence(rate=8000, seconds=1.0))
    assert pcm.sample_rate == 8000
    assert len(pcm) == 8000
    assert pcm.duration_ms == 1000
    assert not pcm.samples.any()


def test_stereo_opposed_mixes_to_zero():
    pcm = decode_wav(stereo_opposed())
    assert not pcm.samples.any()


def test_sine_sample_count_and_range():
    pcm = decode_wav(sine(freq=440.0, rate=44100, seconds=2.0))
    assert len(pcm) == 88200
    # brute-force scan of every decoded sample
    assert max(abs(float(s)) for s in pcm.samples[:2000]) <= 1.0
    assert float(np.abs(pcm.samples).max()) <= 1.0
    assert float(np.abs(pcm.samples).max()) > 0.99


def test_eight_bit_normalization():
    raw = np.array([0, 128, 255], dtype=np.uint8)
    pcm = decode_wav(wav_bytes(raw, rate=8000, width=1))
    assert pcm.samples[0] == pytest.approx(-1.0)
    assert pcm.samples[1] == 0.0
    assert pcm.samples[2] == pytest.approx(127 / 128)


def test_unsupported_width_rejected():
    data = bytearray(silence())
    # widen the declared sample width to 3 bytes (24-bit)
    idx = data.find(b"fmt ")
    data[idx + 8 + 14] = 3  # BitsPerSample low byte offset within fmt chunk
    data[idx + 8 + 22 - 8] = 24
    with pytest.raises(MediaDecodeError):
        decode_wav(bytes(data))


def test_truncated_container_rejected():
    data = silence()
    with pytest.raises(MediaDecodeError):
        decode_wav(data[: len(data) // 2])


def test_garbage_rejected():
    with pytest.raises(MediaDecodeError):
        decode_wav(b"RIFFgarbage")
    with pytest.raises(MediaDecodeError):
        decode_wav(b"")


def test_encode_decode_is_stable():
    pcm = decode_wav(sine(seconds=0.25))
    again = decode_wav(encode_wav(pcm))
    assert again.sample_rate == pcm.sample_rate
    assert np.array_equal(again.samples, pcm.samples)


def test_excerpt_slices_by_index_arithmetic():
    pcm = decode_wav(sine(rate=8000, seconds=3.0))
    ex = excerpt(pcm, TimeSpan(1000, 2000))
    # independent brute-force slice
    assert np.array_equal(ex.audio.samples, pcm.samples[8000:16000])
    assert ex.span == TimeSpan(1000, 2000)
    assert ex.audio.duration_ms == 1000


def test_excerpt_whole_file_is_identity():
    pcm = decode_wav(sine(rate=8000, seconds=1.0))
    ex = excerpt(pcm, TimeSpan(0, pcm.duration_ms))
    assert np.array_equal(ex.audio.samples, pcm.samples)


def test_zero_length_span_unrepresentable():
    with pytest.raises(ValueError):
        TimeSpan(500, 500)


def test_excerpt_out_of_bounds():
    pcm = decode_wav(silence(rate=8000, seconds=1.0))
    with pytest.raises(MediaRangeError):
        excerpt(pcm, TimeSpan(500, 1500))


def test_excerpt_conservation_over_partitions():
    rng = np.random.default_rng(7)
    pcm = decode_wav(sine(rate=8000, seconds=1.0))
    cuts = sorted(rng.choice(np.arange(1, 1000), size=5, replace=False).tolist())
    bounds = [0] + cuts + [1000]
    pieces = [
        excerpt(pcm, TimeSpan(a, b)).audio.samples for a, b in zip(bounds, bounds[1:])
    ]
    assert np.array_equal(np.concatenate(pieces), pcm.samples)


def test_samples_are_read_only():
    pcm = decode_wav(silence())
    with pytest.raises(ValueError):
        pcm.samples[0] = 1.0


def test_duration_floors():
    pcm = PcmAudio(sample_rate=8000, samples=np.zeros(8004, dtype=np.float32))
    assert pcm.duration_ms == 1000
