"""Peak pyramid against independent per-bucket and fold oracles."""

import numpy as np
import pytest

from slakit.media import (
    MediaError,
    UnknownLevelError,
    build_waveform_cache,
    decode_sidecar,
    decode_wav,
    encode_sidecar,
    pyramid_level_count,
    query_peaks,
)
from slakit.media.pcm import PcmAudio

from wavgen import impulse, silence, sine, white_noise


def brute_level0(samples, bucket):
    """Per-bucket scan written independently of the production fold."""
    out = []
    for i in range(0, len(samples), bucket):
        chunk = samples[i : i + bucket]
        lo, hi = chunk[0], chunk[0]
        for s in chunk[1:]:
            if s < lo:
                lo = s
            if s > hi:
                hi = s
        out.append((lo, hi))
    return out


def brute_fold(level):
    out = []
    for i in range(0, len(level), 2):
        group = level[i : i + 2]
        out.append((min(g[0] for g in group), max(g[1] for g in group)))
    return out


FIXTURES = {
    "silence": silence(rate=8000, seconds=1.0),
    "impulse": impulse(rate=8000, n=8000, at=1234),
    "sine": sine(freq=440.0, rate=44100, seconds=2.0),
    "noise": white_noise(rate=8000, seconds=1.0),
}


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_level0_matches_brute_force(name):
    pcm = decode_wav(FIXTURES[name])
    cache = build_waveform_cache(pcm, base_bucket=512)
    expected = brute_level0(pcm.samples.tolist(), 512)
    got = [(lo, hi) for lo, hi in cache.levels[0]]
    assert got == expected


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_every_level_matches_fold_oracle(name):
    pcm = decode_wav(FIXTURES[name])
    cache = build_waveform_cache(pcm, base_bucket=512)
    for k in range(1, cache.level_count):
        lower = [(lo, hi) for lo, hi in cache.levels[k - 1]]
        assert [(lo, hi) for lo, hi in cache.levels[k]] == brute_fold(lower)
    assert cache.bucket_count(cache.level_count - 1) <= 2


def test_all_zero_pcm_gives_zero_peaks():
    cache = build_waveform_cache(decode_wav(FIXTURES["silence"]))
    for level in cache.levels:
        assert not level.any()


def test_impulse_peaks_in_exactly_one_bucket_per_level():
    cache = build_waveform_cache(decode_wav(FIXTURES["impulse"]))
    peak = np.float32(32767) / np.float32(32768)
    for level in cache.levels:
        hits = [i for i, (_, hi) in enumerate(level) if hi == peak]
        assert len(hits) == 1


def test_rebuild_is_bit_identical():
    pcm = decode_wav(FIXTURES["noise"])
    first = encode_sidecar(build_waveform_cache(pcm))
    second = encode_sidecar(build_waveform_cache(decode_wav(FIXTURES["noise"])))
    assert first == second


def test_sidecar_round_trip():
    cache = build_waveform_cache(decode_wav(FIXTURES["sine"]))
    again = decode_sidecar(encode_sidecar(cache))
    assert again.sample_rate == cache.sample_rate
    assert again.total_samples == cache.total_samples
    assert again.base_bucket == cache.base_bucket
    assert again.level_count == cache.level_count
    for a, b in zip(again.levels, cache.levels):
        assert np.array_equal(a, b)
    assert encode_sidecar(again) == encode_sidecar(cache)


def test_query_identity_read():
    cache = build_waveform_cache(decode_wav(FIXTURES["sine"]))
    assert query_peaks(cache, 0, 0, None) == [(float(lo), float(hi)) for lo, hi in cache.levels[0]]


def test_query_fold_relation():
    cache = build_waveform_cache(decode_wav(FIXTURES["noise"]))
    for k in range(1, cache.level_count):
        for i in range(cache.bucket_count(k)):
            children = query_peaks(cache, k - 1, 2 * i, 2)
            lo = min(c[0] for c in children)
            hi = max(c[1] for c in children)
            assert query_peaks(cache, k, i, 1) == [(lo, hi)]


def test_query_clamps_past_end():
    cache = build_waveform_cache(decode_wav(FIXTURES["silence"]))
    n = cache.bucket_count(0)
    assert query_peaks(cache, 0, n - 2, 100) == query_peaks(cache, 0, n - 2, 2)
    assert query_peaks(cache, 0, n + 5, 3) == []


def test_unknown_level_raises():
    cache = build_waveform_cache(decode_wav(FIXTURES["silence"]))
    with pytest.raises(UnknownLevelError):
        query_peaks(cache, cache.level_count, 0, 1)


def test_empty_audio_rejected():
    with pytest.raises(MediaError):
        build_waveform_cache(PcmAudio(8000, np.zeros(0, dtype=np.float32)))


def test_base_bucket_must_be_power_of_two():
    pcm = decode_wav(FIXTURES["silence"])
    with pytest.raises(MediaError):
        build_waveform_cache(pcm, base_bucket=500)


@pytest.mark.parametrize("n", [1, 2, 511, 512, 513, 1024, 88200, 100_000])
def test_level_count_formula(n):
    pcm = PcmAudio(8000, np.zeros(n, dtype=np.float32))
    cache = build_waveform_cache(pcm, base_bucket=512)
    assert cache.level_count == pyramid_level_count(n, 512)
    # independent formula: fold bucket counts by hand
    buckets = (n + 511) // 512
    expected = 1
    while buckets > 2:
        buckets = (buckets + 1) // 2
        expected += 1
    assert cache.level_count == expected
