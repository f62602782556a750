"""Waveform peak pyramid and its binary sidecar.

Level 0 stores per-bucket (min, max) over ``base_bucket`` samples; each
higher level folds two lower buckets (low index first, float32 throughout,
so equality is exact). Folding stops once a level has at most two buckets.
The sidecar encoding is bit-exact: rebuilding from identical audio yields
identical bytes.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from slakit.media.pcm import MediaError, PcmAudio

SIDECAR_MAGIC = b"SLAWF1"


class UnknownLevelError(MediaError):
    """Requested pyramid level does not exist."""


class SidecarFormatError(MediaError):
    """Sidecar bytes do not follow the layout."""


@dataclass(frozen=True, eq=False)
class WaveformCache:
    """The full pyramid; levels[k] is an (n, 2) float32 array of (min, max)."""

    sample_rate: int
    total_samples: int
    base_bucket: int
    levels: tuple[np.ndarray, ...]

    @property
    def level_count(self) -> int:
        return len(self.levels)

    def bucket_count(self, level: int) -> int:
        return len(self.levels[level])


def _fold_pairs(level: np.ndarray) -> np.ndarray:
    """Combine entries (2i, 2i+1) -> i; an odd tail entry passes through."""
    cuts = np.arange(0, len(level), 2)
    mins = np.minimum.reduceat(level[:, 0], cuts)
    maxs = np.maximum.reduceat(level[:, 1], cuts)
    return np.stack([mins, maxs], axis=1).astype(np.float32)


def build_waveform_cache(pcm: PcmAudio, base_bucket: int = 512) -> WaveformCache:
    """Compute the pyramid; pure in (samples, base_bucket).

    base_bucket must be a positive power of two; empty audio is rejected.
    """
    if base_bucket < 1 or base_bucket & (base_bucket - 1):
        raise MediaError(f"base_bucket must be a power of two, got {base_bucket}")
    samples = pcm.samples
    if len(samples) == 0:
        raise MediaError("cannot build a waveform cache for empty audio")

    cuts = np.arange(0, len(samples), base_bucket)
    mins = np.minimum.reduceat(samples, cuts)
    maxs = np.maximum.reduceat(samples, cuts)
    level = np.stack([mins, maxs], axis=1).astype(np.float32)

    levels = [level]
    while len(levels[-1]) > 2:
        levels.append(_fold_pairs(levels[-1]))
    for arr in levels:
        arr.setflags(write=False)
    return WaveformCache(
        sample_rate=pcm.sample_rate,
        total_samples=len(samples),
        base_bucket=base_bucket,
        levels=tuple(levels),
    )


def pyramid_level_count(total_samples: int, base_bucket: int) -> int:
    """Levels the pyramid will have for a given sample count."""
    buckets = -(-total_samples // base_bucket)
    count = 1
    while buckets > 2:
        buckets = -(-buckets // 2)
        count += 1
    return count


def query_peaks(
    cache: WaveformCache, level: int, from_bucket: int = 0, count: int | None = None
) -> list[tuple[float, float]]:
    """Stored (min, max) pairs for a bucket range; the range clamps to what
    exists, never recomputes, and an unknown level raises."""
    if not 0 <= level < cache.level_count:
        raise UnknownLevelError(f"level {level} not in 0..{cache.level_count - 1}")
    arr = cache.levels[level]
    start = max(0, from_bucket)
    stop = len(arr) if count is None else min(len(arr), start + max(0, count))
    return [(float(lo), float(hi)) for lo, hi in arr[start:stop]]


def encode_sidecar(cache: WaveformCache) -> bytes:
    """Bit-exact layout: magic, u32 rate, u64 samples, u32 base, u32 levels,
    then per level u64 bucket_count + float32 (min, max) pairs, little-endian."""
    out = [SIDECAR_MAGIC]
    out.append(
        struct.pack(
            "<IQII",
            cache.sample_rate,
            cache.total_samples,
            cache.base_bucket,
            cache.level_count,
        )
    )
    for level in cache.levels:
        out.append(struct.pack("<Q", len(level)))
        out.append(np.ascontiguousarray(level, dtype="<f4").tobytes())
    return b"".join(out)


def decode_sidecar(data: bytes) -> WaveformCache:
    """Inverse of encode_sidecar; raises SidecarFormatError on any mismatch."""
    if data[: len(SIDECAR_MAGIC)] != SIDECAR_MAGIC:
        raise SidecarFormatError("bad sidecar magic")
    offset = len(SIDECAR_MAGIC)
    try:
        rate, total, base, level_count = struct.unpack_from("<IQII", data, offset)
        offset += struct.calcsize("<IQII")
        levels = []
        for _ in range(level_count):
            (buckets,) = struct.unpack_from("<Q", data, offset)
            offset += 8
            nbytes = buckets * 2 * 4
            if offset + nbytes > len(data):
                raise SidecarFormatError("sidecar truncated")
            arr = np.frombuffer(data, dtype="<f4", count=buckets * 2, offset=offset)
            offset += nbytes
            arr = arr.reshape(-1, 2).astype(np.float32)
            arr.setflags(write=False)
            levels.append(arr)
    except struct.error as exc:
        raise SidecarFormatError(f"sidecar truncated: {exc}") from exc
    if offset != len(data):
        raise SidecarFormatError(f"{len(data) - offset} trailing bytes in sidecar")
    return WaveformCache(
        sample_rate=rate, total_samples=total, base_bucket=base, levels=tuple(levels)
    )
