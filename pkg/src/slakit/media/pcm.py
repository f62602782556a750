"""PCM decoding and sample-exact excerpts.

Decoded audio is mono float32 in [-1, 1]: 16-bit samples scale by 1/32768,
8-bit by (x-128)/128, stereo averages the channels. Durations floor to whole
milliseconds, so samples past the last whole millisecond are unreachable
through millisecond spans.
"""

from __future__ import annotations

import io
import wave
from dataclasses import dataclass

import numpy as np

from slakit.timebase import TimeSpan


class MediaError(Exception):
    """Base for audio failures."""


class MediaDecodeError(MediaError):
    """Unsupported codec or damaged container."""


class MediaRangeError(MediaError):
    """A span or index fell outside the media."""


@dataclass(frozen=True, eq=False)
class PcmAudio:
    """Mono normalized audio; the sample buffer is read-only."""

    sample_rate: int
    samples: np.ndarray

    def __post_init__(self) -> None:
        if self.sample_rate <= 0:
            raise MediaDecodeError(f"bad sample rate {self.sample_rate}")
        samples = np.asarray(self.samples, dtype=np.float32)
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)

    @property
    def duration_ms(self) -> int:
        return (1000 * len(self.samples)) // self.sample_rate

    def __len__(self) -> int:
        return len(self.samples)


@dataclass(frozen=True, eq=False)
class Excerpt:
    """A sample-aligned slice carrying the span it was cut from."""

    span: TimeSpan
    audio: PcmAudio


def decode_wav(data: bytes) -> PcmAudio:
    """Decode a RIFF/WAVE container (PCM, 8- or 16-bit, 1-2 channels).

    Raises MediaDecodeError for compressed/other codecs and truncated files.
    """
    try:
        with wave.open(io.BytesIO(data), "rb") as wav:
            channels = wav.getnchannels()
            width = wav.getsampwidth()
            rate = wav.getframerate()
            nframes = wav.getnframes()
            if wav.getcomptype() != "NONE":
                raise MediaDecodeError(f"unsupported compression {wav.getcomptype()!r}")
            raw = wav.readframes(nframes)
    except wave.Error as exc:
        raise MediaDecodeError(f"not a decodable WAV container: {exc}") from exc
    except EOFError as exc:
        raise MediaDecodeError("truncated WAV container") from exc

    if channels not in (1, 2):
        raise MediaDecodeError(f"unsupported channel count {channels}")
    if width not in (1, 2):
        raise MediaDecodeError(f"unsupported sample width {8 * width} bits")
    if len(raw) < nframes * channels * width:
        raise MediaDecodeError("truncated WAV container: fewer frames than declared")

    if width == 2:
        ints = np.frombuffer(raw, dtype="<i2")
        samples = ints.astype(np.float32) / np.float32(32768.0)
    else:
        ints = np.frombuffer(raw, dtype=np.uint8)
        samples = (ints.astype(np.float32) - np.float32(128.0)) / np.float32(128.0)

    if channels == 2:
        pair = samples.reshape(-1, 2)
        samples = (pair[:, 0] + pair[:, 1]) * np.float32(0.5)

    return PcmAudio(sample_rate=rate, samples=samples)


def encode_wav(pcm: PcmAudio) -> bytes:
    """Encode mono 16-bit PCM; inverse of decode_wav up to quantization."""
    clipped = np.clip(pcm.samples, -1.0, 1.0)
    ints = np.round(clipped.astype(np.float64) * 32768.0).clip(-32768, 32767).astype("<i2")
    buf = io.BytesIO()
    with wave.open(buf, "wb") as wav:
        wav.setnchannels(1)
        wav.setsampwidth(2)
        wav.setframerate(pcm.sample_rate)
        wav.writeframes(ints.tobytes())
    return buf.getvalue()


def excerpt(pcm: PcmAudio, span: TimeSpan) -> Excerpt:
    """Cut the sample range [floor(start*rate/1000), floor(end*rate/1000)).

    The span registers the excerpt's position in the observational record;
    concatenating excerpts over a partition of the whole duration reproduces
    the sample sequence exactly.
    """
    if span.end_ms > pcm.duration_ms:
        raise MediaRangeError(
            f"span {span.as_token()} exceeds media duration {pcm.duration_ms} ms"
        )
    start = (span.start_ms * pcm.sample_rate) // 1000
    end = (span.end_ms * pcm.sample_rate) // 1000
    return Excerpt(span=span, audio=PcmAudio(pcm.sample_rate, pcm.samples[start:end]))
