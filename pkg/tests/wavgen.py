"""WAV fixture builders for media tests."""

from __future__ import annotations

import io
import wave

import numpy as np


def wav_bytes(samples: np.ndarray, rate: int, channels: int = 1, width: int = 2) -> bytes:
    """Pack int samples (already scaled for the width) into a RIFF container."""
    buf = io.BytesIO()
    with wave.open(buf, "wb") as wav:
        wav.setnchannels(channels)
        wav.setsampwidth(width)
        wav.setframerate(rate)
        if width == 2:
            data = samples.astype("<i2").tobytes()
        else:
            data = samples.astype(np.uint8).tobytes()
        wav.writeframes(data)
    return buf.getvalue()


def silence(rate: int = 8000, seconds: float = 1.0) -> bytes:
    n = int(rate * seconds)
    return wav_bytes(np.zeros(n, dtype=np.int16), rate)


def impulse(rate: int = 8000, n: int = 8000, at: int = 1234) -> bytes:
    samples = np.zeros(n, dtype=np.int16)
    samples[at] = 32767
    return wav_bytes(samples, rate)


def sine(freq: float = 440.0, rate: int = 44100, seconds: float = 2.0, amp: int = 32767) -> bytes:
    t = np.arange(int(rate * seconds)) / rate
    samples = np.round(np.sin(2 * np.pi * freq * t) * amp).astype(np.int16)
    return wav_bytes(samples, rate)


def white_noise(rate: int = 8000, seconds: float = 1.0, seed: int = 99) -> bytes:
    rng = np.random.default_rng(seed)
    samples = rng.integers(-32768, 32768, size=int(rate * seconds), dtype=np.int64)
    return wav_bytes(samples.astype(np.int16), rate)


def stereo_opposed(rate: int = 8000, n: int = 4000) -> bytes:
    """Constant (+0.5, -0.5) channel pair; the mono mix is exactly zero."""
    left = np.full(n, 16384, dtype=np.int16)
    right = np.full(n, -16384, dtype=np.int16)
    return wav_bytes(np.column_stack([left, right]).reshape(-1), rate, channels=2)
