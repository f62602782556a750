"""Audio substrate: WAV decoding, waveform peak pyramids, loop playback.

Peaks are float32 (min, max) pairs in a pyramid whose level-k bucket covers
``base_bucket * 2**k`` samples; the pyramid persists in a bit-exact binary
sidecar so the waveform renders instantly on every load after the first.
"""

from slakit.media.pcm import (
    Excerpt,
    MediaDecodeError,
    MediaError,
    MediaRangeError,
    PcmAudio,
    decode_wav,
    encode_wav,
    excerpt,
)
from slakit.media.waveform import (
    SIDECAR_MAGIC,
    SidecarFormatError,
    UnknownLevelError,
    WaveformCache,
    build_waveform_cache,
    decode_sidecar,
    encode_sidecar,
    pyramid_level_count,
    query_peaks,
)
from slakit.media.loop import (
    LoopAtEndError,
    LoopInvariantError,
    LoopState,
    advance_loop,
    create_loop,
    set_loop,
)

__all__ = [
    "Excerpt",
    "MediaDecodeError",
    "MediaError",
    "MediaRangeError",
    "PcmAudio",
    "decode_wav",
    "encode_wav",
    "excerpt",
    "SIDECAR_MAGIC",
    "SidecarFormatError",
    "UnknownLevelError",
    "WaveformCache",
    "build_waveform_cache",
    "decode_sidecar",
    "encode_sidecar",
    "pyramid_level_count",
    "query_peaks",
    "LoopAtEndError",
    "LoopInvariantError",
    "LoopState",
    "advance_loop",
    "create_loop",
    "set_loop",
]
