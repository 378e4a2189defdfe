"""Vision front end: streaming AST corner detection with scored NMS,
a synchronized stereo+IMU simulator and DMA-style frame bundles."""

from ._core import (
    BUNDLE_HEADER_SIZE,
    BUNDLE_MAGIC,
    FEATURE_RECORD_SIZE,
    Corner,
    DetectorConfig,
    Frame,
    FramePair,
    ImuSample,
    OvcError,
    Polarity,
    RateReport,
    SensorId,
    SensorRig,
    SensorRigConfig,
    __version__,
    corner_score,
    decode_bundle,
    detect_corners,
    detect_corners_streaming,
    detect_frame,
    encode_bundle,
    frames_per_imu_window,
    make_config,
    oracle_detect,
    oracle_score_by_sweep,
    ring_offsets,
    segment_test,
    suppress_map,
    synth_image,
)

__all__ = [
    "BUNDLE_HEADER_SIZE",
    "BUNDLE_MAGIC",
    "FEATURE_RECORD_SIZE",
    "Corner",
    "DetectorConfig",
    "Frame",
    "FramePair",
    "ImuSample",
    "OvcError",
    "Polarity",
    "RateReport",
    "SensorId",
    "SensorRig",
    "SensorRigConfig",
    "__version__",
    "corner_score",
    "decode_bundle",
    "detect_corners",
    "detect_corners_streaming",
    "detect_frame",
    "encode_bundle",
    "frames_per_imu_window",
    "make_config",
    "oracle_detect",
    "oracle_score_by_sweep",
    "ring_offsets",
    "segment_test",
    "suppress_map",
    "synth_image",
]
