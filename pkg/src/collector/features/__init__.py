from .pipeline import (
    SEGMENT_GAP_MS,
    BigraphFeature,
    KeystrokeSegment,
    MouseSpeedFeature,
    SpeedExtraction,
    SpeedStats,
    extract_bigraphs,
    is_letter_key,
    mouse_speeds,
    segment_keystrokes,
    speed_profile,
)
from .reports import (
    BIGRAPH_COLUMNS,
    MOUSE_SPEED_COLUMNS,
    bigraph_features,
    keystroke_feature_report,
    mouse_feature_report,
    render_bigraph_report,
    render_mouse_speed_report,
)

__all__ = [
    "SEGMENT_GAP_MS",
    "BigraphFeature",
    "KeystrokeSegment",
    "MouseSpeedFeature",
    "SpeedExtraction",
    "SpeedStats",
    "extract_bigraphs",
    "is_letter_key",
    "mouse_speeds",
    "segment_keystrokes",
    "speed_profile",
    "BIGRAPH_COLUMNS",
    "MOUSE_SPEED_COLUMNS",
    "bigraph_features",
    "keystroke_feature_report",
    "mouse_feature_report",
    "render_bigraph_report",
    "render_mouse_speed_report",
]
