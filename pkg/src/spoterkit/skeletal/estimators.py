"""Pose-estimator adapters and video landmark extraction.

An adapter owns its LandmarkMap and processes decoded frames one at a time.
Adapters are stateful: treat them as one-instance-per-worker unless their
docstring declares reentrancy.  Everything downstream of the adapter is pure.
"""

from __future__ import annotations

from pathlib import Path
from typing import Protocol, runtime_checkable

from ..errors import EstimatorUnavailableError, VideoDecodeError
from .convert import RawEstimatorFrame, convert_sequence
from .landmark_map import LandmarkMap, default_mediapipe_map
from .schema import PoseSequence


@runtime_checkable
class EstimatorAdapter(Protocol):
    name: str
    version: str
    landmark_map: LandmarkMap

    def process_frame(self, frame_rgb) -> RawEstimatorFrame:
        """Run pose estimation on one RGB frame (H, W, 3 uint8 array)."""
        ...


def decode_video(video_path: str | Path) -> tuple[list, float]:
    """Decode all frames of a video as RGB arrays; returns (frames, fps)."""
    try:
        import cv2
    except ImportError as exc:
        raise EstimatorUnavailableError(
            "opencv is required for video decoding (pip install spoterkit[video])"
        ) from exc
    path = Path(video_path)
    if not path.exists():
        raise VideoDecodeError(f"{path}: no such file")
    capture = cv2.VideoCapture(str(path))
    if not capture.isOpened():
        raise VideoDecodeError(f"{path}: could not open video")
    fps = capture.get(cv2.CAP_PROP_FPS) or 25.0
    frames = []
    while True:
        ok, frame_bgr = capture.read()
        if not ok:
            break
        frames.append(cv2.cvtColor(frame_bgr, cv2.COLOR_BGR2RGB))
    capture.release()
    if not frames:
        raise VideoDecodeError(f"{path}: no frames decoded")
    return frames, float(fps)


def extract_landmarks(
    video_path: str | Path,
    estimator: EstimatorAdapter,
    label: str | None = None,
    source_id: str | None = None,
) -> PoseSequence:
    """Decode a video, run the estimator per frame, and canonicalize.

    The output frame count equals the decoded frame count; frames where the
    estimator detects nothing become all-absent sentinel frames.
    """
    frames_rgb, fps = decode_video(video_path)
    raw_frames = [estimator.process_frame(f) for f in frames_rgb]
    sid = source_id if source_id is not None else Path(video_path).stem
    return convert_sequence(raw_frames, fps, estimator.landmark_map, label=label, source_id=sid)


class MediaPipeHolisticAdapter:
    """Whole-body adapter backed by MediaPipe holistic (33-point body, 21-point hands).

    Not reentrant: the underlying graph keeps tracking state, so use one
    adapter instance per worker.
    """

    name = "mediapipe-holistic"

    def __init__(self, landmark_map: LandmarkMap | None = None):
        try:
            import mediapipe as mp
        except ImportError as exc:
            raise EstimatorUnavailableError(
                "mediapipe is not installed (pip install spoterkit[mediapipe])"
            ) from exc
        self._mp = mp
        self.version = getattr(mp, "__version__", "unknown")
        self.landmark_map = landmark_map or default_mediapipe_map()
        self._holistic = mp.solutions.holistic.Holistic(
            static_image_mode=False,
            model_complexity=1,
            min_detection_confidence=0.5,
            min_tracking_confidence=0.5,
        )

    def process_frame(self, frame_rgb) -> RawEstimatorFrame:
        results = self._holistic.process(frame_rgb)

        def points(landmarks):
            if landmarks is None:
                return None
            return [(lm.x, lm.y) for lm in landmarks.landmark]

        return RawEstimatorFrame(
            body=points(results.pose_landmarks),
            left_hand=points(results.left_hand_landmarks),
            right_hand=points(results.right_hand_landmarks),
        )

    def close(self) -> None:
        self._holistic.close()
