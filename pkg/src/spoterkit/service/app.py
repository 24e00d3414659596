"""HTTP inference service: top-k gloss predictions for a signing clip.

Requests carry exactly one payload: a video file (multipart part ``video``)
or a landmark document in the canonical format.  Landmark requests work
without any pose-estimator backend; video requests return 503 when no
estimator is configured.  Responses report probabilities from the full-class
softmax plus extract/infer timings.

The checkpoint is loaded once and treated as immutable, so concurrent
requests are safe; the estimator adapter is the only guarded resource.
"""

from __future__ import annotations

import tempfile
import threading
import time
from pathlib import Path

from fastapi import FastAPI, HTTPException, Query, Request
from fastapi.middleware.cors import CORSMiddleware

from ..errors import EstimatorUnavailableError, FormatError, InvalidKError, VideoDecodeError
from ..model.checkpoint import Checkpoint
from ..model.metrics import predict_topk
from ..preprocess.normalize import normalize_sequence
from ..skeletal import io as skio
from ..skeletal.estimators import EstimatorAdapter, extract_landmarks

DEFAULT_MAX_BODY_BYTES = 50 * 1024 * 1024
DEFAULT_MAX_VIDEO_SECONDS = 15.0
DEFAULT_ALLOW_ORIGINS = (
    "http://localhost:3000",
    "http://localhost:5173",
    "http://localhost:8080",
    "http://127.0.0.1:3000",
    "http://127.0.0.1:5173",
    "http://127.0.0.1:8080",
)


def _error(status: int, message: str, field: str | None = None) -> HTTPException:
    detail: dict = {"message": message}
    if field is not None:
        detail["field"] = field
    return HTTPException(status_code=status, detail=detail)


def create_app(
    checkpoint: Checkpoint,
    estimator: EstimatorAdapter | None = None,
    *,
    allow_origins: tuple[str, ...] = DEFAULT_ALLOW_ORIGINS,
    max_body_bytes: int = DEFAULT_MAX_BODY_BYTES,
    max_video_seconds: float = DEFAULT_MAX_VIDEO_SECONDS,
) -> FastAPI:
    app = FastAPI(title="spoterkit inference service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(allow_origins),
        allow_methods=["*"],
        allow_headers=["*"],
    )

    model = checkpoint.build()
    vocabulary = checkpoint.vocabulary
    model_id = checkpoint.model_id
    # Most estimator backends keep tracking state: serialize access.
    estimator_lock = threading.Lock()

    @app.get("/api/health")
    def health() -> dict:
        return {"status": "ok", "model_id": model_id}

    @app.get("/api/classes")
    def classes() -> dict:
        return {"classes": list(vocabulary), "model_id": model_id}

    def _sequence_from_video(body: bytes, filename: str) -> tuple:
        if estimator is None:
            raise _error(503, "no pose estimator configured; send a landmark document instead")
        if not body:
            raise _error(400, "no frames decoded: empty video payload", field="video")
        suffix = Path(filename).suffix or ".mp4"
        started = time.perf_counter()
        with tempfile.NamedTemporaryFile(suffix=suffix) as tmp:
            tmp.write(body)
            tmp.flush()
            try:
                with estimator_lock:
                    seq = extract_landmarks(tmp.name, estimator, source_id="upload")
            except EstimatorUnavailableError as exc:
                raise _error(503, str(exc)) from exc
            except VideoDecodeError as exc:
                raise _error(400, f"no frames decoded: {exc}", field="video") from exc
        if seq.num_frames / seq.fps > max_video_seconds:
            raise _error(413, f"video longer than the {max_video_seconds:g}s cap", field="video")
        return seq, (time.perf_counter() - started) * 1000.0

    def _sequence_from_document(body: bytes) -> tuple:
        started = time.perf_counter()
        try:
            seq = skio.parse_sequence(body.decode("utf-8", errors="replace"), where="request body")
        except FormatError as exc:
            raise _error(400, str(exc), field="body") from exc
        return seq, (time.perf_counter() - started) * 1000.0

    @app.post("/api/predict")
    async def predict(request: Request, k: int = Query(default=5)) -> dict:
        body = await request.body()
        if len(body) > max_body_bytes:
            raise _error(413, f"payload exceeds the {max_body_bytes}-byte cap")
        if not 1 <= k <= len(vocabulary):
            raise _error(400, f"k must be in [1, {len(vocabulary)}], got {k}", field="k")

        content_type = request.headers.get("content-type", "")
        if content_type.startswith("multipart/form-data"):
            form = await request.form()
            upload = form.get("video")
            if upload is None or isinstance(upload, str):
                raise _error(400, "multipart request must carry a 'video' file part", field="video")
            seq, extract_ms = _sequence_from_video(await upload.read(), upload.filename or "")
        else:
            seq, extract_ms = _sequence_from_document(body)

        if not seq.present.any():
            raise _error(422, "zero frames with any detected landmarks")

        started = time.perf_counter()
        normalized, _ = normalize_sequence(seq)
        try:
            prediction = predict_topk(normalized, checkpoint, k=k, model=model)
        except InvalidKError as exc:
            raise _error(400, str(exc), field="k") from exc
        infer_ms = (time.perf_counter() - started) * 1000.0

        return {
            "predictions": [
                {"gloss": gloss, "probability": probability}
                for gloss, probability in prediction.items
            ],
            "model_id": model_id,
            "timing": {"extract_ms": extract_ms, "infer_ms": infer_ms},
        }

    return app
