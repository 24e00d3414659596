from .app import DEFAULT_ALLOW_ORIGINS, DEFAULT_MAX_BODY_BYTES, DEFAULT_MAX_VIDEO_SECONDS, create_app

__all__ = [
    "DEFAULT_ALLOW_ORIGINS",
    "DEFAULT_MAX_BODY_BYTES",
    "DEFAULT_MAX_VIDEO_SECONDS",
    "create_app",
]
