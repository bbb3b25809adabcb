from . import cache, csvio, manifest

__all__ = ["cache", "csvio", "manifest"]
