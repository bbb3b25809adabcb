"""qadlab: resonance-channel diffusion in driven coupled quartic oscillators."""

__version__ = "0.1.0"

from .constants import QuarticConstants, classical_constants

__all__ = ["QuarticConstants", "classical_constants", "__version__"]
