"""Graph-based salient object detection.

Superpixel graph construction, scatter-based background seeding,
shortest-path confidence maps, min-cut foreground extraction, and a gated
manifold-ranking refinement, plus the benchmark metric suite and a batch
CLI (``saliency``).
"""

from .config import PipelineConfig
from .pipeline import PipelineResult, run_pipeline
from .kernels import USING_NATIVE

__all__ = ["PipelineConfig", "PipelineResult", "run_pipeline", "USING_NATIVE"]
__version__ = "0.1.0"
