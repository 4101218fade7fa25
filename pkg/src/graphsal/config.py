"""Pipeline configuration and its flat key=value file format."""

import dataclasses
from dataclasses import dataclass

EDGE_WEIGHT_MODES = ("color", "color_spatial", "full")
SEED_MODES = ("all_border", "filtered")
REFINE_MODES = ("none", "mr_only", "midlevel_only", "gate_only", "full")
LAPLACIAN_MODES = ("normalized", "unnormalized")


@dataclass
class PipelineConfig:
    n_superpixels: int = 250
    slic_compactness: float = 10.0
    affinity_sigma: float = 0.1
    spatial_attenuation: float = 0.01
    border_edge_mix: float = 0.5
    rarity_color_thresh: float = 0.15
    integration_strength: float = 4.0
    emr_fit_weight: float = 0.01
    cluster_merge_thresh: float = 0.1
    area_sweep_max: float = 4.0
    area_sweep_min: float = -16.0
    area_sweep_steps: int = 32
    edge_weights: str = "full"
    seeds: str = "filtered"
    refine: str = "full"
    laplacian: str = "unnormalized"

    def __post_init__(self):
        self.validate()

    def validate(self):
        positive = (
            "n_superpixels",
            "slic_compactness",
            "affinity_sigma",
            "spatial_attenuation",
            "rarity_color_thresh",
            "integration_strength",
            "emr_fit_weight",
            "cluster_merge_thresh",
            "area_sweep_steps",
        )
        for name in positive:
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if not 0.0 <= self.border_edge_mix <= 1.0:
            raise ValueError("border_edge_mix must lie in [0, 1]")
        if self.area_sweep_max < self.area_sweep_min:
            raise ValueError("area_sweep_max must be >= area_sweep_min")
        checks = (
            ("edge_weights", EDGE_WEIGHT_MODES),
            ("seeds", SEED_MODES),
            ("refine", REFINE_MODES),
            ("laplacian", LAPLACIAN_MODES),
        )
        for name, allowed in checks:
            if getattr(self, name) not in allowed:
                raise ValueError(f"{name} must be one of {allowed}")


def save_config(cfg, path):
    lines = [f"{f.name}={getattr(cfg, f.name)}" for f in dataclasses.fields(cfg)]
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def load_config(path, base=None):
    """Read key=value lines into a PipelineConfig; '#' starts a comment."""
    values = dataclasses.asdict(base) if base is not None else {}
    fields = {f.name: f for f in dataclasses.fields(PipelineConfig)}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value")
            key, raw = (part.strip() for part in line.split("=", 1))
            if key not in fields:
                raise ValueError(f"{path}:{lineno}: unknown config key {key!r}")
            ftype = fields[key].type
            try:
                if ftype in (int, "int"):
                    values[key] = int(raw)
                elif ftype in (float, "float"):
                    values[key] = float(raw)
                else:
                    values[key] = raw
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: bad value for {key}: {raw!r}") from exc
    return PipelineConfig(**values)
