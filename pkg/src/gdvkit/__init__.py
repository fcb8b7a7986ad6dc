"""gdvkit: class separability via the generalized discrimination value.

Core entry points: :func:`gdv` scores a labeled point set, :func:`gdv_curve`
scores an ordered stack of layer activations, :func:`mds_project` gives 2-D
views, and the ``nets`` subpackage trains the small reference networks whose
layers the metric probes.
"""

from .dataset import LabeledDataset
from .metric import (
    GdvCurve,
    GdvReport,
    ScaledDataset,
    gdv,
    gdv_curve,
    mean_inter_class_distance,
    mean_intra_class_distance,
    z_score_half,
)
from .mds import Projection2D, mds_project
from .synthetic import (
    ClusterSpec,
    EnsembleConfig,
    EnsembleItem,
    embed_duplicate_y,
    embed_replicate,
    generate_clusters,
    generate_ensemble,
    two_cluster_separation_probe,
    two_cluster_spec,
)
from .transforms import (
    DeltaGdvStats,
    TransformSpec,
    apply_linear,
    apply_transform,
    delta_gdv_experiment,
    ensemble_gdv_values,
    histogram_total_variation,
)
from . import errors, io, nets

__version__ = "0.1.0"

__all__ = [
    "LabeledDataset",
    "GdvCurve",
    "GdvReport",
    "ScaledDataset",
    "gdv",
    "gdv_curve",
    "mean_inter_class_distance",
    "mean_intra_class_distance",
    "z_score_half",
    "Projection2D",
    "mds_project",
    "ClusterSpec",
    "EnsembleConfig",
    "EnsembleItem",
    "embed_duplicate_y",
    "embed_replicate",
    "generate_clusters",
    "generate_ensemble",
    "two_cluster_separation_probe",
    "two_cluster_spec",
    "DeltaGdvStats",
    "TransformSpec",
    "apply_linear",
    "apply_transform",
    "delta_gdv_experiment",
    "ensemble_gdv_values",
    "histogram_total_variation",
    "errors",
    "io",
    "nets",
    "__version__",
]
