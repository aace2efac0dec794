"""Linear-time density clustering of sorted 1D data and 2D scan segmentation."""

from .dbscan1d import (
    NOISE,
    NOT_VISITED,
    BorderPolicy,
    CircularDomain,
    Cluster1D,
    ClusterSequence,
    DbscanParams,
    DbscanScratch,
    NeighborhoodTable,
    OpCounters,
    UnsortedInputError,
    calculate_neighborhood,
    calculate_neighborhood_circular,
    dbscan_1d,
    dbscan_1d_circular,
    expand_cluster,
    recluster_subrange,
)
from .geometry import (
    DegenerateFitError,
    DegenerateLineError,
    GeneralLine,
    InsufficientDataError,
    OrientationUndefinedError,
    PolarLine,
    UndefinedMeanError,
    canonical_polar,
    circular_mean,
    estimate_local_angles,
    normalize_general_to_polar,
    signed_distance_to_origin_line,
    tls_fit,
    wrap_angle,
)
from .scan import Scan
from .scan_io import (
    NoiseModel,
    RoomModel,
    ScanFormatError,
    generate_scan,
    load_points,
    load_scan,
    save_points,
    save_scan,
)
from .segmentation import (
    FeatureCluster,
    SegmentationParams,
    angular_segmentation,
    fit_cluster_lines,
)

__version__ = "0.1.0"

__all__ = [
    "NOISE",
    "NOT_VISITED",
    "BorderPolicy",
    "CircularDomain",
    "Cluster1D",
    "ClusterSequence",
    "DbscanParams",
    "DbscanScratch",
    "NeighborhoodTable",
    "OpCounters",
    "UnsortedInputError",
    "calculate_neighborhood",
    "calculate_neighborhood_circular",
    "dbscan_1d",
    "dbscan_1d_circular",
    "expand_cluster",
    "recluster_subrange",
    "DegenerateFitError",
    "DegenerateLineError",
    "GeneralLine",
    "InsufficientDataError",
    "OrientationUndefinedError",
    "PolarLine",
    "UndefinedMeanError",
    "canonical_polar",
    "circular_mean",
    "estimate_local_angles",
    "normalize_general_to_polar",
    "signed_distance_to_origin_line",
    "tls_fit",
    "wrap_angle",
    "Scan",
    "NoiseModel",
    "RoomModel",
    "ScanFormatError",
    "generate_scan",
    "load_points",
    "load_scan",
    "save_points",
    "save_scan",
    "FeatureCluster",
    "SegmentationParams",
    "angular_segmentation",
    "fit_cluster_lines",
    "__version__",
]
