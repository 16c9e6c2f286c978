"""spfk: estimate how many clusters a time-series dataset contains.

Series are SAX-encoded into symbolic documents, clustered for each
candidate k with a symbolic pattern forest, and scored with the silhouette
coefficient on bag-of-words, tf-idf, or raw-series vectors; the k with the
best score wins.
"""

from .dataset import (
    Dataset,
    DatasetError,
    Subsequence,
    TimeSeries,
    load_ucr,
    save_ucr,
    subsequences,
    znormalize,
)
from .fixtures import (
    TABLE_IDS,
    BenchmarkRow,
    SyntheticSpec,
    generate_synthetic,
    load_fixture,
)
from .forest import (
    Partition,
    PresenceMatrix,
    SpfParams,
    SymbolicPatternForest,
    co_association,
    grow_tree,
    presence_matrix,
    spf_cluster,
)
from .plots import comparison_plot_svg, silhouette_plot_svg
from .sax import (
    SaxDocument,
    SaxParams,
    breakpoints,
    decode_word,
    paa,
    sax_document,
    sax_word,
)
from .selection import (
    ClusterCountSelector,
    SelectionReport,
    SweepCell,
    SweepGrid,
    report_to_csv,
    report_to_json,
    run_benchmark_modes,
    run_sweep,
    summarize,
    sweep_params,
    verdict,
)
from .validity import SilhouetteReport, euclidean_distances, silhouette
from .vectorize import (
    FeatureMatrix,
    FrequencyFilter,
    SaxBagOfWords,
    SaxTfidf,
    Vocabulary,
    bow_matrix,
    build_vocabulary,
    tfidf_matrix,
    write_feature_csv,
)

__version__ = "0.1.0"

__all__ = [
    "BenchmarkRow",
    "ClusterCountSelector",
    "Dataset",
    "DatasetError",
    "FeatureMatrix",
    "FrequencyFilter",
    "Partition",
    "PresenceMatrix",
    "SaxBagOfWords",
    "SaxDocument",
    "SaxParams",
    "SaxTfidf",
    "SelectionReport",
    "SilhouetteReport",
    "SpfParams",
    "Subsequence",
    "SweepCell",
    "SweepGrid",
    "SymbolicPatternForest",
    "SyntheticSpec",
    "TABLE_IDS",
    "TimeSeries",
    "Vocabulary",
    "bow_matrix",
    "breakpoints",
    "build_vocabulary",
    "co_association",
    "comparison_plot_svg",
    "decode_word",
    "euclidean_distances",
    "generate_synthetic",
    "grow_tree",
    "load_fixture",
    "load_ucr",
    "paa",
    "presence_matrix",
    "report_to_csv",
    "report_to_json",
    "run_benchmark_modes",
    "run_sweep",
    "save_ucr",
    "sax_document",
    "sax_word",
    "silhouette",
    "silhouette_plot_svg",
    "spf_cluster",
    "subsequences",
    "summarize",
    "sweep_params",
    "verdict",
    "write_feature_csv",
    "znormalize",
]
