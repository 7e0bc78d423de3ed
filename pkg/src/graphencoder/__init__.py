"""Graph encoder embedding for general graphs."""

__version__ = "0.1.0"

from .encoder import (
    EmptyClassError,
    EncodeOptions,
    build_onehot,
    encode,
    encode_dense,
    encode_oracle,
    encode_sparse,
    normalize_rows,
)
from .evaluation import CVResult, FoldPlan, cv_error, holdout_error, kfold_split, repeat_cv
from .graph import (
    EncoderEmbedding,
    GeneralGraph,
    LabelVector,
    as_labels,
    class_counts,
    densify,
    sparsify,
)
from .models import LdaModel, knn_predict, knn_predict_many, lda_fit, lda_predict
from .pairwise import KernelSpec, kappa, pairwise_graph, pairwise_matrix
from .synth import (
    DEFAULT_B,
    GaussianMixSpec,
    SbmSpec,
    balanced_labels,
    gen_dcsbm,
    gen_gaussian_mixture,
    gen_labels,
    gen_rdpg,
    gen_sbm,
    gen_sparse_sbm,
    gen_weighted_sbm,
)

__all__ = [name for name in dir() if not name.startswith("_")]
