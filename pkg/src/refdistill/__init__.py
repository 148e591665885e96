"""Reference-aware sampling of teacher n-best lists into distillation datasets."""

__version__ = "0.1.0"

from .corpus_io import (  # noqa: E402
    Dataset,
    HypothesisEntry,
    ParallelCorpus,
    SentenceGroup,
    emit_dataset,
    load_nbest,
    load_parallel,
    split_corpus,
)
from .dsl import expand_sum_metrics, parse, to_canonical  # noqa: E402
from .metrics import MetricKind, MetricVector, ScoredGroup, SubwordSegmenter, score_group  # noqa: E402
from .sampler import calibrate_threshold, eval_job, evaluate  # noqa: E402
from .stats import overlap, paired_ttest_centered, preserved_fraction, report, size_ratio  # noqa: E402
