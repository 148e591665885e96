"""Builders for synthetic corpora, n-best lists and scored groups."""

from __future__ import annotations

import random

from refdistill.corpus_io import HypothesisEntry, ParallelCorpus, SentenceGroup
from refdistill.metrics import MetricVector, ScoredGroup

# Small value pools so that ties and threshold boundaries occur often.
VALUE_POOLS = {
    "bleu": [0.0, 30.0, 55.0, 60.0, 65.0, 80.0, 100.0],
    "chrf": [0.2, 0.5, 0.8, 0.81, 0.82, 0.9, 1.0],
    "ter_neg": [-1.0, -0.8, -0.5, -0.25, -0.24, -0.2, 0.0],
    "sp_neg": [-3.0, -2.0, -1.0, 0.0],
    "score": [-0.5, -0.11, -0.1, -0.09, -0.08, -0.01],
}


def scored_group(group_id, source, reference, rows) -> ScoredGroup:
    """rows: (text, bleu, chrf, ter_neg, sp_neg, score) per hypothesis, in beam order."""
    hyps = tuple(
        HypothesisEntry(text, score * max(1, len(text.split())), score, i)
        for i, (text, *_, score) in enumerate(rows)
    )
    vectors = tuple(MetricVector(*row[1:]) for row in rows)
    return ScoredGroup(SentenceGroup(group_id, source, reference, hyps), vectors)


def random_fixture(rng: random.Random, max_groups=4, max_hyps=4, min_hyps=1, vocab=None):
    """Random scored groups plus the matching original corpus.

    Hypothesis texts come from a tiny vocabulary so duplicates (within and
    across groups) are common; sources occasionally repeat too.
    """
    vocab = vocab or ["a", "b", "c", "a b", "b c"]
    n_groups = rng.randint(1, max_groups)
    sources = [rng.choice(["s0", "s1", "s2", "s3", "s4", "s5"]) for _ in range(n_groups)]
    refs = [f"ref {i}" for i in range(n_groups)]
    groups = []
    for gi in range(n_groups):
        rows = []
        for _ in range(rng.randint(min_hyps, max_hyps)):
            rows.append((
                rng.choice(vocab),
                *(rng.choice(VALUE_POOLS[f]) for f in ("bleu", "chrf", "ter_neg", "sp_neg")),
                rng.choice(VALUE_POOLS["score"]),
            ))
        groups.append(scored_group(gi, sources[gi], refs[gi], rows))
    return groups, ParallelCorpus(tuple(sources), tuple(refs))


WORDS = ("the commission has adopted a new proposal on energy policy for member states "
         "and we must ensure that this report is voted in parliament today . , however "
         "european council citizens rights important question").split()


def synthetic_corpus(n_groups: int, beam: int = 12, seed: int = 0, min_len=4, max_len=12):
    """Deterministic (corpus, n-best lines) with hypotheses that perturb the reference."""
    rng = random.Random(seed)
    sources, refs, lines = [], [], []
    for gi in range(n_groups):
        ref = [rng.choice(WORDS) for _ in range(rng.randint(min_len, max_len))]
        sources.append(f"src {gi} " + " ".join(rng.sample(WORDS, 3)))
        refs.append(" ".join(ref))
        for _ in range(beam):
            hyp = list(ref)
            for _ in range(rng.randint(0, 3)):
                r = rng.random()
                if r < 0.4 and hyp:
                    hyp[rng.randrange(len(hyp))] = rng.choice(WORDS)
                elif r < 0.6 and len(hyp) > 1:
                    del hyp[rng.randrange(len(hyp))]
                elif r < 0.8:
                    hyp.insert(rng.randint(0, len(hyp)), rng.choice(WORDS))
                elif len(hyp) > 2:
                    i = rng.randrange(len(hyp) - 1)
                    hyp[i], hyp[i + 1] = hyp[i + 1], hyp[i]
            logprob = -round(rng.uniform(0.5, 2.0) * len(hyp), 4)
            lines.append(f"{gi} ||| {' '.join(hyp)} ||| F0= {logprob} ||| {logprob}")
    return ParallelCorpus(tuple(sources), tuple(refs)), lines


def write_inputs(tmp_path, corpus: ParallelCorpus, nbest_lines, stem="data"):
    src = tmp_path / f"{stem}.src"
    ref = tmp_path / f"{stem}.ref"
    nbest = tmp_path / f"{stem}.nbest"
    src.write_text("".join(s + "\n" for s in corpus.sources), encoding="utf-8")
    ref.write_text("".join(r + "\n" for r in corpus.references), encoding="utf-8")
    nbest.write_text("".join(line + "\n" for line in nbest_lines), encoding="utf-8")
    return src, ref, nbest
