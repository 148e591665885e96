import itertools
import random

from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_force_ter_edits, legal_shifts, levenshtein
from refdistill.metrics.ter import apply_shift, ter_edits

tokens = st.lists(st.sampled_from(list("abcde")), max_size=20)


def test_apply_shift():
    assert apply_shift(list("abcde"), 0, 1, 3) == list("bcade")
    assert apply_shift(list("abcde"), 3, 2, 0) == list("deabc")


def test_single_shift_beats_two_edits():
    assert ter_edits("d a b c".split(), "a b c d".split()) == (1, 4)


def test_no_shift_without_gain():
    assert ter_edits("a b c".split(), "a b c".split()) == (0, 3)
    assert ter_edits("x y".split(), "a b".split()) == (2, 2)


@settings(max_examples=300, deadline=None)
@given(tokens, tokens.filter(bool))
def test_bounded_by_levenshtein(hyp, ref):
    # shifts are only taken when they strictly lower the edit count
    edits, ref_len = ter_edits(hyp, ref)
    assert ref_len == len(ref)
    assert edits <= levenshtein(hyp, ref)


@settings(max_examples=150, deadline=None)
@given(st.lists(st.sampled_from(list("abcd")), max_size=6),
       st.lists(st.sampled_from(list("abcd")), min_size=1, max_size=5))
def test_never_below_brute_force_minimum(hyp, ref):
    # greedy search explores a subset of legal shift sequences
    edits, _ = ter_edits(hyp, ref)
    assert edits >= brute_force_ter_edits(hyp, ref)


def test_brute_force_oracle_examples():
    assert brute_force_ter_edits("d a b c".split(), "a b c d".split()) == 1
    assert brute_force_ter_edits([], "a b".split()) == 2
    assert levenshtein("kitten", "sitting") == 3


def test_legal_shifts_require_errors():
    assert legal_shifts(tuple("abc"), tuple("abc")) == set()
    assert ("a", "b", "c", "d") in legal_shifts(tuple("dabc"), tuple("abcd"))


def test_greedy_matches_brute_force_on_short_permutations():
    # up to four distinct tokens the greedy search is exact
    for n in range(1, 5):
        ref = [chr(97 + i) for i in range(n)]
        for perm in itertools.permutations(ref):
            for pos in range(n):
                hyp = list(perm)
                hyp[pos] = "zz"
                assert ter_edits(hyp, ref)[0] == brute_force_ter_edits(hyp, ref), (hyp, ref)


def test_known_greedy_suboptimal_case():
    # two shifts reach 3 edits; the first greedy shift leads elsewhere
    hyp, ref = "zz c e d b".split(), list("abcde")
    assert brute_force_ter_edits(hyp, ref) == 3
    assert ter_edits(hyp, ref)[0] == 4


def test_long_inputs_terminate():
    rng = random.Random(3)
    ref = [rng.choice("abcdefgh") for _ in range(60)]
    hyp = ref[::-1]
    edits, ref_len = ter_edits(hyp, ref)
    assert 0 < edits <= levenshtein(hyp, ref)
