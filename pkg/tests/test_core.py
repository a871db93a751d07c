import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kradius.core import (
    InvalidInput,
    Sequence,
    format_json,
    format_text,
    pair_gap,
    parse_sequence,
    verify,
)

from conftest import EXAMPLE_9
from oracles import naive_covered, naive_min_gap


def test_known_example_is_2_radius():
    rep = verify(Sequence.of(EXAMPLE_9, 9, 2))
    assert rep.is_k_radius
    assert rep.covered_pairs == rep.total_pairs == 36
    assert rep.uncovered_witnesses == ()


def test_short_run_misses_endpoints():
    rep = verify(Sequence.of([0, 1, 2, 3], 4, 2))
    assert not rep.is_k_radius
    assert rep.uncovered_witnesses == ((0, 3),)
    assert rep.covered_pairs == 5


def test_p2_special_sequence():
    assert verify(Sequence.of([0, 1, 2, 3, 0], 4, 2)).is_k_radius


def test_radius_override():
    seq = Sequence.of([0, 1, 2, 3], 4, 2)
    assert verify(seq, k=3).is_k_radius


def test_malformed_symbol_names_index():
    with pytest.raises(InvalidInput, match="index 2"):
        verify(Sequence.of([0, 1, 9, 2], 4, 1))


def test_witnesses_truncate():
    n = 30
    rep = verify(Sequence.of(range(n), n, 1))
    assert len(rep.uncovered_witnesses) == 100
    assert rep.truncated
    assert rep.covered_pairs == n - 1


def test_empty_and_tiny_alphabets():
    assert verify(Sequence.of([], 0, 1)).is_k_radius
    assert verify(Sequence.of([0], 1, 1)).is_k_radius
    assert not verify(Sequence.of([], 2, 1)).is_k_radius


def test_pair_gap_examples():
    seq = Sequence.of(EXAMPLE_9, 9, 2)
    assert pair_gap(seq, 0, 1) == 1
    assert pair_gap(Sequence.of([0, 1, 2, 3], 4, 2), 0, 3) == 3
    assert pair_gap(Sequence.of([0, 1, 2], 4, 2), 0, 3) is None


def test_pair_gap_rejects_equal_symbols():
    with pytest.raises(InvalidInput):
        pair_gap(Sequence.of([0, 1], 2, 1), 1, 1)


seqs = st.integers(min_value=1, max_value=8).flatmap(
    lambda n: st.tuples(
        st.just(n),
        st.integers(min_value=1, max_value=5),
        st.lists(st.integers(min_value=0, max_value=n - 1), max_size=50),
    )
)


@given(seqs)
@settings(max_examples=300)
def test_verify_matches_naive_oracle(case):
    n, k, symbols = case
    rep = verify(Sequence.of(symbols, n, k))
    want = naive_covered(symbols, n, k)
    assert rep.covered_pairs == len(want)
    missing = {(a, b) for a in range(n) for b in range(a + 1, n)} - want
    assert set(rep.uncovered_witnesses) == missing
    assert rep.is_k_radius == (not missing)


@given(seqs)
def test_reversal_gives_same_report(case):
    n, k, symbols = case
    fwd = verify(Sequence.of(symbols, n, k))
    rev = verify(Sequence.of(symbols[::-1], n, k))
    assert fwd == rev


@given(seqs, st.lists(st.integers(min_value=0, max_value=7), max_size=10))
def test_appending_never_loses_pairs(case, extra):
    n, k, symbols = case
    extra = [x % n for x in extra]
    before = verify(Sequence.of(symbols, n, k)).covered_pairs
    after = verify(Sequence.of(symbols + extra, n, k)).covered_pairs
    assert after >= before


@given(st.permutations(list(range(9))), st.integers(min_value=1, max_value=10))
def test_permutation_is_k_radius_iff_alphabet_fits_window(perm, k):
    assert verify(Sequence.of(perm, 9, k)).is_k_radius == (9 <= k + 1)


@given(seqs, st.data())
def test_pair_gap_agrees_with_naive_and_verify(case, data):
    n, k, symbols = case
    if n < 2:
        return
    a = data.draw(st.integers(0, n - 1))
    b = data.draw(st.integers(0, n - 1).filter(lambda x: x != a))
    seq = Sequence.of(symbols, n, k)
    gap = pair_gap(seq, a, b)
    assert gap == naive_min_gap(symbols, a, b)
    covered = (min(a, b), max(a, b)) not in verify(seq).uncovered_witnesses
    assert covered == (gap is not None and gap <= k)


def test_verify_handles_chunk_boundaries(monkeypatch):
    import kradius.core as core

    rng = np.random.default_rng(7)
    symbols = rng.integers(0, 12, size=500).tolist()
    whole = verify(Sequence.of(symbols, 12, 3))
    monkeypatch.setattr(core, "_CHUNK", 7)
    assert verify(Sequence.of(symbols, 12, 3)) == whole


def test_sequence_is_immutable():
    seq = Sequence.of([0, 1, 2], 3, 1)
    with pytest.raises(ValueError):
        seq.symbols[0] = 2


def test_text_round_trip():
    seq = Sequence.of(EXAMPLE_9, 9, 2)
    text = format_text(seq)
    assert text.splitlines()[0] == "# n=9 k=2"
    assert parse_sequence(text) == seq


def test_json_round_trip():
    seq = Sequence.of(EXAMPLE_9, 9, 2)
    doc = json.loads(format_json(seq))
    assert doc["length"] == 21
    assert parse_sequence(format_json(seq)) == seq


def test_parse_underlined_labels():
    seq = parse_sequence("# n=4 k=2\n0\n1\n_0\n_1\n0\n")
    assert seq.tolist() == [0, 1, 2, 3, 0]


@pytest.mark.parametrize(
    "text",
    ["0\n1\n", "# n=4\n0\n", "# n=4 k=2\nfoo\n", '{"n": 3}', "# n=x k=2\n"],
)
def test_parse_errors(text):
    with pytest.raises(InvalidInput):
        parse_sequence(text)
