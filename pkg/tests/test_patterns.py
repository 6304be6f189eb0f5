import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import P, P0, P00, P1, P2, coherent_relations, pattern_at, random_mss
from tpmine.model import State, Symbol
from tpmine.oracle import contains
from tpmine.patterns import (
    TemporalPattern,
    chain_length,
    create_candidates,
    drop_state,
    exposure,
    is_coherent,
    parent,
    parse_key,
    pattern_key,
    rel_index,
    subpatterns,
)

STATES = [State(v, s) for v in ("A", "B") for s in (Symbol.LOW, Symbol.NORMAL, Symbol.HIGH)]


@st.composite
def patterns(draw, max_k=6):
    k = draw(st.integers(1, max_k))
    states = draw(st.lists(st.sampled_from(STATES), min_size=k, max_size=k))
    rows = [draw(st.integers(0, k - 1 - i)) for i in range(k - 1)]
    rels = "".join("c" * a + "b" * (k - 1 - i - a) for i, a in enumerate(rows))
    return TemporalPattern(states, rels)


class TestConstruction:
    def test_key_of_worked_example(self):
        assert pattern_key(P) == "<HR=N,BP=N,HR=L|cbc>"
        assert P.rel(0, 1) == "c" and P.rel(0, 2) == "b" and P.rel(1, 2) == "c"

    def test_wrong_relation_count(self):
        with pytest.raises(ValueError, match="needs 3 relations"):
            TemporalPattern([("A", "L")] * 3, "cb")

    def test_incoherent(self):
        with pytest.raises(ValueError, match="incoherent"):
            TemporalPattern([("A", "L")] * 3, "bcc")

    def test_bad_relation_letter(self):
        with pytest.raises(ValueError, match="'b'/'c'"):
            TemporalPattern([("A", "L")] * 2, "x")

    def test_empty(self):
        with pytest.raises(ValueError):
            TemporalPattern([], "")

    def test_value_equality_and_hash(self):
        q = TemporalPattern([("HR", "N"), ("BP", "N"), ("HR", "L")], "cbc")
        assert q == P and hash(q) == hash(P)
        assert q != P1

    def test_immutable(self):
        with pytest.raises(AttributeError):
            P.relations = "ccc"

    def test_rel_index_row_major(self):
        k = 4
        order = [(i, j) for i in range(k) for j in range(i + 1, k)]
        assert [rel_index(i, j, k) for i, j in order] == list(range(6))

    @pytest.mark.parametrize("key", ["<A=L|x>", "A=L|", "<A|>", "<=L|>", "<A=Q|>", "<A=L,B=N|>"])
    def test_parse_key_errors(self, key):
        with pytest.raises(ValueError):
            parse_key(key)


class TestDropState:
    def test_drop_last(self):
        assert drop_state(P, 2) == P1

    def test_drop_middle(self):
        assert drop_state(P, 1) == P2

    def test_drop_first_is_parent(self):
        assert drop_state(P, 0) == P0 == parent(P)

    def test_parent_chain(self):
        assert parent(P0) == P00
        assert parent(parse_key("<A=L,B=L|b>")) == parse_key("<B=L|>")

    def test_size_one(self):
        with pytest.raises(ValueError):
            drop_state(P00, 0)
        with pytest.raises(ValueError):
            parent(P00)
        with pytest.raises(ValueError):
            subpatterns(P00)

    def test_index_range(self):
        with pytest.raises(IndexError):
            drop_state(P, 3)

    def test_subpatterns_of_worked_example(self):
        assert subpatterns(P) == [P0, P2, P1]

    def test_subpatterns_keep_duplicates(self):
        p = parse_key("<A=L,A=L,A=L|bbb>")
        assert subpatterns(p) == [parse_key("<A=L,A=L|b>")] * 3

    def test_subpatterns_size_two(self):
        p = parse_key("<A=L,B=N|c>")
        assert subpatterns(p) == [parse_key("<B=N|>"), parse_key("<A=L|>")]

    @given(patterns(), st.data())
    @settings(max_examples=300, deadline=None)
    def test_drop_commutes(self, p, data):
        k = len(p)
        if k < 3:
            return
        j = data.draw(st.integers(0, k - 1))
        i = data.draw(st.integers(0, k - 2))
        # drop j then i (in the shorter pattern) equals dropping the same two
        # original states in the other order
        a = drop_state(drop_state(p, j), i)
        orig_i = i if i < j else i + 1
        b = drop_state(drop_state(p, orig_i), j if j < orig_i else j - 1)
        assert a == b

    @given(patterns())
    @settings(max_examples=300, deadline=None)
    def test_drop_keeps_coherence(self, p):
        for q in subpatterns(p) if len(p) > 1 else []:
            assert is_coherent(q.relations, len(q))


class TestChain:
    def test_leading_chain(self):
        p = parse_key("<A=L,B=L,C=L|bbc>")
        assert chain_length(p) == 1 and exposure(p) == 2

    def test_worked_example(self):
        assert chain_length(P) == 3 and exposure(P) == 3

    def test_size_one(self):
        assert chain_length(P00) == 1 and exposure(P00) == 1

    def test_all_before(self):
        p = parse_key("<A=L,B=L,C=L|bbb>")
        assert chain_length(p) == 1 and exposure(p) == 2

    def test_second_state_chain(self):
        p = parse_key("<A=L,B=L,C=L,D=L|cbbbbb>")
        assert chain_length(p) == 2 and exposure(p) == 3

    @given(patterns())
    @settings(max_examples=300, deadline=None)
    def test_chain_definition(self, p):
        k = len(p)
        c = chain_length(p)
        assert all(p.rel(i, j) == "b" for i in range(c) for j in range(c, k))
        for smaller in range(1, c):
            assert not all(p.rel(i, j) == "b" for i in range(smaller) for j in range(smaller, k))
        assert exposure(p) == (c + 1 if c < k else k)


class TestCandidates:
    def test_size_one_parent(self):
        s = parse_key("<HR=N|>")
        out = list(create_candidates([parse_key("<BP=L|>")], [s]))
        assert out == [parse_key("<HR=N,BP=L|b>"), parse_key("<HR=N,BP=L|c>")]

    def test_size_two_parent_skips_incoherent(self):
        out = list(create_candidates([parse_key("<B=L,C=L|c>")], [parse_key("<A=L|>")]))
        assert sorted(p.relations[:2] for p in out) == ["bb", "cb", "cc"]

    def test_worked_example_arises(self):
        out = list(create_candidates([P0], [parse_key("<HR=N|>")]))
        assert P in out

    def test_rejects_non_singletons(self):
        with pytest.raises(ValueError):
            list(create_candidates([P0], [P0]))

    @given(st.lists(patterns(max_k=4), min_size=1, max_size=4, unique=True),
           st.lists(st.sampled_from(STATES), min_size=1, max_size=3, unique=True))
    @settings(max_examples=200, deadline=None)
    def test_candidate_properties(self, ftps, singles):
        k = len(ftps[0])
        ftps = [p for p in ftps if len(p) == k]
        ones = [TemporalPattern([s], "") for s in singles]
        out = list(create_candidates(ftps, ones))
        assert len(out) == len(ftps) * len(ones) * (k + 1)
        assert len(set(out)) == len(out)
        for c in out:
            assert is_coherent(c.relations, k + 1)
            assert parent(c) in ftps


class TestKeys:
    @given(patterns())
    @settings(max_examples=500, deadline=None)
    def test_round_trip(self, p):
        assert parse_key(pattern_key(p)) == p

    def test_all_coherent_rows_counted(self):
        # row i of a coherent matrix is c^a b^(k-1-i-a): k - i choices
        assert len(list(coherent_relations(4))) == 4 * 3 * 2


class TestInheritance:
    def test_subpatterns_of_contained_pattern_are_contained(self):
        rng = random.Random(11)
        for _ in range(300):
            z = random_mss(rng, rng.randint(2, 12))
            k = rng.randint(2, min(5, len(z)))
            combo = sorted(rng.sample(range(len(z)), k))
            p = pattern_at(z, combo)
            assert is_coherent(p.relations, k)
            assert contains(z, p)
            for q in subpatterns(p):
                assert contains(z, q)
