import pytest

import splitsync

INTRO = """cnfa 3
sym a : 1,3 ; 2 ; 1
sym b : 2 ; 1 ; 2,3
"""


@pytest.fixture
def intro():
    return splitsync.parse(INTRO)


def test_parse_round_trip(intro):
    assert intro.n == 3
    assert intro.names == ["a", "b"]
    assert intro.symbols[0] == [[1, 3], [2], [1]]
    assert splitsync.parse(intro.to_text()) == intro


@pytest.mark.parametrize("engine", ["implicit", "split", "oracle"])
def test_d3_intro(intro, engine):
    r = splitsync.d3(intro, engine)
    assert r["directing"] is True
    assert r["length"] == 4
    assert splitsync.verify(intro, r["witness"])["accepted"] is True


def test_verify_words(intro):
    baba = splitsync.verify(intro, ["b", "a", "b", "a"])
    assert baba["sync_state"] == 1
    assert baba["end_sets"] == [[1, 3], [1, 2], [1, 2, 3]]
    assert splitsync.verify(intro, "a,a,b,b")["sync_state"] == 2


def test_split_and_graph():
    d = splitsync.full_split(splitsync.cerny_cnfa(4))
    assert d.is_dfa
    assert len(d) == 3
    edges = splitsync.symbol_graph(d)
    assert len(edges) == 1
    assert len(splitsync.inverse_split(d)) == 2


def test_classify(intro):
    r = splitsync.classify(intro)
    assert r["classes"]["one_cluster"] == "member"
    assert r["bounds"]["one_cluster"] == 4


def test_census_and_catalog():
    r = splitsync.census(3)
    assert r["dfa_counts_iso"] == 15
    assert r["counts_iso"] == 50
    assert splitsync.catalog("roman").n == 5
    with pytest.raises(splitsync.InvalidArgument):
        splitsync.catalog("nonesuch")


def test_errors():
    with pytest.raises(splitsync.ParseError):
        splitsync.parse("cnfa 3\nsym x : ; 1 ; 2\n")
    code, out, err = splitsync.run_cli(["catalog", "cerny"])
    assert code == 2
    assert "error" in err
