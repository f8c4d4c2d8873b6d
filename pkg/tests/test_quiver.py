import pytest

from leavitt.quiver import QuiverError, compose, enumerate_paths, parse_quiver

from oracles import word_paths


def test_parse_one_loop_default_special(one_loop):
    assert one_loop.vertices == ("1",)
    assert one_loop.special["1"] == "a"
    assert one_loop.arrows["a"].source == "1" and one_loop.arrows["a"].target == "1"


def test_parse_special_override(two_loop):
    assert two_loop.special["1"] == "a1"
    forced = parse_quiver("vertices: 1\narrow a1: 1 -> 1\narrow a2: 1 -> 1\nspecial 1: a2\n")
    assert forced.special["1"] == "a2"


def test_sink_rejected():
    with pytest.raises(QuiverError, match="sink"):
        parse_quiver("vertices: 1 2\narrow a: 1 -> 2\n")


def test_parse_errors():
    with pytest.raises(QuiverError, match="unknown source"):
        parse_quiver("vertices: 1\narrow a: 2 -> 1\n")
    with pytest.raises(QuiverError, match="duplicate arrow"):
        parse_quiver("vertices: 1\narrow a: 1 -> 1\narrow a: 1 -> 1\n")
    with pytest.raises(QuiverError, match="duplicate vertex"):
        parse_quiver("vertices: 1 1\narrow a: 1 -> 1\n")
    with pytest.raises(QuiverError, match="does not start"):
        parse_quiver("vertices: 1 2\narrow a: 1 -> 2\narrow b: 2 -> 1\nspecial 1: b\n")
    with pytest.raises(QuiverError, match="line 2"):
        parse_quiver("vertices: 1\narrow a 1 -> 1\n")
    with pytest.raises(QuiverError, match="sink"):
        parse_quiver("vertices: 1 2\narrow a: 1 -> 2\narrow b: 1 -> 1\n")


def test_comments_and_blank_lines():
    q = parse_quiver("# header\n\nvertices: 1  # trailing\narrow a: 1 -> 1\n")
    assert q.special["1"] == "a"


def test_enumerate_paths_one_loop(one_loop):
    assert [p.arrows for p in enumerate_paths(one_loop, 3)] == [("a", "a", "a")]
    assert [p.arrows for p in enumerate_paths(one_loop, 0)] == [()]


def test_enumerate_paths_two_loop(two_loop):
    got = enumerate_paths(two_loop, 2)
    assert len(got) == 4
    assert [p.arrows for p in got] == sorted(p.arrows for p in got)


@pytest.mark.parametrize("length", range(5))
def test_path_counts_match_word_oracle(battery, length):
    for quiver in battery:
        words = word_paths(quiver, length)
        paths = enumerate_paths(quiver, length)
        if length == 0:
            assert len(paths) == len(quiver.vertices)
        else:
            assert sorted(p.arrows for p in paths) == sorted(words)


def test_enumeration_order_deterministic(branch3):
    first = enumerate_paths(branch3, 3)
    second = enumerate_paths(branch3, 3)
    assert first == second


def test_source_target_filters(branch3):
    for p in enumerate_paths(branch3, 2, source="1"):
        assert p.source == "1"
    for p in enumerate_paths(branch3, 2, target="3"):
        assert p.target == "3"


def test_truncations(one_loop, two_loop):
    a = one_loop.arrow_path("a")
    assert one_loop.truncate_last(a) == one_loop.trivial_path("1")
    assert one_loop.truncate_first(a) == one_loop.trivial_path("1")
    p = two_loop.path(("a1", "a2"))          # traverse a1 then a2
    assert two_loop.truncate_first(p).arrows == ("a2",)
    assert two_loop.truncate_last(p).arrows == ("a1",)
    with pytest.raises(QuiverError):
        two_loop.truncate_last(two_loop.trivial_path("1"))


def test_truncation_endpoints(battery):
    for quiver in battery:
        for p in enumerate_paths(quiver, 2) + enumerate_paths(quiver, 3):
            hat = quiver.truncate_last(p)
            tilde = quiver.truncate_first(p)
            assert hat.source == p.source
            assert hat.target == quiver.arrows[p.arrows[-1]].source
            assert tilde.target == p.target
            assert tilde.source == quiver.arrows[p.arrows[0]].target


def test_compose(two_cycle):
    a = two_cycle.arrow_path("a")
    b = two_cycle.arrow_path("b")
    ba = compose(b, a)       # traverse a then b
    assert ba.arrows == ("a", "b") and ba.source == "1" and ba.target == "1"
    with pytest.raises(QuiverError):
        compose(a, a)


def test_digest_stable(two_loop):
    again = parse_quiver("vertices: 1\narrow a1: 1 -> 1\narrow a2: 1 -> 1\nspecial 1: a1\n")
    assert two_loop.digest() == again.digest()
