import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ck_spectra import (
    Bundle,
    DuplicateLabel,
    Graph,
    OMEGA,
    ParseError,
    UndeclaredVertex,
    ea_graph,
    emit_gcg,
    parse_graph,
    random_condition_k_graph,
    random_graph,
    running_example,
)

seeds = st.integers(0, 10_000)


# -- parsing -------------------------------------------------------------------


def test_parse_loop_with_count():
    g = parse_graph("vertex a; edge a -> a * 2;")
    assert g.vertices == ("a",)
    assert g.bundles == (Bundle("a", "a", 2),)


def test_parse_labeled_omega_bundle():
    g = parse_graph("vertex a, b; edge f: a -> b * inf;")
    assert g.bundles == (Bundle("a", "b", OMEGA, "f"),)


def test_parse_empty_input():
    assert parse_graph("") == Graph([])
    assert parse_graph("   # just a comment\n") == Graph([])


def test_parse_comments_and_whitespace():
    src = """
    # a small graph
    vertex a, b;   # two vertices
    edge a -> b;   # one bundle
    """
    g = parse_graph(src)
    assert g.bundles == (Bundle("a", "b"),)


def test_duplicate_unlabeled_bundles_merge():
    g = parse_graph("vertex a, b; edge a -> b; edge a -> b * 2;")
    assert g.bundles == (Bundle("a", "b", 3),)
    g = parse_graph("vertex a, b; edge a -> b; edge a -> b * inf;")
    assert g.bundles == (Bundle("a", "b", OMEGA),)


# -- errors with positions -------------------------------------------------------


def err(src):
    with pytest.raises(ParseError) as info:
        parse_graph(src)
    return info.value


def test_missing_semicolon_position():
    e = err("vertex a\nvertex b;")
    assert (e.line, e.col) == (2, 1)
    assert "expected" in e.message


def test_unknown_statement_position():
    e = err("vertex a;\nfoo;")
    assert (e.line, e.col) == (2, 1)


def test_undeclared_vertex():
    e = err("vertex a; edge a -> b;")
    assert isinstance(e, UndeclaredVertex)
    assert (e.line, e.col) == (1, 21)
    e = err("edge a -> a;")
    assert isinstance(e, UndeclaredVertex)


def test_duplicate_label():
    e = err("vertex a; edge f: a -> a; edge f: a -> a;")
    assert isinstance(e, DuplicateLabel)
    assert e.line == 1 and e.col == 32


def test_duplicate_vertex_declaration():
    e = err("vertex a, a;")
    assert (e.line, e.col) == (1, 11)


def test_zero_multiplicity_rejected():
    e = err("vertex a; edge a -> a * 0;")
    assert "at least 1" in e.message


def test_bad_multiplicity_token():
    e = err("vertex a; edge a -> a * lots;")
    assert (e.line, e.col) == (1, 25)


def test_reserved_words_rejected_as_names():
    assert isinstance(err("vertex inf;"), ParseError)
    assert isinstance(err("vertex a; edge vertex -> a;"), ParseError)


def test_unexpected_character():
    e = err("vertex a; edge a -> a * 2 !")
    assert (e.line, e.col) == (1, 27)


def test_unterminated_statement():
    e = err("vertex a; edge a -> a")
    assert e.line == 1 and e.col == 22


def test_str_form_carries_position():
    assert str(err("vertex a\nvertex b;")).startswith("2:1:")


# -- round trips -------------------------------------------------------------------


def test_round_trip_fixture():
    g = running_example().graph
    assert parse_graph(emit_gcg(g)) == g


def test_round_trip_subset_graphs():
    for mult in (1, 2, OMEGA):
        g = ea_graph(["a", "b", "c"], mult)
        assert parse_graph(emit_gcg(g)) == g


def test_round_trip_empty():
    assert emit_gcg(Graph([])) == ""
    assert parse_graph(emit_gcg(Graph([]))) == Graph([])


def test_round_trip_hundred_random_graphs():
    for seed in range(100):
        g = random_graph(seed, seed % 9, density=0.5)
        assert parse_graph(emit_gcg(g)) == g


@given(seed=seeds, n=st.integers(0, 8))
@settings(max_examples=60, deadline=None)
def test_round_trip_random_property(seed, n):
    g = random_condition_k_graph(seed, n)
    assert parse_graph(emit_gcg(g)) == g


def test_emit_is_canonical_fixed_point():
    scrambled = "vertex b, a;\nedge a -> b * 2;\nedge a -> b * 3;\nedge z2: b -> a;\n"
    g = parse_graph(scrambled)
    text = emit_gcg(g)
    assert text == emit_gcg(parse_graph(text))
    assert "a -> b * 5" in text


@given(st.text(max_size=120))
@settings(max_examples=300, deadline=None)
def test_parser_never_crashes(text):
    try:
        parse_graph(text)
    except ParseError:
        pass  # positioned rejection is the only acceptable failure


@given(st.text(alphabet="vertex edg;:*->,abinf3 \n#", max_size=80))
@settings(max_examples=300, deadline=None)
def test_parser_never_crashes_near_grammar(text):
    try:
        parse_graph(text)
    except ParseError:
        pass
