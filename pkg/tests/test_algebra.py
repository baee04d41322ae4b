import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from probinf.algebra import (
    BinOp,
    Name,
    Not,
    Proposition,
    WorldSpace,
    combine,
    entails,
    format_expression,
    make_space,
    parse_expression,
    parse_formula,
)
from probinf.errors import (
    ArityError,
    FormulaSyntaxError,
    InvariantError,
    SpaceMismatchError,
    UnboundNameError,
)

TOSSES = make_space(["HH", "HT", "TH", "TT"])


def prop(*labels):
    return TOSSES.proposition(labels)


def test_make_space():
    assert len(TOSSES) == 4
    assert TOSSES.atoms == ("HH", "HT", "TH", "TT")
    assert len(make_space(["a"])) == 1


@pytest.mark.parametrize("labels", [["x", "x"], [], [""]])
def test_make_space_rejects(labels):
    with pytest.raises(InvariantError):
        make_space(labels)


def test_space_identity_is_structural():
    other = WorldSpace.from_json(TOSSES.to_json())
    assert other == TOSSES and other is not TOSSES
    assert (other.atom("HH") | prop("HT")) == prop("HH", "HT")


def test_combine_examples():
    assert combine("and", prop("HH", "HT"), prop("HH", "TH")) == prop("HH")
    assert combine("not", TOSSES.full()) == TOSSES.empty()
    a = prop("HT", "TT")
    assert combine("or", a, combine("not", a)) == TOSSES.full()
    assert combine("implies", a, prop("HT")) == prop("HH", "HT", "TH")


def test_combine_errors():
    with pytest.raises(ArityError):
        combine("not", prop("HH"), prop("HT"))
    with pytest.raises(ArityError):
        combine("and", prop("HH"))
    with pytest.raises(ArityError):
        combine("xor", prop("HH"), prop("HT"))
    with pytest.raises(SpaceMismatchError):
        combine("and", prop("HH"), make_space(["a"]).full())


def test_entails_examples():
    assert entails(prop("HH"), prop("HH", "HT"))
    assert not entails(prop("HH", "TT"), prop("HH", "HT"))
    assert entails(TOSSES.empty(), prop("TT"))
    with pytest.raises(SpaceMismatchError):
        entails(prop("HH"), make_space(["a"]).full())


def test_proposition_members_and_labels():
    p = prop("TT", "HH")
    assert p.members == (0, 3)
    assert p.labels == ("HH", "TT")
    assert len(p) == 2 and "TT" in p and "HT" not in p
    with pytest.raises(InvariantError):
        Proposition(TOSSES, 1 << 4)


def test_large_space():
    sp = make_space([f"t{i}" for i in range(4096)])
    p = sp.atom("t4095")
    assert len(~p) == 4095
    assert entails(p, ~sp.atom("t0"))


# --- parser ---------------------------------------------------------------

AB = make_space(["a", "b"])


def test_parse_negation():
    assert parse_formula("~A", AB, {"A": AB.atom("a")}) == AB.atom("b")


def test_parse_precedence():
    assert parse_expression("A & B | C") == BinOp("|", BinOp("&", Name("A"), Name("B")), Name("C"))
    assert parse_expression("~A & B") == BinOp("&", Not(Name("A")), Name("B"))
    assert parse_expression("A | B -> C") == BinOp("->", BinOp("|", Name("A"), Name("B")), Name("C"))
    assert parse_expression("A -> B -> C") == BinOp("->", Name("A"), BinOp("->", Name("B"), Name("C")))
    assert parse_expression("(A -> B) -> C") == BinOp("->", BinOp("->", Name("A"), Name("B")), Name("C"))


@pytest.mark.parametrize(
    "text, position",
    [("A &", 3), ("", 0), ("A B", 2), ("(A | B", 6), ("A $ B", 2), ("~", 1), (")", 0), ("A - B", 2)],
)
def test_parse_syntax_errors(text, position):
    with pytest.raises(FormulaSyntaxError) as info:
        parse_expression(text)
    assert info.value.position == position


def test_parse_unbound_name():
    with pytest.raises(UnboundNameError) as info:
        parse_formula("A & Z", AB, {"A": AB.atom("a")})
    assert info.value.name == "Z" and info.value.position == 4


def test_parse_defaults_to_atom_labels():
    assert parse_formula("HH | TT", TOSSES) == prop("HH", "TT")
    assert parse_formula("HH -> TT", TOSSES) == prop("HT", "TH", "TT")


# --- properties -------------------------------------------------------------


@pytest.mark.parametrize("n", range(1, 7))
def test_entails_iff_meet_exhaustive(n):
    sp = make_space([f"w{i}" for i in range(n)])
    props = [Proposition(sp, m) for m in range(1 << n)]
    for a, b in itertools.product(props, repeat=2):
        assert entails(a, b) == (combine("and", a, b) == a)
        assert ~(a & b) == (~a | ~b)
        assert ~(a | b) == (~a & ~b)


@settings(max_examples=300)
@given(st.integers(1, 10).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, 2**n - 1), st.integers(0, 2**n - 1))))
def test_entails_iff_meet_random(case):
    n, x, y = case
    sp = make_space([f"w{i}" for i in range(n)])
    a, b = Proposition(sp, x), Proposition(sp, y)
    assert entails(a, b) == ((a & b) == a)
    assert combine("not", combine("and", a, b)) == combine("or", ~a, ~b)


NAMES = ["A", "B", "C", "D"]

exprs = st.recursive(
    st.sampled_from(NAMES).map(Name),
    lambda inner: st.one_of(
        inner.map(Not),
        st.tuples(st.sampled_from(["&", "|", "->"]), inner, inner).map(lambda t: BinOp(*t)),
    ),
    max_leaves=12,
)

FOUR = make_space([f"w{i}" for i in range(5)])
BINDINGS = {name: Proposition(FOUR, m) for name, m in zip(NAMES, [0b00011, 0b00110, 0b01100, 0b10101])}


@settings(max_examples=300)
@given(exprs)
def test_format_parse_round_trip(expr):
    text = format_expression(expr)
    again = parse_expression(text)
    assert again == expr
    assert parse_formula(text, FOUR, BINDINGS) == parse_formula(format_expression(again), FOUR, BINDINGS)


@settings(max_examples=200)
@given(exprs)
def test_minimal_parentheses_text_round_trips(expr):
    # strip redundant spacing: the grammar must not depend on whitespace
    text = format_expression(expr).replace(" ", "")
    assert parse_formula(text, FOUR, BINDINGS) == parse_formula(format_expression(expr), FOUR, BINDINGS)
