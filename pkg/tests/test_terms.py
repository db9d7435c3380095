import pytest

from factlog.terms import Term, TermError, atom, iter_terms, parse_term, render


def test_parse_compound_with_operators():
    term = parse_term("train('Mary buys a car','Commerce_buy','LUIndex'=2,"
                      "['Buyer'=1+required],[[purchase,verb]]).")
    assert term.functor == "train"
    assert term.args[0] == "Mary buys a car"
    lu = term.args[2]
    assert lu == Term("=", ("LUIndex", 2))
    role = term.args[3][0]
    assert role == Term("=", ("Buyer", Term("+", (1, "required"))))
    assert term.args[4] == [["purchase", "verb"]]


def test_plus_binds_tighter_than_equals():
    term = parse_term("'R'=4+optional")
    assert term == Term("=", ("R", Term("+", (4, "optional"))))


def test_quoted_atoms_with_escapes():
    assert parse_term(r"'it\'s'") == "it's"
    assert parse_term("'bn:00021045n'") == "bn:00021045n"


def test_numbers_and_lists():
    assert parse_term("[1,2.5,foo,[]]") == [1, 2.5, "foo", []]


def test_trailing_garbage_rejected():
    with pytest.raises(TermError):
        parse_term("foo(1) bar")
    with pytest.raises(TermError):
        parse_term("foo(")


def test_atom_quoting_rules():
    assert atom("buy") == "buy"
    assert atom("pick_up") == "pick_up"
    assert atom("Commerce_buy") == "'Commerce_buy'"
    assert atom("thomas ian griffith") == "'thomas ian griffith'"
    assert atom("it's") == "'it\\'s'"


def test_render_roundtrip():
    source = "lvp(buy,verb,'Commerce_buy',[pattern('Buyer','verb->nsubj',required)])"
    term = parse_term(source + ".")
    assert render(term) == source


def test_iter_terms_skips_comments_and_reports_lines():
    terms = list(iter_terms("% comment\nfoo(1).\n\nbar(2).\n"))
    assert [t.functor for t in terms] == ["foo", "bar"]
    with pytest.raises(TermError, match="line 2"):
        list(iter_terms("ok(1).\nbroken(((\n"))
