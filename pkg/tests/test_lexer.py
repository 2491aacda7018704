import pytest

from rubicon.aql.tokens import tokenize
from rubicon.errors import LexError


def kinds(text):
    return [t.kind for t in tokenize(text)]


def test_single_token_statement():
    assert kinds("?") == ["QMARK", "EOF"]


def test_keywords_case_insensitive():
    toks = tokenize("find a From t wHeRe stuff here")
    assert [t.kind for t in toks[:4]] == ["FIND", "IDENT", "FROM", "IDENT"]
    assert toks[4].kind == "WHERE"
    assert toks[5].kind == "UTTERANCE"


def test_utterance_captured_to_end():
    toks = tokenize(
        "FIND full_name FROM faculty WHERE the person is a professor in the research lab"
    )
    utt = [t for t in toks if t.kind == "UTTERANCE"]
    assert len(utt) == 1
    assert utt[0].text == "the person is a professor in the research lab"


def test_utterance_stops_at_join():
    toks = tokenize("FIND a FROM t WHERE x y z JOIN FIND b FROM u")
    utt = [t for t in toks if t.kind == "UTTERANCE"][0]
    assert utt.text == "x y z"
    assert "JOIN" in [t.kind for t in toks]


def test_utterance_quoted_join_does_not_terminate():
    toks = tokenize("FIND a FROM t WHERE papers about 'join ordering'")
    utt = [t for t in toks if t.kind == "UTTERANCE"][0]
    assert utt.text == "papers about 'join ordering'"


def test_unterminated_quote_reports_byte_offset():
    text = 'FIND a FROM t WHERE "unclosed'
    with pytest.raises(LexError) as err:
        tokenize(text)
    assert err.value.offset == text.index('"')


def test_unterminated_quote_offset_is_bytes_not_chars():
    text = "FIND a FROM t WHERE über 'open"
    with pytest.raises(LexError) as err:
        tokenize(text)
    assert err.value.offset == len(text[: text.index("'")].encode("utf-8"))


def test_comments_stripped():
    toks = tokenize("-- a comment\nFIND a FROM t -- trailing\n")
    assert [t.kind for t in toks] == ["FIND", "IDENT", "FROM", "IDENT", "EOF"]


def test_semicolons_and_parens():
    toks = tokenize("SAVE (FIND a FROM t) AS x;")
    assert [t.kind for t in toks] == [
        "SAVE", "LPAREN", "FIND", "IDENT", "FROM", "IDENT", "RPAREN",
        "AS", "IDENT", "SEMI", "EOF",
    ]


def test_utterance_inside_save_stops_at_rparen():
    toks = tokenize("SAVE (FIND a FROM t WHERE alpha beta) AS x")
    utt = [t for t in toks if t.kind == "UTTERANCE"][0]
    assert utt.text == "alpha beta"


def test_dotted_identifier():
    toks = tokenize("FIND full_name FROM UNIVERSITY_DW.faculty")
    assert toks[3].text == "UNIVERSITY_DW.faculty"


def test_unexpected_character():
    with pytest.raises(LexError):
        tokenize("FIND a FROM t % nope")


def test_offsets_preserved():
    toks = tokenize("FIND a FROM t")
    assert [t.offset for t in toks[:4]] == [0, 5, 7, 12]
