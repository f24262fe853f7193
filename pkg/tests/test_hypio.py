import json

import pytest

from hyperkernel import corpus, errors
from hyperkernel.hypio import (
    emit_report,
    format_hyp,
    parse_hyp,
    parse_hyp_json,
    partition_labels,
    set_labels,
    table_doc,
)

MINIMAL = """
# trivial table
elements: e
row e: {e}
"""


class TestParse:
    def test_minimal(self):
        H = parse_hyp(MINIMAL)
        assert H.n == 1
        assert H.cell(0, 0) == H.set_of([0])

    def test_name_and_comments(self):
        H = parse_hyp("name: tiny\nelements: a b\nrow a: {a} {b}\nrow b: {b} {a,b}\n")
        assert H.name == "tiny"
        assert H.cell(1, 1) == H.subset(["a", "b"])

    def test_empty_cell_rejected(self):
        with pytest.raises(errors.EmptyCell):
            parse_hyp("elements: a\nrow a: {}\n")

    def test_unknown_label_rejected(self):
        with pytest.raises(errors.UnknownLabel):
            parse_hyp("elements: a\nrow a: {b}\n")

    def test_duplicate_element_rejected(self):
        with pytest.raises(errors.DuplicateLabel):
            parse_hyp("elements: a a\nrow a: {a} {a}\n")

    def test_duplicate_row_rejected(self):
        with pytest.raises(errors.DuplicateLabel):
            parse_hyp("elements: a\nrow a: {a}\nrow a: {a}\n")

    def test_missing_row_rejected(self):
        with pytest.raises(errors.ParseError):
            parse_hyp("elements: a b\nrow a: {a} {b}\n")

    def test_wrong_cell_count(self):
        with pytest.raises(errors.ParseError) as exc:
            parse_hyp("elements: a b\nrow a: {a}\nrow b: {a} {b}\n")
        assert exc.value.line == 2

    def test_parse_error_carries_line(self):
        with pytest.raises(errors.ParseError) as exc:
            parse_hyp("elements: a\nrow a: a\n")
        assert exc.value.line == 2


class TestJson:
    def test_round_trip_document(self, h9):
        doc = table_doc(h9)
        H2 = parse_hyp_json(json.dumps(doc))
        assert H2 == h9

    def test_bad_json(self):
        with pytest.raises(errors.ParseError):
            parse_hyp_json("{nope")

    def test_empty_cell(self):
        doc = {"elements": ["a"], "table": [[[]]]}
        with pytest.raises(errors.EmptyCell):
            parse_hyp_json(json.dumps(doc))


class TestRoundTrip:
    def test_all_fixtures(self):
        for name, H in corpus.fixtures().items():
            assert parse_hyp(format_hyp(H)) == H, name

    def test_corpus_members(self, full_corpus):
        for name, H in full_corpus.items():
            assert parse_hyp(format_hyp(H)) == H, name


class TestReports:
    def test_labels_sorted_lexicographically(self, h9):
        from hyperkernel.relations import beta

        classes = partition_labels(h9.names, beta(h9))
        assert classes == [["a", "b", "c", "e"], ["u", "z"], ["v"], ["x", "y"]]

    def test_set_labels_sorted(self, h9):
        assert set_labels(h9.names, h9.subset(["c", "a"])) == ["a", "c"]

    def test_emit_byte_identical(self):
        doc = {"b": [2, 1], "a": {"y": True, "x": None}}
        assert emit_report(doc) == emit_report(json.loads(json.dumps(doc)))

    def test_emit_sorts_keys(self):
        out = emit_report({"b": 1, "a": 2})
        assert out.index('"a"') < out.index('"b"')
