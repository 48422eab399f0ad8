import json

import pytest

from grothfock_lib import render
from grothfock_lib.algebra import BETA, BetaScalar, MultiPoly
from grothfock_lib.errors import ParseError
from grothfock_lib.pieri import PartitionCombo, combos_from
from grothfock_lib.symfunc import Basis, Partition, SymmetricElement, TruncationCaps
from grothfock_lib.verify import CheckResult


def test_partition_labels():
    assert render.partition_label(Partition((2, 1))) == "(2,1)"
    assert render.partition_label(Partition()) == "()"
    assert render.partition_label(Partition(), latex=True) == r"\emptyset"


def test_element_text():
    caps = TruncationCaps(4, 4)
    f = SymmetricElement(Basis.COMPLETE_H, {(): 2, (1,): -BETA, (1, 1): 1}, caps)
    assert render.element_text(f) == "h_(1,1) - b h_(1) + 2"
    assert render.element_text(f, latex=True) == r"h_{(1,1)} - \beta h_{(1)} + 2"
    assert render.element_text(SymmetricElement.zero(caps)) == "0"


def test_combo_text_is_canonical():
    c = combos_from([((2, 1), 1), ((3,), 1), ((2, 2), -BETA)])
    assert render.combo_text(c, "G") == "-b G_(2,2) + G_(3) + G_(2,1)"
    assert render.combo_text(PartitionCombo.of(()), "g", latex=True) == r"g_{\emptyset}"


def test_series_text():
    series = [PartitionCombo.of((1,)), combos_from([((2,), 1), ((1, 1), 1), ((1,), BETA)])]
    assert render.series_text(series, "g") == "t^0: g_(1)\nt^1: g_(2) + g_(1,1) + b g_(1)"


def test_poly_text():
    x1, x2 = MultiPoly.variable(2, 1), MultiPoly.variable(2, 2)
    assert render.poly_text(x1 + x2 + BETA * x1 * x2) == "x1 + x2 + b x1 x2"


class TestJson:

    def test_element_document_round_trip(self):
        caps = TruncationCaps(4, 5)
        f = SymmetricElement(Basis.SCHUR, {(2, 1): 1, (2, 2): -BETA, (3, 1, 1): BETA ** 2 - 3}, caps)
        text = render.render_json(render.element_document(f, "G", Partition((2, 1)), "fermionic"))
        doc = render.parse_json(text)
        assert doc["terms"] == f
        assert doc["shape"] == [2, 1]
        assert render.render_json(render.element_document(doc["terms"], "G", Partition((2, 1)), "fermionic")) == text

    def test_combo_document_layout(self):
        c = combos_from([((3,), 1), ((2, 2), -BETA)])
        doc = json.loads(render.render_json(render.combo_document(c, "G", "sG", {"s": [2], "mu": [1], "rows": 2})))
        assert doc["terms"] == [
            {"partition": [2, 2], "coeff": [[1, -1]]},
            {"partition": [3], "coeff": [[0, 1]]},
        ]
        assert doc["arguments"] == {"s": [2], "mu": [1], "rows": 2}

    def test_series_document_round_trip(self):
        series = [PartitionCombo.of(()), combos_from([((1,), 1)])]
        text = render.render_json(render.combo_document(series, "g", "pieri-h", {"i": 1, "shape": []}))
        doc = render.parse_json(text)
        assert [entry["terms"] for entry in doc["series"]] == series
        assert [entry["power"] for entry in doc["series"]] == [0, 1]

    def test_scalar_encoding(self):
        s = BetaScalar({0: 1, 2: -3})
        assert render.scalar_to_json(s) == [[0, 1], [2, -3]]
        assert render.scalar_from_json([[0, 1], [2, -3]]) == s

    @pytest.mark.parametrize("text", [
        "not json",
        "[1, 2]",
        '{"terms": [{"partition": [1]}]}',
        '{"terms": [{"partition": [1, 2], "coeff": [[0, 1]]}]}',
        '{"basis": "nope", "caps": {"n_vars": 2, "max_degree": 2}}',
        '{"terms": [{"partition": [1], "coeff": [["x", 1]]}]}',
    ])
    def test_malformed_documents(self, text):
        with pytest.raises(ParseError):
            render.parse_json(text)


def test_report():
    results = [CheckResult("a", True, 3), CheckResult("b", False, 2, "lam = (1)")]
    assert render.report_lines(results) == ["a: PASS (3 cases)", "b: FAIL after 2 cases, first counterexample lam = (1)"]
    assert "1 of 2 checks failed" in str(render.report_summary(results).renderable)
    assert "All 1 checks passed" in str(render.report_summary(results[:1]).renderable)
