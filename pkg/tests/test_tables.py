import json
from fractions import Fraction

import numpy as np
import pytest

from simpson3 import (
    Diagonal2D,
    DomainError,
    NonnegTable3,
    Reversal2D,
    Table2,
    Table3,
    classify_2d,
    correlation_profile,
    detect_reversal_2d,
    eval_form_signs,
    load_table,
    sign_of_form,
    table_from_json_obj,
    table_to_json_obj,
)
from simpson3.tables import (
    FACE_FORM,
    FACES,
    FORM_COEFFS,
    FORM_INDEX,
    FORM_LETTERS,
    antipode,
    face_diagonal_pair,
    face_vertices,
    parse_rational,
    vertex_bits,
    vertex_name,
    vertex_of_bits,
)

EXAMPLE = Table3([Fraction(1, 4), 1, 1, 2, 4, 1, 2, 8])


def random_int_table3(rng):
    return Table3([int(x) for x in rng.integers(1, 1000, 8)])


def random_int_table2(rng):
    return Table2([int(x) for x in rng.integers(1, 1000, 4)])


class TestVertexHelpers:
    def test_bits_round_trip(self):
        for v in range(8):
            assert vertex_of_bits(*vertex_bits(v)) == v

    def test_vertex_names(self):
        assert vertex_name(0) == "000"
        assert vertex_name(6) == "110"

    def test_antipode(self):
        assert antipode(0) == 7
        assert antipode(3) == 4
        for v in range(8):
            assert antipode(antipode(v)) == v

    def test_face_vertices(self):
        assert face_vertices(0, 0) == (0, 1, 2, 3)
        assert face_vertices(2, 1) == (1, 3, 5, 7)

    def test_face_diagonal_pair(self):
        first, second = face_diagonal_pair(2, 0)
        assert first == (0, 6)
        assert second == (2, 4)
        for axis, value in FACES:
            first, second = face_diagonal_pair(axis, value)
            assert set(first) | set(second) == set(face_vertices(axis, value))
            assert first[0] == min(face_vertices(axis, value))


class TestForms:
    def test_form_coefficients_balanced(self):
        for coeffs in FORM_COEFFS:
            assert sum(coeffs) == 0
            assert sum(c for c in coeffs if c > 0) in (2, 3)

    def test_five_term_forms_have_doubled_vertex(self):
        for letter in "mnopqrst":
            coeffs = FORM_COEFFS[FORM_INDEX[letter]]
            assert sorted(c for c in coeffs if c != 0) == [-2, -1, 1, 1, 1]

    def test_sign_matches_float_evaluation(self):
        rng = np.random.default_rng(1)
        for _ in range(200):
            t = random_int_table3(rng)
            h = np.log([float(e) for e in t.entries])
            for coeffs in FORM_COEFFS:
                exact = sign_of_form(coeffs, t.entries)
                approx = float(np.dot(coeffs, h))
                if abs(approx) > 1e-8:
                    assert exact == (1 if approx > 0 else -1)

    def test_example_form_signs(self):
        signs = eval_form_signs(EXAMPLE)
        assert signs["b"] == 1
        assert signs["d"] == 1
        assert signs["e"] == -1
        assert signs["t"] == -1

    def test_face_forms_match_layer_determinants(self):
        rng = np.random.default_rng(2)
        for _ in range(100):
            t = random_int_table3(rng)
            signs = eval_form_signs(t)
            for (axis, value), letter in FACE_FORM.items():
                det = t.layer(axis, value).det()
                expected = (det > 0) - (det < 0)
                assert signs[letter] == expected

    def test_scale_invariance(self):
        rng = np.random.default_rng(3)
        t = random_int_table3(rng)
        scaled = t.scaled(Fraction(7, 3))
        assert eval_form_signs(t).signs == eval_form_signs(scaled).signs

    def test_all_ones_all_zero_signs(self):
        signs = eval_form_signs(Table3([1] * 8))
        assert set(signs.signs) == {0}


class TestTables:
    def test_positivity_enforced(self):
        with pytest.raises(DomainError):
            Table3([1, 2, 3, 0, 5, 6, 7, 8])
        with pytest.raises(DomainError):
            Table3([1] * 7)

    def test_float_entries_rejected(self):
        with pytest.raises(DomainError):
            Table3([1.5] + [1] * 7)

    def test_add_and_layer(self):
        t = EXAMPLE + EXAMPLE
        assert t.entries == tuple(2 * e for e in EXAMPLE.entries)
        layer = EXAMPLE.layer(0, 1)
        assert layer.entries == (4, 1, 2, 8)
        layer = EXAMPLE.layer(2, 0)
        assert layer.entries == (Fraction(1, 4), 1, 4, 2)

    def test_total(self):
        assert Table3([1] * 8).total() == 8

    def test_nonneg_smoothing(self):
        raw = NonnegTable3([0, 1, 2, 0, 3, 4, 0, 5])
        with pytest.raises(DomainError):
            raw.smoothed(0)
        smooth = raw.smoothed(Fraction(1, 2))
        assert isinstance(smooth, Table3)
        assert smooth.entries[0] == Fraction(1, 2)
        assert smooth.entries[1] == Fraction(3, 2)

    def test_table2_indexing(self):
        t = Table2([1, 2, 3, 4])
        assert t[(0, 0)] == 1
        assert t[(0, 1)] == 2
        assert t[(1, 0)] == 3
        assert t[(1, 1)] == 4
        assert t.det() == 4 - 6


class TestCorrelationProfile:
    def test_conditional_agrees_with_forms(self):
        rng = np.random.default_rng(4)
        for _ in range(100):
            t = random_int_table3(rng)
            profile = correlation_profile(t)
            signs = eval_form_signs(t)
            for i, (axis, value) in enumerate(FACES):
                assert profile.conditional[i] == signs[FACE_FORM[(axis, value)]]

    def test_marginal_matches_collapsed_determinant(self):
        rng = np.random.default_rng(5)
        t = random_int_table3(rng)
        profile = correlation_profile(t)
        collapsed = Table2(
            t.layer(0, 0).entries[i] + t.layer(0, 1).entries[i] for i in range(4)
        )
        det = collapsed.det()
        assert profile.marginal[0] == (det > 0) - (det < 0)

    def test_mutual_independent_table_vanishes(self):
        # rank-one table: entries are products of per-axis weights
        px, py, pz = (2, 3), (5, 1), (4, 7)
        t = Table3(
            [
                px[x] * py[y] * pz[z]
                for x in (0, 1)
                for y in (0, 1)
                for z in (0, 1)
            ]
        )
        profile = correlation_profile(t)
        assert set(profile.mutual) == {0}
        assert set(profile.marginal) == {0}
        assert set(profile.conditional) == {0}

    def test_as_dict_shape(self):
        d = correlation_profile(EXAMPLE).as_dict()
        assert set(d) == {"mutual", "marginal", "conditional"}
        assert set(d["mutual"]) == {vertex_name(v) for v in range(8)}
        assert len(d["conditional"]) == 6


class TestReversal2D:
    def test_reversal_pos_to_neg(self):
        f = Table2([5, 6, 3, 4])
        g = Table2([6, 42, 1, 8])
        assert f.det() > 0 and g.det() > 0 and (f + g).det() < 0
        assert detect_reversal_2d(f, g) is Reversal2D.POS_TO_NEG

    def test_reversal_neg_to_pos(self):
        f = Table2([6, 5, 4, 3])
        g = Table2([42, 6, 8, 1])
        assert detect_reversal_2d(f, g) is Reversal2D.NEG_TO_POS

    def test_no_reversal(self):
        f = Table2([2, 1, 1, 2])
        assert detect_reversal_2d(f, f) is Reversal2D.NO_REVERSAL

    def test_degenerate(self):
        f = Table2([1, 1, 1, 1])
        g = Table2([2, 1, 1, 2])
        assert detect_reversal_2d(f, g) is Reversal2D.DEGENERATE

    def test_classify_2d(self):
        assert classify_2d(Table2([2, 1, 1, 2])) is Diagonal2D.DIAG_00_11
        assert classify_2d(Table2([1, 2, 2, 1])) is Diagonal2D.DIAG_01_10
        assert classify_2d(Table2([1, 1, 1, 1])) is Diagonal2D.DEGENERATE
        with pytest.raises(DomainError):
            classify_2d(Table2([0, 1, 1, 1]))


class TestJson:
    def test_parse_rational(self):
        assert parse_rational("1/4") == Fraction(1, 4)
        assert parse_rational("3") == 3
        assert parse_rational(3) == 3
        with pytest.raises(DomainError):
            parse_rational("0.5.2")
        with pytest.raises(DomainError):
            parse_rational(0.5)
        with pytest.raises(DomainError):
            parse_rational(True)

    def test_round_trip(self):
        obj = table_to_json_obj(EXAMPLE)
        back = table_from_json_obj(obj)
        assert isinstance(back, Table3)
        assert back.entries == EXAMPLE.entries

    def test_allow_zero(self):
        obj = {"entries": ["0", "1", "2", "3", "4", "5", "6", "7"]}
        with pytest.raises(DomainError):
            table_from_json_obj(obj)
        table = table_from_json_obj(obj, allow_zero=True)
        assert isinstance(table, NonnegTable3)

    def test_2d_table(self):
        table = table_from_json_obj({"entries": ["1", "2", "3", "4"]})
        assert isinstance(table, Table2)

    def test_bad_shapes(self):
        with pytest.raises(DomainError):
            table_from_json_obj({"entries": ["1"] * 5})
        with pytest.raises(DomainError):
            table_from_json_obj(["1"] * 8)
        with pytest.raises(DomainError):
            table_from_json_obj({"entries": "11111111"})

    def test_load_table(self, tmp_path):
        path = tmp_path / "t.json"
        path.write_text(json.dumps(table_to_json_obj(EXAMPLE)))
        assert load_table(path).entries == EXAMPLE.entries
        bad = tmp_path / "bad.json"
        bad.write_text("{")
        with pytest.raises(DomainError):
            load_table(bad)


def test_form_letters_complete():
    assert FORM_LETTERS == "abcdefghijklmnopqrst"
    assert len(FORM_COEFFS) == 20
    assert len(set(FORM_COEFFS)) == 20
