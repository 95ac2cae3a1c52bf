import pytest
from fractions import Fraction

from cycloscheme.binfield import build_tower
from cycloscheme.paperbook import (QPoly, appendix_matrix, integrality_check,
                                   parse_qpoly, reconcile, row_sum_identity_check,
                                   table_row)


def test_qpoly_eval():
    p = parse_qpoly("q*(q**2+q-2)/4")
    assert p(2) == Fraction(2)
    assert p(4) == Fraction(18)
    assert p.eval_int(4) == 18


def test_qpoly_rejects_non_integral():
    p = parse_qpoly("q/2")
    with pytest.raises(ValueError):
        p.eval_int(3)


def test_qpoly_arithmetic():
    q = QPoly.x()
    assert (q + 1) * (q - 1) == q ** 2 - 1
    assert (q ** 2 - 1) / 1 == q ** 2 - 1


def test_table_rows_s1():
    assert table_row("thm1", "zero_residue", 2) == [1, 3, -3, -1]
    assert table_row("thm1", "minus_T1", 2) == [1, -1, 1, -1]
    assert table_row("thm2i", "T1", 2) == [1, -5, 3, 1]
    assert table_row("thm2i", "degree", 2) == [1, 27, 27, 9]
    assert table_row("thm2ii", "T3", 2) == [1, -21, 3, 17]
    assert table_row("dual1", "degree", 2) == [1, 1, 3, 3]


def test_table_roman_aliases():
    assert table_row("I", "degree", 2) == table_row("thm1", "degree", 2)
    assert table_row("V", 0, 2) == table_row("thm2ii", "degree", 2)


def test_unknown_table_and_row():
    with pytest.raises(KeyError):
        table_row("thm9", "degree", 2)
    with pytest.raises(KeyError):
        table_row("thm1", "nope", 2)


def test_appendix_b1_thm1_q2():
    assert appendix_matrix("thm1", "B1", 2) == \
        [[0, 3, 0, 0], [1, 2, 0, 0], [0, 0, 2, 1], [0, 0, 3, 0]]


def test_appendix_l1_thm1_q2():
    assert appendix_matrix("thm1", "L1", 2) == \
        [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]


def test_appendix_row_sum_q4():
    b1 = appendix_matrix("thm1", "B1", 4)
    for row in b1:
        assert sum(row) == 15  # n_1 = q^2 - 1


def test_thm2ii_l_request_returns_b():
    assert appendix_matrix("thm2ii", "L2", 2) == appendix_matrix("thm2ii", "B2", 2)


def test_integrality():
    assert integrality_check().passed


def test_row_sum_identities():
    assert row_sum_identity_check().passed


@pytest.mark.parametrize("s", [1, 2])
@pytest.mark.parametrize("scheme_id", ["thm1", "thm2i", "thm2ii"])
def test_reconcile(s, scheme_id):
    report = reconcile(build_tower(s), scheme_id)
    assert report.passed, str(report)
