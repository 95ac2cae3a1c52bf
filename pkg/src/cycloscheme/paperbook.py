"""Symbolic parameter book: every published table row and intersection
matrix as a polynomial in q = 2^s, cross-checked against computed results.

The transcription lives in data/tables.json as expression strings; they are
evaluated with a rational-coefficient polynomial type, so a stray float or
inexact division is impossible by construction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from .binfield import FieldTower
from .cycpart import get_partition
from .reporting import Report
from .schemecore import SchemeError, build_dual_scheme, build_scheme

TABLE_IDS = ("thm1", "dual1", "thm2i", "dual2i", "thm2ii")
_ROMAN = {"I": "thm1", "II": "dual1", "III": "thm2i", "IV": "dual2i", "V": "thm2ii"}


@dataclass(frozen=True)
class QPoly:
    """Univariate polynomial in q with Fraction coefficients, low degree first."""

    coeffs: tuple

    @classmethod
    def const(cls, c) -> "QPoly":
        return cls((Fraction(c),))

    @classmethod
    def x(cls) -> "QPoly":
        return cls((Fraction(0), Fraction(1)))

    @staticmethod
    def _lift(v):
        if isinstance(v, QPoly):
            return v
        if isinstance(v, (int, Fraction)):
            return QPoly.const(v)
        return None

    def _trim(coeffs):
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        return tuple(coeffs)

    def __add__(self, other):
        o = QPoly._lift(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        a = list(self.coeffs) + [Fraction(0)] * (n - len(self.coeffs))
        b = list(o.coeffs) + [Fraction(0)] * (n - len(o.coeffs))
        return QPoly(QPoly._trim([x + y for x, y in zip(a, b)]))

    __radd__ = __add__

    def __neg__(self):
        return QPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        o = QPoly._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = QPoly._lift(other)
        if o is None:
            return NotImplemented
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(o.coeffs):
                out[i + j] += a * b
        return QPoly(QPoly._trim(out))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and other != 0:
            return QPoly(tuple(c / other for c in self.coeffs))
        return NotImplemented

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        r = QPoly.const(1)
        for _ in range(e):
            r = r * self
        return r

    def __call__(self, q_value: int) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * q_value + c
        return acc

    def eval_int(self, q_value: int) -> int:
        v = self(q_value)
        if v.denominator != 1:
            raise ValueError(f"non-integer value {v} at q={q_value}")
        return int(v)


@lru_cache(maxsize=None)
def parse_qpoly(expr: str) -> QPoly:
    """Evaluate an expression string in q with polynomial arithmetic only."""
    value = eval(expr, {"__builtins__": {}}, {"q": QPoly.x()})  # noqa: S307 -- fixed data file
    lifted = QPoly._lift(value)
    if lifted is None:
        raise ValueError(f"expression {expr!r} is not a polynomial in q")
    return lifted


@lru_cache(maxsize=None)
def _load_data() -> dict:
    with resources.files("cycloscheme.data").joinpath("tables.json").open() as fh:
        return json.load(fh)


def _table(table_id: str) -> dict:
    tid = _ROMAN.get(table_id, table_id)
    tables = _load_data()["tables"]
    if tid not in tables:
        raise KeyError(f"unknown table {table_id!r}")
    return tables[tid]


def table_row(table_id: str, row_label, q_value: int) -> list[int]:
    """One table row evaluated at q = 2^s.  ``row_label`` is a row key
    ('degree', 'T1', ...), a printed label, or a row index."""
    table = _table(table_id)
    if isinstance(row_label, int):
        idx = row_label
    elif row_label in table["row_keys"]:
        idx = table["row_keys"].index(row_label)
    elif row_label in table["row_labels"]:
        idx = table["row_labels"].index(row_label)
    else:
        raise KeyError(f"unknown row {row_label!r}")
    return [parse_qpoly(e).eval_int(q_value) for e in table["rows"][idx]]


def appendix_matrix(scheme_id: str, which: str, q_value: int) -> list:
    """Intersection matrix B1..B3 / L1..L3 at q = 2^s.  The self-dual
    scheme has no separate L matrices: L_i requests return B_i."""
    data = _load_data()["intersection_matrices"]
    if scheme_id not in data:
        raise KeyError(f"unknown scheme {scheme_id!r}")
    if scheme_id == "thm2ii" and which.startswith("L"):
        which = "B" + which[1:]
    mats = data[scheme_id]
    if which not in mats:
        raise KeyError(f"no matrix {which!r} for {scheme_id}")
    return [[parse_qpoly(e).eval_int(q_value) for e in row] for row in mats[which]]


def _all_expressions():
    data = _load_data()
    for tid, table in data["tables"].items():
        for r, row in enumerate(table["rows"]):
            for c, expr in enumerate(row):
                yield f"table {tid} row {r} col {c}", expr
    for sid, mats in data["intersection_matrices"].items():
        for which, mat in mats.items():
            for r, row in enumerate(mat):
                for c, expr in enumerate(row):
                    yield f"{sid} {which} ({r},{c})", expr


def integrality_check(q_values=(2, 4, 8, 16)) -> Report:
    """Every transcribed entry must evaluate to an integer at q = 2^s."""
    report = Report("integrality of transcribed entries")
    bad = []
    for where, expr in _all_expressions():
        poly = parse_qpoly(expr)
        for q in q_values:
            if poly(q).denominator != 1:
                bad.append(f"{where} at q={q}")
    report.add(f"all entries integral at q in {tuple(q_values)}", not bad,
               "; ".join(bad[:3]))
    return report


def row_sum_identity_check() -> Report:
    """Polynomial identities: nonprincipal table rows sum to 0, and every
    row of B_i (resp. L_i) sums to the degree n_i of the matching scheme."""
    report = Report("row-sum polynomial identities")
    zero = QPoly.const(0)
    bad = []
    for tid in TABLE_IDS:
        table = _table(tid)
        for r in range(1, len(table["rows"])):
            total = zero
            for expr in table["rows"][r]:
                total = total + parse_qpoly(expr)
            if total != zero:
                bad.append(f"table {tid} row {r}")
    report.add("nonprincipal table rows sum to 0 identically", not bad, "; ".join(bad))

    degree_of = {"B": {sid: _table(sid)["rows"][0] for sid in ("thm1", "thm2i", "thm2ii")},
                 "L": {"thm1": _table("dual1")["rows"][0],
                       "thm2i": _table("dual2i")["rows"][0],
                       "thm2ii": _table("thm2ii")["rows"][0]}}
    bad = []
    data = _load_data()["intersection_matrices"]
    for sid, mats in data.items():
        for which, mat in mats.items():
            n_i = parse_qpoly(degree_of[which[0]][sid][int(which[1])])
            for r, row in enumerate(mat):
                total = zero
                for expr in row:
                    total = total + parse_qpoly(expr)
                if total != n_i:
                    bad.append(f"{sid} {which} row {r}")
    report.add("every B_i/L_i row sums to the degree n_i identically", not bad,
               "; ".join(bad))
    return report


# ---------------------------------------------------------------------------
# reconciliation against computed schemes
# ---------------------------------------------------------------------------

def _expected_row_groups(tower: FieldTower, scheme_id: str) -> list:
    """The residue groups labelling the nonprincipal table rows, in table order."""
    part = get_partition(tower)
    M = tower.M
    T1 = frozenset(part.T1)
    if scheme_id == "thm1":
        minus_T1 = frozenset((-i) % M for i in part.T1)
        return [frozenset({0}), minus_T1, frozenset(range(M)) - minus_T1 - {0}]
    if scheme_id == "thm2i":
        return [frozenset({0}), T1, frozenset(range(M)) - T1 - {0}]
    if scheme_id == "thm2ii":
        return [T1, frozenset(part.T2), frozenset(part.T3)]
    raise SchemeError(f"unknown scheme id {scheme_id!r}")


def _relabel(mats: list, perm: list) -> list:
    """Intersection matrices under a relabelling of the classes."""
    return [[[mats[perm[i]][perm[k]][perm[j]] for j in range(len(perm))]
             for k in range(len(perm))] for i in range(len(perm))]


def reconcile(tower: FieldTower, scheme_id: str) -> Report:
    """Compare a computed scheme (and its dual) against the transcribed
    tables and intersection matrices, reporting the first mismatching
    coordinate and the row-label correspondence used."""
    q = 1 << tower.s
    record = build_scheme(tower, scheme_id)
    report = Report(f"published parameters vs computed, {scheme_id} (s={tower.s})")
    report.add("fusion verified as a 3-class scheme", record.is_scheme)
    if not record.is_scheme:
        return report

    table = _table(scheme_id)
    report.add("degree row matches the table",
               record.degrees == table_row(scheme_id, "degree", q),
               f"computed {record.degrees}")
    groups = _expected_row_groups(tower, scheme_id)
    row_map = []
    ok = True
    detail = ""
    for t, grp in enumerate(groups):
        try:
            l = record.dual_sets.index(grp)
        except ValueError:
            ok = False
            detail = f"no dual class matches the row-{t + 1} residue group"
            break
        row_map.append(l)
        expected = table_row(scheme_id, t + 1, q)
        if record.P[1 + l] != expected:
            ok = False
            detail = f"row {t + 1}: computed {record.P[1 + l]}, table {expected}"
            break
    report.add("nonprincipal P rows match the table "
               f"(table row -> computed row {[1 + l for l in row_map]})", ok, detail)

    bad = ""
    for i in (1, 2, 3):
        expected = appendix_matrix(scheme_id, f"B{i}", q)
        if record.B[i] != expected:
            bad = f"B{i}: computed {record.B[i]}"
            break
    report.add("intersection matrices B1..B3 match", not bad, bad)

    # dual scheme: relabel its classes to the published D_k order before
    # comparing the dual table and the L matrices
    dual = build_dual_scheme(tower, record)
    report.add("dual fusion verified as a 3-class scheme", dual.is_scheme)
    if not dual.is_scheme:
        return report
    try:
        perm = [0] + [1 + dual.pattern_sets.index(g) for g in groups]
    except ValueError:
        report.add("dual classes match the published D_k index groups", False,
                   f"dual classes {sorted(map(sorted, dual.pattern_sets))}")
        return report
    report.add("dual classes match the published D_k index groups", True,
               f"D_k -> computed class {perm[1:]}")

    dual_table_id = {"thm1": "dual1", "thm2i": "dual2i", "thm2ii": "thm2ii"}[scheme_id]
    exp_deg = table_row(dual_table_id, "degree", q)
    got_deg = [dual.degrees[perm[c]] for c in range(4)]
    report.add("dual degree row matches the table", got_deg == exp_deg,
               f"computed {got_deg}, table {exp_deg}")
    part_blocks = [frozenset(b) for b in
                   (get_partition(tower).T1, get_partition(tower).T2,
                    get_partition(tower).T3)]
    ok = True
    detail = ""
    for t, grp in enumerate(part_blocks):
        # rows of the dual table are labelled a in T_k; the dual-of-dual
        # classes are the original blocks, so they name the dual's P rows
        try:
            l = dual.dual_sets.index(grp)
        except ValueError:
            ok, detail = False, f"dual census group != T{t + 1}"
            break
        expected = table_row(dual_table_id, t + 1, q)
        got = [dual.P[1 + l][perm[c]] for c in range(4)]
        if got != expected:
            ok, detail = False, f"row a in T{t + 1}: computed {got}, table {expected}"
            break
    report.add("dual table rows match", ok, detail)

    relabelled = _relabel(dual.B, perm)
    bad = ""
    for i in (1, 2, 3):
        expected = appendix_matrix(scheme_id, f"L{i}", q)
        if relabelled[i] != expected:
            bad = f"L{i}: computed {relabelled[i]}"
            break
    report.add("intersection matrices L1..L3 match", not bad, bad)
    if scheme_id == "thm2ii":
        report.add("self-dual: L_i coincide with B_i",
                   all(relabelled[i] == record.B[i] for i in range(4)))
    return report
