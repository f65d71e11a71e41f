"""Golden catalog: explicit reflection matrices for small (m, n).

Each item pairs a family-constructor call with an independently
hand-coded matrix, entry by entry; the regression test draws random
parameters and compares the two entrywise at random spectral points.

Four systematic slips in the source displays are corrected here (each is
rejected by the reflection-equation oracle; see tests/test_solutions.py
for the demonstrations and the README for discussion):

  * Xi14's numerator is c1*c4 (per the family definitions), not c2*c4.
  * The trigonometric all-equal-diagonal chi flavor is e^{-u} sinh 2u
    when the diagonal is c0 e^{-u} (q=0) and e^{+u} sinh 2u when it is
    c0 e^{+u} (q=m+n); the displays carry the two swapped.
  * The trigonometric m < q < m+n chi entries are plain sinh u (W = 1),
    not e^{u} sinh 2u.
  * In the mirrored fermionic rows/columns of the nondiagonal rational
    matrices, rows mirror with c2/c4 and columns with -(c1/c3), not the
    other way around.

``cg``/``ch`` carry the complex prefactors (upper rows / lower slots);
Grassmann generators come from the same registry the constructor uses.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

from .grassmann import gen
from .supermatrix import GradingProfile, SuperMatrix
from .solutions import FamilyParams, make_registry, build_k


@dataclass(frozen=True)
class CatalogItem:
    id: str
    m: int
    n: int
    family: str
    structure: dict          # FamilyParams kwargs beyond (family, m, n, c, cg, ch)
    n_c: int                 # how many c parameters the family uses
    expected: object         # fn(u, c, cg, ch, G) -> {(A, B): value}, 1-based
    note: str = ""

    def params(self, c, cg=None, ch=None):
        return FamilyParams(self.family, self.m, self.n, c=tuple(c),
                            cg=cg, ch=ch, **self.structure)

    def build(self, c, cg=None, ch=None, registry=None):
        return build_k(self.params(c, cg, ch), registry=registry)

    def expected_evaluator(self, c, cg, ch, registry):
        G = {lab: gen(registry, lab) for lab in registry.labels}
        prof = GradingProfile(self.m, self.n)

        def evaluator(u):
            entries = {}
            for (A, B), val in self.expected(u, list(map(complex, c)),
                                             cg, ch, G).items():
                entries[(A - 1, B - 1)] = val
            return SuperMatrix.from_entries(prof, 1, entries, registry)

        return evaluator


def _rat_diag(u, c0, pattern):
    return {(A, A): c0 + s * u for A, s in enumerate(pattern, start=1)}


def _trig_diag(u, c0, pattern):
    return {(A, A): c0 * cmath.exp(s * u) for A, s in enumerate(pattern, start=1)}


# -- rational, diagonal bosonic parts -------------------------------------


def _rat11_q00(u, c, cg, ch, G):
    w = u * (u - c[0])
    out = _rat_diag(u, c[0], [-1, -1])
    out[(1, 2)] = G["G_1"].scale(cg[1] * w)
    out[(2, 1)] = G["H_2_1"].scale(ch[(2, 1)] * w)
    return out


def _rat11_q02(u, c, cg, ch, G):
    w = u * (u + c[0])
    out = _rat_diag(u, c[0], [1, 1])
    out[(1, 2)] = G["G_1"].scale(cg[1] * w)
    out[(2, 1)] = G["H_2_1"].scale(ch[(2, 1)] * w)
    return out


def _rat11_q12(u, c, cg, ch, G):
    out = _rat_diag(u, c[0], [-1, 1])
    out[(1, 2)] = G["G_1"].scale(cg[1] * u)
    out[(2, 1)] = G["H_2_1"].scale(ch[(2, 1)] * u)
    return out


def _rat21_q00(u, c, cg, ch, G):
    w = u * (u - c[0])
    out = _rat_diag(u, c[0], [-1, -1, -1])
    out[(1, 3)] = G["G_1"].scale(cg[1] * w)
    out[(2, 3)] = G["G_2"].scale(cg[2] * w)
    out[(3, 1)] = G["H_3_1"].scale(ch[(3, 1)] * w)
    out[(3, 2)] = G["H_3_2"].scale(ch[(3, 2)] * w)
    return out


def _rat21_q01(u, c, cg, ch, G):
    out = _rat_diag(u, c[0], [1, -1, -1])
    out[(1, 3)] = G["G_1"].scale(cg[1] * u)
    out[(3, 1)] = G["H_3_1"].scale(ch[(3, 1)] * u)
    return out


def _rat21_q02(u, c, cg, ch, G):
    out = _rat_diag(u, c[0], [1, 1, -1])
    out[(1, 3)] = G["G_1"].scale(cg[1] * u)
    out[(2, 3)] = G["G_2"].scale(cg[2] * u)
    out[(3, 1)] = G["H_3_1"].scale(ch[(3, 1)] * u)
    out[(3, 2)] = G["H_3_2"].scale(ch[(3, 2)] * u)
    return out


def _rat21_q03(u, c, cg, ch, G):
    w = u * (u + c[0])
    out = _rat_diag(u, c[0], [1, 1, 1])
    out[(1, 3)] = G["G_1"].scale(cg[1] * w)
    out[(2, 3)] = G["G_2"].scale(cg[2] * w)
    out[(3, 1)] = G["H_3_1"].scale(ch[(3, 1)] * w)
    out[(3, 2)] = G["H_3_2"].scale(ch[(3, 2)] * w)
    return out


def _rat21_q12(u, c, cg, ch, G):
    out = _rat_diag(u, c[0], [-1, 1, -1])
    out[(2, 3)] = G["G_2"].scale(cg[2] * u)
    out[(3, 2)] = G["H_3_2"].scale(ch[(3, 2)] * u)
    return out


def _rat22_full(u, c, cg, ch, G, w, pattern):
    out = _rat_diag(u, c[0], pattern)
    for b in (1, 2):
        for s in (3, 4):
            out[(b, s)] = G[f"G_{b}"].scale(cg[b] * w)
    for g in (3, 4):
        for b in (1, 2):
            out[(g, b)] = G[f"H_{g}_{b}"].scale(ch[(g, b)] * w)
    return out


def _rat22_q00(u, c, cg, ch, G):
    return _rat22_full(u, c, cg, ch, G, u * (u - c[0]), [-1, -1, -1, -1])


def _rat22_q04(u, c, cg, ch, G):
    return _rat22_full(u, c, cg, ch, G, u * (u + c[0]), [1, 1, 1, 1])


def _rat22_q02(u, c, cg, ch, G):
    return _rat22_full(u, c, cg, ch, G, u, [1, 1, -1, -1])


def _rat22_q01(u, c, cg, ch, G):
    out = _rat_diag(u, c[0], [1, -1, -1, -1])
    out[(1, 3)] = G["G_1"].scale(cg[1] * u)
    out[(1, 4)] = G["G_1"].scale(cg[1] * u)
    out[(3, 1)] = G["H_3_1"].scale(ch[(3, 1)] * u)
    out[(4, 1)] = G["H_4_1"].scale(ch[(4, 1)] * u)
    return out


def _rat22_q03(u, c, cg, ch, G):
    out = _rat_diag(u, c[0], [1, 1, 1, -1])
    out[(1, 4)] = G["G_1"].scale(cg[1] * u)
    out[(2, 4)] = G["G_2"].scale(cg[2] * u)
    out[(4, 1)] = G["H_4_1"].scale(ch[(4, 1)] * u)
    out[(4, 2)] = G["H_4_2"].scale(ch[(4, 2)] * u)
    return out


def _rat22_q12(u, c, cg, ch, G):
    out = _rat_diag(u, c[0], [-1, 1, -1, -1])
    out[(2, 3)] = G["G_2"].scale(cg[2] * u)
    out[(2, 4)] = G["G_2"].scale(cg[2] * u)
    out[(3, 2)] = G["H_3_2"].scale(ch[(3, 2)] * u)
    out[(4, 2)] = G["H_4_2"].scale(ch[(4, 2)] * u)
    return out


def _rat22_q13(u, c, cg, ch, G):
    out = _rat_diag(u, c[0], [-1, 1, 1, -1])
    out[(1, 3)] = G["G_1"].scale(cg[1] * u)
    out[(2, 4)] = G["G_2"].scale(cg[2] * u)
    out[(3, 1)] = G["H_3_1"].scale(ch[(3, 1)] * u)
    out[(4, 2)] = G["H_4_2"].scale(ch[(4, 2)] * u)
    return out


def _rat22_q23(u, c, cg, ch, G):
    out = _rat_diag(u, c[0], [-1, -1, 1, -1])
    out[(3, 1)] = G["H_3_1"].scale(ch[(3, 1)] * u)
    out[(3, 2)] = G["H_3_2"].scale(ch[(3, 2)] * u)
    return out


def _rat22_q34(u, c, cg, ch, G):
    out = _rat_diag(u, c[0], [-1, -1, -1, 1])
    out[(4, 1)] = G["H_4_1"].scale(ch[(4, 1)] * u)
    out[(4, 2)] = G["H_4_2"].scale(ch[(4, 2)] * u)
    return out


# -- trigonometric, diagonal bosonic parts --------------------------------

def _chi_minus(u):
    # corrected all-minus flavor: e^{-u} sinh 2u (printed as e^{+u} sinh 2u)
    return cmath.exp(-u) * cmath.sinh(2 * u)


def _chi_plus(u):
    return cmath.exp(u) * cmath.sinh(2 * u)


def _trig_full(u, c, cg, ch, G, chi, pattern, m, n):
    out = _trig_diag(u, c[0], pattern)
    for b in range(1, m + 1):
        for s in range(m + 1, m + n + 1):
            out[(b, s)] = G[f"G_{b}"].scale(cg[b] * chi)
    for g in range(m + 1, m + n + 1):
        for b in range(1, m + 1):
            out[(g, b)] = G[f"H_{g}_{b}"].scale(ch[(g, b)] * chi)
    return out


def _trig11_q0(u, c, cg, ch, G):
    return _trig_full(u, c, cg, ch, G, _chi_minus(u), [-1, -1], 1, 1)


def _trig11_q1(u, c, cg, ch, G):
    return _trig_full(u, c, cg, ch, G, cmath.sinh(u), [1, -1], 1, 1)


def _trig11_q2(u, c, cg, ch, G):
    return _trig_full(u, c, cg, ch, G, _chi_plus(u), [1, 1], 1, 1)


def _trig21_q0(u, c, cg, ch, G):
    return _trig_full(u, c, cg, ch, G, _chi_minus(u), [-1, -1, -1], 2, 1)


def _trig21_q1(u, c, cg, ch, G):
    out = _trig_diag(u, c[0], [1, -1, -1])
    out[(1, 3)] = G["G_1"].scale(cg[1] * cmath.sinh(u))
    out[(3, 1)] = G["H_3_1"].scale(ch[(3, 1)] * cmath.sinh(u))
    return out


def _trig21_q2(u, c, cg, ch, G):
    return _trig_full(u, c, cg, ch, G, cmath.sinh(u), [1, 1, -1], 2, 1)


def _trig21_q3(u, c, cg, ch, G):
    return _trig_full(u, c, cg, ch, G, _chi_plus(u), [1, 1, 1], 2, 1)


def _trig22_q0(u, c, cg, ch, G):
    return _trig_full(u, c, cg, ch, G, _chi_minus(u), [-1] * 4, 2, 2)


def _trig22_q1(u, c, cg, ch, G):
    out = _trig_diag(u, c[0], [1, -1, -1, -1])
    sh = cmath.sinh(u)
    out[(1, 3)] = G["G_1"].scale(cg[1] * sh)
    out[(1, 4)] = G["G_1"].scale(cg[1] * sh)
    out[(3, 1)] = G["H_3_1"].scale(ch[(3, 1)] * sh)
    out[(4, 1)] = G["H_4_1"].scale(ch[(4, 1)] * sh)
    return out


def _trig22_q2(u, c, cg, ch, G):
    return _trig_full(u, c, cg, ch, G, cmath.sinh(u), [1, 1, -1, -1], 2, 2)


def _trig22_q3(u, c, cg, ch, G):
    # class 3: upper block zero, lower row 4; chi = sinh u (printed as
    # e^{u} sinh 2u, rejected by the oracle)
    out = _trig_diag(u, c[0], [1, 1, 1, -1])
    sh = cmath.sinh(u)
    out[(4, 1)] = G["H_4_1"].scale(ch[(4, 1)] * sh)
    out[(4, 2)] = G["H_4_2"].scale(ch[(4, 2)] * sh)
    return out


def _trig22_q4(u, c, cg, ch, G):
    # the printed q=4 block repeats the q=0 diagonal; corrected to c0 e^{+u}
    return _trig_full(u, c, cg, ch, G, _chi_plus(u), [1] * 4, 2, 2)


# -- rational, nondiagonal bosonic parts -----------------------------------


def _xi_parts(u, c):
    c0, c1, c2, c3, c4 = c
    denom = c3 * c4 - c1 * c2
    ratio = (c1 * c2 + c3 * c4) / denom
    return {
        "pp": c0 + u * ratio,
        "mm": c0 - u * ratio,
        # corrected numerator c1*c4 (printed c2*c4); equals
        # 2 u c1 c4 / (c1 c2 - c3 c4)
        "14": -2 * u * c1 * c4 / denom,
        "23": 2 * u * c2 * c3 / denom,
    }


def _ndrat21(u, c, cg, ch, G):
    xi = _xi_parts(u, c)
    row_f = c[2] / c[4]        # corrected mirror factors (see module doc)
    col_f = -c[1] / c[3]
    q1 = G["G_1"].scale(cg[1] * u)
    h31 = G["H_3_1"].scale(ch[(3, 1)] * u)
    return {
        (1, 1): xi["pp"], (2, 2): xi["mm"], (1, 2): xi["14"], (2, 1): xi["23"],
        (3, 3): c[0] - u,
        (1, 3): q1, (2, 3): q1.scale(row_f),
        (3, 1): h31, (3, 2): h31.scale(col_f),
    }


def _ndrat32(u, c, cg, ch, G):
    xi = _xi_parts(u, c)
    row_f = c[2] / c[4]
    col_f = -c[1] / c[3]
    q1 = G["G_1"].scale(cg[1] * u)
    h41 = G["H_4_1"].scale(ch[(4, 1)] * u)
    h51 = G["H_5_1"].scale(ch[(5, 1)] * u)
    out = {
        (1, 1): xi["pp"], (3, 3): xi["mm"], (1, 3): xi["14"], (3, 1): xi["23"],
        (2, 2): c[0] - u, (4, 4): c[0] - u, (5, 5): c[0] - u,
        (4, 1): h41, (5, 1): h51,
        (4, 3): h41.scale(col_f), (5, 3): h51.scale(col_f),
    }
    for s in (4, 5):
        out[(1, s)] = q1
        out[(3, s)] = q1.scale(row_f)
    return out


def _ndrat41_L1(u, c, cg, ch, G):
    xi = _xi_parts(u, c)
    row_f = c[2] / c[4]
    col_f = -c[1] / c[3]
    q1 = G["G_1"].scale(cg[1] * u)
    h51 = G["H_5_1"].scale(ch[(5, 1)] * u)
    return {
        (1, 1): xi["pp"], (4, 4): xi["mm"], (1, 4): xi["14"], (4, 1): xi["23"],
        (2, 2): c[0] - u, (3, 3): c[0] - u, (5, 5): c[0] - u,
        (1, 5): q1, (4, 5): q1.scale(row_f),
        (5, 1): h51, (5, 4): h51.scale(col_f),
    }


def _ndrat41_L2(u, c, cg, ch, G):
    xi = _xi_parts(u, c)
    row_f = c[2] / c[4]
    col_f = -c[1] / c[3]
    q1 = G["G_1"].scale(cg[1] * u)
    q2 = G["G_2"].scale(cg[2] * u)
    h51 = G["H_5_1"].scale(ch[(5, 1)] * u)
    h52 = G["H_5_2"].scale(ch[(5, 2)] * u)
    return {
        (1, 1): xi["pp"], (4, 4): xi["mm"], (1, 4): xi["14"], (4, 1): xi["23"],
        (2, 2): xi["pp"], (3, 3): xi["mm"], (2, 3): xi["14"], (3, 2): xi["23"],
        (5, 5): c[0] - u,
        (1, 5): q1, (2, 5): q2,
        (3, 5): q2.scale(row_f), (4, 5): q1.scale(row_f),
        (5, 1): h51, (5, 2): h52,
        (5, 3): h52.scale(col_f), (5, 4): h51.scale(col_f),
    }


CATALOG = [
    CatalogItem("rat.1_1.q0_0", 1, 1, "ferm_rat", {"q1": 0, "q2": 0}, 1, _rat11_q00),
    CatalogItem("rat.1_1.q0_2", 1, 1, "ferm_rat", {"q1": 0, "q2": 2}, 1, _rat11_q02),
    CatalogItem("rat.1_1.q1_2", 1, 1, "ferm_rat", {"q1": 1, "q2": 2}, 1, _rat11_q12),
    CatalogItem("rat.2_1.q0_0", 2, 1, "ferm_rat", {"q1": 0, "q2": 0}, 1, _rat21_q00),
    CatalogItem("rat.2_1.q0_1", 2, 1, "ferm_rat", {"q1": 0, "q2": 1}, 1, _rat21_q01),
    CatalogItem("rat.2_1.q0_2", 2, 1, "ferm_rat", {"q1": 0, "q2": 2}, 1, _rat21_q02),
    CatalogItem("rat.2_1.q0_3", 2, 1, "ferm_rat", {"q1": 0, "q2": 3}, 1, _rat21_q03),
    CatalogItem("rat.2_1.q1_2", 2, 1, "ferm_rat", {"q1": 1, "q2": 2}, 1, _rat21_q12),
    CatalogItem("rat.2_2.q0_0", 2, 2, "ferm_rat", {"q1": 0, "q2": 0}, 1, _rat22_q00),
    CatalogItem("rat.2_2.q0_1", 2, 2, "ferm_rat", {"q1": 0, "q2": 1}, 1, _rat22_q01),
    CatalogItem("rat.2_2.q0_2", 2, 2, "ferm_rat", {"q1": 0, "q2": 2}, 1, _rat22_q02),
    CatalogItem("rat.2_2.q0_3", 2, 2, "ferm_rat", {"q1": 0, "q2": 3}, 1, _rat22_q03),
    CatalogItem("rat.2_2.q0_4", 2, 2, "ferm_rat", {"q1": 0, "q2": 4}, 1, _rat22_q04),
    CatalogItem("rat.2_2.q1_2", 2, 2, "ferm_rat", {"q1": 1, "q2": 2}, 1, _rat22_q12),
    CatalogItem("rat.2_2.q1_3", 2, 2, "ferm_rat", {"q1": 1, "q2": 3}, 1, _rat22_q13),
    CatalogItem("rat.2_2.q2_3", 2, 2, "ferm_rat", {"q1": 2, "q2": 3}, 1, _rat22_q23),
    CatalogItem("rat.2_2.q3_4", 2, 2, "ferm_rat", {"q1": 3, "q2": 4}, 1, _rat22_q34),
    CatalogItem("trig.1_1.q0", 1, 1, "ferm_trig", {"q": 0}, 1, _trig11_q0,
                note="chi flavor corrected to e^{-u} sinh 2u"),
    CatalogItem("trig.1_1.q1", 1, 1, "ferm_trig", {"q": 1}, 1, _trig11_q1),
    CatalogItem("trig.1_1.q2", 1, 1, "ferm_trig", {"q": 2}, 1, _trig11_q2,
                note="chi flavor corrected to e^{+u} sinh 2u"),
    CatalogItem("trig.2_1.q0", 2, 1, "ferm_trig", {"q": 0}, 1, _trig21_q0,
                note="chi flavor corrected to e^{-u} sinh 2u"),
    CatalogItem("trig.2_1.q1", 2, 1, "ferm_trig", {"q": 1}, 1, _trig21_q1),
    CatalogItem("trig.2_1.q2", 2, 1, "ferm_trig", {"q": 2}, 1, _trig21_q2),
    CatalogItem("trig.2_1.q3", 2, 1, "ferm_trig", {"q": 3}, 1, _trig21_q3,
                note="chi flavor corrected to e^{+u} sinh 2u"),
    CatalogItem("trig.2_2.q0", 2, 2, "ferm_trig", {"q": 0}, 1, _trig22_q0,
                note="chi flavor corrected to e^{-u} sinh 2u"),
    CatalogItem("trig.2_2.q1", 2, 2, "ferm_trig", {"q": 1}, 1, _trig22_q1),
    CatalogItem("trig.2_2.q2", 2, 2, "ferm_trig", {"q": 2}, 1, _trig22_q2),
    CatalogItem("trig.2_2.q3", 2, 2, "ferm_trig", {"q": 3}, 1, _trig22_q3,
                note="chi corrected to sinh u (W = 1)"),
    CatalogItem("trig.2_2.q4", 2, 2, "ferm_trig", {"q": 4}, 1, _trig22_q4,
                note="diagonal corrected to c0 e^{+u} (printed block repeats q=0)"),
    CatalogItem("ndrat.2_1", 2, 1, "ferm_rat_nd",
                {"nd_class": 1, "variant": "I", "L": 1}, 5, _ndrat21,
                note="rows/cols of each conjugate pair are mirrored; "
                     "Xi14 numerator and mirror factors corrected"),
    CatalogItem("ndrat.3_2", 3, 2, "ferm_rat_nd",
                {"nd_class": 1, "variant": "I", "L": 1}, 5, _ndrat32,
                note="Xi14 numerator and mirror factors corrected"),
    CatalogItem("ndrat.4_1.L1", 4, 1, "ferm_rat_nd",
                {"nd_class": 1, "variant": "I", "L": 1}, 5, _ndrat41_L1,
                note="Xi14 numerator and mirror factors corrected"),
    CatalogItem("ndrat.4_1.L2", 4, 1, "ferm_rat_nd",
                {"nd_class": 1, "variant": "I", "L": 2}, 5, _ndrat41_L2,
                note="Xi14 numerator and mirror factors corrected"),
]


def appendix_catalog():
    """All golden items, in catalog order."""
    return list(CATALOG)


def catalog_ids():
    return [item.id for item in CATALOG]


def catalog_item(item_id):
    for item in CATALOG:
        if item.id == item_id:
            return item
    raise KeyError(f"unknown catalog id {item_id!r}")
