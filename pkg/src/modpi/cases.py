"""The registered 1/pi formula instances and their certified CM table data.

Each case is one identity family(t; x, b) = const/pi.  The P and W cases
carry an expected_row: the exact algebraic values (argument-map images,
prefactor h, CM points, and the modular quantities B, C and the Y-ratio)
that the verifier recomputes numerically and must recognize exactly.

Cell conventions inside a TableRow: every z/f, B, C and Y-ratio cell is a
(re, im) pair of SurdSum values; tau cells are (rational real part,
SurdSum imaginary part).  Slot order follows the certified source rows;
the two argument-map cells are matched as an unordered pair because their
slot order is not tied to the tau column (the value-to-point pairing is
pinned separately, by hauptmodul matching at the located CM points).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as Fr
from typing import Dict, Optional, Tuple

from .algebra import QuadSurd, RhsExpr, SurdSum, TableRow, parse_rhs
from .series import SeriesFamily

CONJECTURE_PROVED_HERE = "conjecture-proved-here"
PREVIOUSLY_PROVED = "previously-proved"
OPEN = "open"

STATUSES = (CONJECTURE_PROVED_HERE, PREVIOUSLY_PROVED, OPEN)


@dataclass(frozen=True)
class CaseSpec:
    """One formula instance: family, rational parameters, exact RHS."""

    id: str
    family: SeriesFamily
    t: Fr
    x: Fr
    b: Fr
    rhs: RhsExpr
    status: str
    expected_row: Optional[TableRow] = field(default=None, compare=False)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError("unknown status %r" % (self.status,))
        object.__setattr__(self, "t", Fr(self.t))
        object.__setattr__(self, "x", Fr(self.x))
        object.__setattr__(self, "b", Fr(self.b))


# --------------------------------------------------------------------------
# cell builders


def _ss(*terms) -> SurdSum:
    return SurdSum(tuple((Fr(c), int(d)) for c, d in terms))


_NOIM = _ss()


def _c(*terms):
    """Real cell."""
    return (_ss(*terms), _NOIM)


def _cc(re_terms, im_terms):
    """Complex cell."""
    return (_ss(*re_terms), _ss(*im_terms))


def _tau(re, coeff, d):
    """CM point cell re + coeff*sqrt(d)*i."""
    return (Fr(re), _ss((coeff, d)))


def _q(a, b=0, d=1) -> QuadSurd:
    return QuadSurd(Fr(a), Fr(b), d)


# --------------------------------------------------------------------------
# certified rows, family P

_ROWS: Dict[str, TableRow] = {}

_ROWS["cp1"] = TableRow(
    z_or_sqrtnegf=(_cc((("47/128", 1),), (("-45/128", 7),)),
                   _cc((("47/128", 1),), (("45/128", 7),))),
    h=_q("5/4"),
    tau_pm=(_tau("1/4", "1/4", 7), _tau("-1/4", "1/4", 7)),
    B=(_cc((("-1/4", 1),), (("-1/84", 7),)),
       _cc((("-1/4", 1),), (("1/84", 7),))),
    C=(_cc((("15/32", 7),), (("21/32", 1),)),
       _cc((("15/32", 7),), (("-21/32", 1),))),
    Yratio=(_cc((("31/32", 1),), (("-3/32", 7),)),
            _cc((("31/32", 1),), (("3/32", 7),))),
)

# Both argument-map images coincide (the x(x-4) radicand vanishes at x=4)
# and the two CM points are equivalent; all paired cells repeat.
_ROWS["p1"] = TableRow(
    z_or_sqrtnegf=(_c(("1/4", 1)), _c(("1/4", 1))),
    h=_q(0, "1/2", 3),
    tau_pm=(_tau("1/2", "1/2", 3), _tau("-1/2", "1/2", 3)),
    B=(_c(("-1/6", 1)), _c(("-1/6", 1))),
    C=(_c(("3/2", 1)), _c(("3/2", 1))),
    Yratio=(_c((1, 1)), _c((1, 1))),
)

_ROWS["cp2"] = TableRow(
    # -32*(45 -+ 17*sqrt(7))^2, expanded
    z_or_sqrtnegf=(_c((-129536, 1), (48960, 7)),
                   _c((-129536, 1), (-48960, 7))),
    h=_q(15),
    tau_pm=(_tau(0, "1/2", 7), _tau(0, "1/14", 7)),
    B=(_c(("-16/57", 1), ("8/133", 7)), _c(("-16/57", 1), ("-8/133", 7))),
    C=(_c((-672, 1), (255, 7)), _c((96, 1), ("255/7", 7))),
    Yratio=(_c(("127/7", 1), ("48/7", 7)), _c((889, 1), (-336, 7))),
)

_ROWS["cp3"] = TableRow(
    z_or_sqrtnegf=(_c((-129536, 1), (-48960, 7)),
                   _c((-129536, 1), (48960, 7))),
    h=_q(17),
    tau_pm=(_tau(0, "1/14", 7), _tau(0, "1/2", 7)),
    B=(_c(("-16/57", 1), ("-8/133", 7)), _c(("-16/57", 1), ("8/133", 7))),
    C=(_c((96, 1), ("255/7", 7)), _c((-672, 1), (255, 7))),
    Yratio=(_c((889, 1), (-336, 7)), _c(("127/7", 1), ("48/7", 7))),
)

_ROWS["cp4"] = TableRow(
    # -(9 -+ 4*sqrt(5))^2, expanded
    z_or_sqrtnegf=(_c((-161, 1), (72, 5)), _c((-161, 1), (-72, 5))),
    h=_q(3),
    tau_pm=(_tau(0, "1/2", 10), _tau(0, "1/10", 10)),
    B=(_c(("-1/4", 1), ("1/15", 5)), _c(("-1/4", 1), ("-1/15", 5))),
    C=(_c((30, 1), (-12, 5)), _c((6, 1), ("12/5", 5))),
    Yratio=(_c(("9/5", 1), ("4/5", 5)), _c((45, 1), (-20, 5))),
)

_ROWS["cp5"] = TableRow(
    z_or_sqrtnegf=(_c((-161, 1), (-72, 5)), _c((-161, 1), (72, 5))),
    h=_q(0, 1, 10),
    tau_pm=(_tau(0, "1/10", 10), _tau(0, "1/2", 10)),
    B=(_c(("-1/4", 1), ("-1/15", 5)), _c(("-1/4", 1), ("1/15", 5))),
    C=(_c((6, 1), ("12/5", 5)), _c((30, 1), (-12, 5))),
    Yratio=(_c((45, 1), (-20, 5)), _c(("9/5", 1), ("4/5", 5))),
)

_ROWS["cp6"] = TableRow(
    # -(49 -+ 20*sqrt(6))^2, expanded
    z_or_sqrtnegf=(_c((-4801, 1), (1960, 6)), _c((-4801, 1), (-1960, 6))),
    h=_q(7),
    tau_pm=(_tau(0, "3/2", 2), _tau(0, "1/6", 2)),
    B=(_c(("-1/4", 1), ("1/14", 6)), _c(("-1/4", 1), ("-1/14", 6))),
    C=(_c((210, 1), (-84, 6)), _c(("70/3", 1), ("28/3", 6))),
    Yratio=(_c(("49/9", 1), ("20/9", 6)), _c((441, 1), (-180, 6))),
)

_ROWS["cp7"] = TableRow(
    z_or_sqrtnegf=(_c((-4801, 1), (-1960, 6)), _c((-4801, 1), (1960, 6))),
    h=_q(0, 5, 2),
    tau_pm=(_tau(0, "1/6", 2), _tau(0, "3/2", 2)),
    B=(_c(("-1/4", 1), ("-1/14", 6)), _c(("-1/4", 1), ("1/14", 6))),
    C=(_c(("70/3", 1), ("28/3", 6)), _c((210, 1), (-84, 6))),
    Yratio=(_c((441, 1), (-180, 6)), _c(("49/9", 1), ("20/9", 6))),
)

# For this row 1 - 16tx = 1/99, so h = sqrt(99) = 3*sqrt(11), and the
# argument-map images are -(99 -+ 70*sqrt(2))^2: note 99 + 70*sqrt(2)
# = (1+sqrt(2))^6 and the Y-ratio cells (99+70*sqrt(2))/11 and
# 11*(99-70*sqrt(2)) come from the same unit.
_ROWS["cp8"] = TableRow(
    z_or_sqrtnegf=(_c((-19601, 1), (13860, 2)), _c((-19601, 1), (-13860, 2))),
    h=_q(0, 3, 11),
    tau_pm=(_tau(0, "1/2", 22), _tau(0, "1/22", 22)),
    B=(_c(("-1/4", 1), ("17/132", 2)), _c(("-1/4", 1), ("-17/132", 2))),
    C=(_c((-462, 1), (330, 2)), _c((42, 1), (30, 2))),
    Yratio=(_c((9, 1), ("70/11", 2)), _c((1089, 1), (-770, 2))),
)

_ROWS["cp9"] = TableRow(
    z_or_sqrtnegf=(_c((-19601, 1), (-13860, 2)), _c((-19601, 1), (13860, 2))),
    h=_q(10),
    tau_pm=(_tau(0, "1/22", 22), _tau(0, "1/2", 22)),
    B=(_c(("-1/4", 1), ("-17/132", 2)), _c(("-1/4", 1), ("17/132", 2))),
    C=(_c((42, 1), (30, 2)), _c((-462, 1), (330, 2))),
    Yratio=(_c((1089, 1), (-770, 2)), _c((9, 1), ("70/11", 2))),
)

_ROWS["cp10"] = TableRow(
    # -(45 -+ 17*sqrt(7))^2/128, expanded
    z_or_sqrtnegf=(_c(("-253/8", 1), ("765/64", 7)),
                   _c(("-253/8", 1), ("-765/64", 7))),
    h=_q(0, "3/2", 2),
    tau_pm=(_tau(0, 1, 7), _tau(0, "1/7", 7)),
    B=(_c(("-25/114", 1), ("8/133", 7)), _c(("-25/114", 1), ("-8/133", 7))),
    C=(_c((0, 1), ("51/8", 14), ("-105/8", 2)),
       _c((0, 1), ("51/56", 14), ("105/56", 2))),
    Yratio=(_c(("8/7", 1), ("3/7", 7)), _c((56, 1), (-21, 7))),
)

_ROWS["cp11"] = TableRow(
    z_or_sqrtnegf=(_c(("-253/8", 1), ("-765/64", 7)),
                   _c(("-253/8", 1), ("765/64", 7))),
    h=_q("17/8"),
    tau_pm=(_tau(0, "1/7", 7), _tau(0, 1, 7)),
    B=(_c(("-25/114", 1), ("-8/133", 7)), _c(("-25/114", 1), ("8/133", 7))),
    C=(_c((0, 1), ("51/56", 14), ("105/56", 2)),
       _c((0, 1), ("51/8", 14), ("-105/8", 2))),
    Yratio=(_c((56, 1), (-21, 7)), _c(("8/7", 1), ("3/7", 7))),
)

_ROWS["p2"] = TableRow(
    z_or_sqrtnegf=(_c((-416, 1), (-240, 3)), _c((-416, 1), (240, 3))),
    h=_q(5),
    tau_pm=(_tau(0, "1/6", 3), _tau(0, "1/2", 3)),
    B=(_c(("-10/33", 1), ("-2/33", 3)), _c(("-10/33", 1), ("2/33", 3))),
    C=(_c((8, 1), (5, 3)), _c((-24, 1), (15, 3))),
    Yratio=(_c((21, 1), (-12, 3)), _c(("7/3", 1), ("4/3", 3))),
)

_ROWS["p3"] = TableRow(
    z_or_sqrtnegf=(_c((-17, 1), (12, 2)), _c((-17, 1), (-12, 2))),
    h=_q(0, 1, 3),
    tau_pm=(_tau(0, "1/2", 6), _tau(0, "1/6", 6)),
    B=(_c(("-1/4", 1), ("1/12", 2)), _c(("-1/4", 1), ("-1/12", 2))),
    C=(_c((-6, 1), (6, 2)), _c((2, 1), (2, 2))),
    Yratio=(_c((1, 1), ("2/3", 2)), _c((9, 1), (-6, 2))),
)

_ROWS["p4"] = TableRow(
    z_or_sqrtnegf=(_c((-17, 1), (-12, 2)), _c((-17, 1), (12, 2))),
    h=_q(2),
    tau_pm=(_tau(0, "1/6", 6), _tau(0, "1/2", 6)),
    B=(_c(("-1/4", 1), ("-1/12", 2)), _c(("-1/4", 1), ("1/12", 2))),
    C=(_c((2, 1), (2, 2)), _c((-6, 1), (6, 2))),
    Yratio=(_c((9, 1), (-6, 2)), _c((1, 1), ("2/3", 2))),
)

_ROWS["p5"] = TableRow(
    z_or_sqrtnegf=(_c(("-13/8", 1), ("15/16", 3)),
                   _c(("-13/8", 1), ("-15/16", 3))),
    h=_q(0, "1/2", 6),
    tau_pm=(_tau(0, 1, 3), _tau(0, "1/3", 3)),
    B=(_c(("-13/66", 1), ("2/33", 3)), _c(("-13/66", 1), ("-2/33", 3))),
    C=(_c((0, 1), ("15/4", 2), ("-3/4", 6)),
       _c((0, 1), ("5/4", 2), ("1/4", 6))),
    Yratio=(_c(("2/3", 1), ("1/3", 3)), _c((6, 1), (-3, 3))),
)

_ROWS["p6"] = TableRow(
    z_or_sqrtnegf=(_c(("-13/8", 1), ("-15/16", 3)),
                   _c(("-13/8", 1), ("15/16", 3))),
    h=_q("5/4"),
    tau_pm=(_tau(0, "1/3", 3), _tau(0, 1, 3)),
    B=(_c(("-13/66", 1), ("-2/33", 3)), _c(("-13/66", 1), ("2/33", 3))),
    C=(_c((0, 1), ("5/4", 2), ("1/4", 6)),
       _c((0, 1), ("15/4", 2), ("-3/4", 6))),
    Yratio=(_c((6, 1), (-3, 3)), _c(("2/3", 1), ("1/3", 3))),
)

_ROWS["p7"] = TableRow(
    z_or_sqrtnegf=(_c(("47/128", 1), ("-21/128", 5)),
                   _c(("47/128", 1), ("21/128", 5))),
    h=_q("7/8"),
    tau_pm=(_tau("-1/2", "1/2", 15), _tau("1/2", "1/6", 15)),
    B=(_c(("-3/22", 1), ("4/165", 5)), _c(("-3/22", 1), ("-4/165", 5))),
    C=(_c(("15/16", 1), ("21/16", 5)), _c(("-5/16", 1), ("7/16", 5))),
    Yratio=(_c(("1/2", 1), ("1/6", 5)), _c(("9/2", 1), ("-3/2", 5))),
)

_ROWS["p8"] = TableRow(
    z_or_sqrtnegf=(_c(("47/128", 1), ("21/128", 5)),
                   _c(("47/128", 1), ("-21/128", 5))),
    h=_q(0, "1/2", 3),
    tau_pm=(_tau("1/2", "1/6", 15), _tau("-1/2", "1/2", 15)),
    B=(_c(("-3/22", 1), ("-4/165", 5)), _c(("-3/22", 1), ("4/165", 5))),
    C=(_c(("-5/16", 1), ("7/16", 5)), _c(("15/16", 1), ("21/16", 5))),
    Yratio=(_c(("9/2", 1), ("-3/2", 5)), _c(("1/2", 1), ("1/6", 5))),
)

# --------------------------------------------------------------------------
# certified rows, family W.  The argument-map cells here are square roots
# sqrt(f) of the two images (both images lie in (0,1)).

_ROWS["cw2"] = TableRow(
    z_or_sqrtnegf=(_c(("275/1083", 1), ("112/1083", 6)),
                   _c(("275/1083", 1), ("-112/1083", 6))),
    h=_q(0, "9/133", 133),
    tau_pm=(_tau(0, "1/2", 42), _tau(0, "1/6", 42)),
    B=(_c(("-13/140", 1), ("1/56", 6)), _c(("-13/140", 1), ("-1/56", 6))),
    C=(_c((0, 1), ("4620/1083", 2), ("280/1083", 3)),
       _c((0, 1), ("4620/3249", 2), ("-280/3249", 3))),
    Yratio=(_c(("31/57", 1), ("10/57", 6)), _c(("93/19", 1), ("-30/19", 6))),
)

_ROWS["cw3"] = TableRow(
    z_or_sqrtnegf=(_c(("275/1083", 1), ("-112/1083", 6)),
                   _c(("275/1083", 1), ("112/1083", 6))),
    h=_q(0, "4/57", 133),
    tau_pm=(_tau(0, "1/6", 42), _tau(0, "1/2", 42)),
    B=(_c(("-13/140", 1), ("-1/56", 6)), _c(("-13/140", 1), ("1/56", 6))),
    C=(_c((0, 1), ("4620/3249", 2), ("-280/3249", 3)),
       _c((0, 1), ("4620/1083", 2), ("280/1083", 3))),
    Yratio=(_c(("93/19", 1), ("-30/19", 6)), _c(("31/57", 1), ("10/57", 6))),
)

# C cells written over the square-free basis: sqrt(140) = 2*sqrt(35).
_ROWS["cw4"] = TableRow(
    z_or_sqrtnegf=(_c(("253/567", 1), ("80/567", 10)),
                   _c(("253/567", 1), ("-80/567", 10))),
    h=_q(0, "16/189", 105),
    tau_pm=(_tau(0, "1/2", 70), _tau(0, "1/10", 70)),
    B=(_c(("-1543/16120", 1), ("147/8060", 10)),
       _c(("-1543/16120", 1), ("-147/8060", 10))),
    C=(_c((0, 1), ("920/567", 14), ("220/567", 35)),
       _c((0, 1), ("184/567", 14), ("-44/567", 35))),
    Yratio=(_c(("7/15", 1), ("2/15", 10)), _c(("35/3", 1), ("-10/3", 10))),
)

_ROWS["cw5"] = TableRow(
    z_or_sqrtnegf=(_c(("253/567", 1), ("-80/567", 10)),
                   _c(("253/567", 1), ("80/567", 10))),
    h=_q(0, "3/35", 105),
    tau_pm=(_tau(0, "1/10", 70), _tau(0, "1/2", 70)),
    B=(_c(("-1543/16120", 1), ("-147/8060", 10)),
       _c(("-1543/16120", 1), ("147/8060", 10))),
    C=(_c((0, 1), ("184/567", 14), ("-44/567", 35)),
       _c((0, 1), ("920/567", 14), ("220/567", 35))),
    Yratio=(_c(("35/3", 1), ("-10/3", 10)), _c(("7/15", 1), ("2/15", 10))),
)

# The rational parts of the sqrt(f) cells are 11033/141267: the smaller
# image forces 11033 - 7800*sqrt(2) > 0 (a square root is non-negative,
# and 7800*sqrt(2) = 11031.07...), and 11033 is the unique integer making
# the cell square to the rational-over-sqrt(2) field element f.
_ROWS["cw6"] = TableRow(
    z_or_sqrtnegf=(_c(("11033/141267", 1), ("7800/141267", 2)),
                   _c(("11033/141267", 1), ("-7800/141267", 2))),
    h=_q(0, "54/1085", 217),
    tau_pm=(_tau(0, "1/2", 78), _tau(0, "1/6", 78)),
    B=(_c(("-5983/83720", 1), ("2097/83720", 2)),
       _c(("-5983/83720", 1), ("-2097/83720", 2))),
    C=(_c((0, 1), ("4420/141267", 3), ("168740/47089", 6)),
       _c((0, 1), ("-4420/423801", 3), ("168740/141267", 6))),
    Yratio=(_c(("361/651", 1), ("68/217", 2)),
            _c(("1083/217", 1), ("-612/217", 2))),
)

_ROWS["cw7"] = TableRow(
    z_or_sqrtnegf=(_c(("11033/141267", 1), ("-7800/141267", 2)),
                   _c(("11033/141267", 1), ("7800/141267", 2))),
    h=_q(0, "65/1302", 217),
    tau_pm=(_tau(0, "1/6", 78), _tau(0, "1/2", 78)),
    B=(_c(("-5983/83720", 1), ("-2097/83720", 2)),
       _c(("-5983/83720", 1), ("2097/83720", 2))),
    C=(_c((0, 1), ("-4420/423801", 3), ("168740/141267", 6)),
       _c((0, 1), ("4420/141267", 3), ("168740/47089", 6))),
    Yratio=(_c(("1083/217", 1), ("-612/217", 2)),
            _c(("361/651", 1), ("68/217", 2))),
)

_ROWS["cw8"] = TableRow(
    z_or_sqrtnegf=(_c(("208329/974169", 1), ("25840/974169", 65)),
                   _c(("208329/974169", 1), ("-25840/974169", 65))),
    h=_q(0, "722/16779", 329),
    tau_pm=(_tau(0, "1/2", 130), _tau(0, "1/10", 130)),
    B=(_c(("-9887/123830", 1), ("5184/804895", 65)),
       _c(("-9887/123830", 1), ("-5184/804895", 65))),
    C=(_c((0, 1), ("691220/324723", 26), ("168740/974169", 10)),
       _c((0, 1), ("138244/324723", 26), ("-33748/974169", 10))),
    Yratio=(_c(("841/1645", 1), ("96/1645", 65)),
            _c(("4205/329", 1), ("-480/329", 65))),
)

_ROWS["cw9"] = TableRow(
    z_or_sqrtnegf=(_c(("208329/974169", 1), ("-25840/974169", 65)),
                   _c(("208329/974169", 1), ("25840/974169", 65))),
    h=_q(0, "85/1974", 329),
    tau_pm=(_tau(0, "1/10", 130), _tau(0, "1/2", 130)),
    B=(_c(("-9887/123830", 1), ("-5184/804895", 65)),
       _c(("-9887/123830", 1), ("5184/804895", 65))),
    C=(_c((0, 1), ("138244/324723", 26), ("-33748/974169", 10)),
       _c((0, 1), ("691220/324723", 26), ("168740/974169", 10))),
    Yratio=(_c(("4205/329", 1), ("-480/329", 65)),
            _c(("841/1645", 1), ("96/1645", 65))),
)


def table_rows() -> Dict[str, TableRow]:
    """Certified rows keyed by case id (families P and W only)."""
    return dict(_ROWS)


# --------------------------------------------------------------------------
# registry

_P = SeriesFamily.P
_W = SeriesFamily.W
_U = SeriesFamily.U
_V = SeriesFamily.V

_CASE_DEFS = (
    # id, family, t, x, b, rhs (constant multiplying 1/pi), status
    ("cp1", _P, "1/100", "9/4", "1/12", "75/48", CONJECTURE_PROVED_HERE),
    ("p1", _P, "-1/192", "4", "1/4", "sqrt(3)/4", PREVIOUSLY_PROVED),
    ("cp2", _P, "-1/225", "-14", "-224/17", "1800/17", CONJECTURE_PROVED_HERE),
    ("cp3", _P, "1/289", "18", "-256/15", "2312/15", CONJECTURE_PROVED_HERE),
    ("cp4", _P, "-1/576", "-32", "-11/20", "9/2", CONJECTURE_PROVED_HERE),
    ("cp5", _P, "1/640", "36", "-2/3", "5*sqrt(10)/3", CONJECTURE_PROVED_HERE),
    ("cp6", _P, "-1/3136", "-192", "-67/20", "49/2", CONJECTURE_PROVED_HERE),
    ("cp7", _P, "1/3200", "196", "-24/7", "125*sqrt(2)/7",
     CONJECTURE_PROVED_HERE),
    ("cp8", _P, "-1/6336", "-392", "-32/5", "99/2", CONJECTURE_PROVED_HERE),
    ("cp9", _P, "1/6400", "396", "-427/66", "500*sqrt(11)/33",
     CONJECTURE_PROVED_HERE),
    ("cp10", _P, "-1/18432", "-896", "-7/34", "27*sqrt(2)/17",
     CONJECTURE_PROVED_HERE),
    ("cp11", _P, "1/18496", "900", "-5/24", "867/384",
     CONJECTURE_PROVED_HERE),
    ("p2", _P, "1/100", "6", "-2", "50/3", PREVIOUSLY_PROVED),
    ("p3", _P, "-1/192", "-8", "0", "3/2", PREVIOUSLY_PROVED),
    ("p4", _P, "1/256", "12", "-1/6", "4*sqrt(3)/3", PREVIOUSLY_PROVED),
    ("p5", _P, "-1/1536", "-32", "1/10", "3*sqrt(6)/10", PREVIOUSLY_PROVED),
    ("p6", _P, "1/1600", "36", "1/12", "75/96", PREVIOUSLY_PROVED),
    ("p7", _P, "1/3136", "-60", "5/24", "49*sqrt(3)/192", PREVIOUSLY_PROVED),
    ("p8", _P, "-1/3072", "64", "3/14", "3/7", PREVIOUSLY_PROVED),
    ("cw2", _W, "-1/108", "-49/12", "65/392", "387*sqrt(3)/392",
     CONJECTURE_PROVED_HERE),
    ("cw3", _W, "1/112", "63/16", "23/168", "59*sqrt(3)/54",
     CONJECTURE_PROVED_HERE),
    ("cw4", _W, "-1/320", "-405/64", "257/1512", "148*sqrt(35)/945",
     CONJECTURE_PROVED_HERE),
    ("cw5", _W, "1/324", "25/4", "9/56", "81*sqrt(35)/500",
     CONJECTURE_PROVED_HERE),
    ("cw6", _W, "-1/1296", "-625/9", "-1811/13000", "12339*sqrt(39)/16250",
     CONJECTURE_PROVED_HERE),
    ("cw7", _W, "1/1300", "900/13", "-1343/9360", "331*sqrt(39)/432",
     CONJECTURE_PROVED_HERE),
    ("cw8", _W, "-1/5776", "-83521/361", "2443/56355", "71839*sqrt(2)/58956",
     CONJECTURE_PROVED_HERE),
    ("cw9", _W, "1/5780", "1156/5", "253/5928", "2227*sqrt(2)/1824",
     CONJECTURE_PROVED_HERE),
    ("u1", _U, "1/2160", "-324", "103/357", "30/119", OPEN),
    ("u2", _U, "1/3645", "486", "0", "10/3", OPEN),
    ("u3", _U, "-1/1728", "-324", "1/6", "12*sqrt(375+120*sqrt(10))/75",
     OPEN),
    ("u4", _U, "-1/160", "-20", "1/4",
     "sqrt(30)/20*(5+cbrt(145+30*sqrt(6)))/root6(145+30*sqrt(6))", OPEN),
    ("u5", _U, "1/27648", "-2160", "289/1290", "16*sqrt(15)/215", OPEN),
    ("u6", _U, "1/276480", "12096", "49/804", "10*sqrt(15)/67", OPEN),
    ("u7", _U, "2/135", "-27/8", "5/24", "(5*sqrt(6)+4*sqrt(15))/16", OPEN),
    ("v1", _V, "1/576", "5", "5/28", "9*(2+sqrt(2))/28", OPEN),
    ("v2", _V, "1/576", "-25/16", "31/182", "189/364", OPEN),
)

REGISTRY: Tuple[CaseSpec, ...] = tuple(
    CaseSpec(cid, fam, Fr(t), Fr(x), Fr(b), parse_rhs(rhs), status,
             _ROWS.get(cid))
    for cid, fam, t, x, b, rhs, status in _CASE_DEFS
)

_BY_ID = {case.id: case for case in REGISTRY}

# decomposition sample sets with first-branch hypergeometric products
DECOMPOSITION_SAMPLES = {
    SeriesFamily.P: ((Fr(1, 200), Fr(2)), (Fr(1, 500), Fr(-3)),
                     (Fr(-1, 300), Fr(5))),
    SeriesFamily.W: ((Fr(1, 200), Fr(1, 2)), (Fr(-1, 400), Fr(-2))),
}


def all_ids() -> Tuple[str, ...]:
    return tuple(case.id for case in REGISTRY)


def case_by_id(case_id: str) -> CaseSpec:
    try:
        return _BY_ID[case_id]
    except KeyError:
        raise KeyError("unknown case id %r" % (case_id,)) from None
