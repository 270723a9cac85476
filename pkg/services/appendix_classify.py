"""Bounded-multiplicity tables for complex triples (g, h, g') with g simple.

Each row is a parametric family. A query matches a row when g agrees and the
summands of h and g' agree with one instance of the row as multisets; summand
order is irrelevant. Abstract low-rank isomorphisms such as so(6) = sl(4) are
not applied; only the listed alias rows extend the tables.
"""

import logging
from typing import Callable, Iterable, List, Literal, Optional, Tuple

from pydantic import BaseModel

from models.schemas import ComplexTriple, LieFamily, LieLabel
from utils.errors import UnsupportedQueryError

logger = logging.getLogger(__name__)

Algebra = List[LieLabel]
Instance = Tuple[Algebra, Algebra]


def sl(n: int) -> LieLabel:
    return LieLabel(family=LieFamily.SL, rank_param=n)


def gl(n: int) -> LieLabel:
    return LieLabel(family=LieFamily.GL, rank_param=n)


def so(n: int) -> LieLabel:
    return LieLabel(family=LieFamily.SO, rank_param=n)


def sp(n: int) -> LieLabel:
    return LieLabel(family=LieFamily.SP, rank_param=n)


def spin(n: int) -> LieLabel:
    return LieLabel(family=LieFamily.SPIN, rank_param=n)


C = LieLabel(family=LieFamily.CENTER)
E6 = LieLabel(family=LieFamily.E6)
F4 = LieLabel(family=LieFamily.F4)


class TableRow(BaseModel):
    """Parametric family of triples sharing the family of g"""
    name: str
    side: Literal["left", "right", "alias"]
    g_family: LieFamily
    instances: Callable[[Optional[int]], List[Instance]]

    def expand(self, n: Optional[int]) -> List[Instance]:
        return self.instances(n)


def _splits(n: int) -> Iterable[Tuple[int, int]]:
    # p, q >= 1 with p + q = n
    return ((p, n - p) for p in range(1, n))


def _even_half(n: int, minimum: int = 1) -> Optional[int]:
    if n % 2 or n // 2 < minimum:
        return None
    return n // 2


def _left_sl_gl(n):
    return [([gl(n - 1)], [sl(p), sl(q), C]) for p, q in _splits(n)]


def _left_sl_gl_sp(n):
    m = _even_half(n)
    return [([gl(n - 1)], [sp(m)])] if m else []


def _left_sl6(n):
    return [([sp(3)], [sl(4), sl(2), C])] if n == 6 else []


def _left_so_so(n):
    return [([so(n - 1)], [so(p), so(q)]) for p, q in _splits(n)]


def _left_so_gl(n):
    m = _even_half(n)
    return [([so(n - 1)], [gl(m)])] if m else []


def _left_so_so_center(n):
    m = _even_half(n, minimum=2)
    return [([so(n - 2), C], [gl(m)])] if m else []


def _left_sp_sp1(n):
    if n < 2:
        return []
    return [([sp(n - 1), sp(1)], [sp(p), sp(q)]) for p, q in _splits(n)]


def _left_sp_sp2(n):
    if n < 3:
        return []
    return [([sp(n - 2), sp(2)], [sp(n - 1), sp(1)])]


def _left_e6(n):
    return [([F4], [so(10), C])]


def _left_f4(n):
    return [([so(9)], [so(9)])]


def _right_sl_so(n):
    return [([so(n)], [gl(n - 1)])] if n >= 2 else []


def _right_sl_sp(n):
    m = _even_half(n)
    return [([sp(m)], [gl(n - 1)])] if m else []


def _right_sl_split(n):
    return [([sl(p), sl(q), C], [gl(n - 1)]) for p, q in _splits(n)]


def _right_so_split(n):
    return [([so(p), so(q)], [so(n - 1)]) for p, q in _splits(n)]


def _right_so_gl(n):
    m = _even_half(n)
    return [([gl(m)], [so(n - 1)])] if m else []


def _alias_so8_gl4(n):
    return [([gl(4)], [so(6), so(2)])] if n == 8 else []


def _alias_sl4_sp2(n):
    return [([sp(2)], [sl(2), sl(2), C])] if n == 4 else []


def _alias_so8_spin7(n):
    # Right rows of so(8) with the triality image spin(7) in place of so(7)
    if n != 8:
        return []
    return [
        (h, [spin(7)])
        for h, _ in _right_so_split(8) + _right_so_gl(8)
    ]


TABLE_ROWS: List[TableRow] = [
    TableRow(name="(sl_n, gl_n-1, sl_p+sl_q+C)", side="left", g_family=LieFamily.SL, instances=_left_sl_gl),
    TableRow(name="(sl_2m, gl_2m-1, sp_m)", side="left", g_family=LieFamily.SL, instances=_left_sl_gl_sp),
    TableRow(name="(sl_6, sp_3, sl_4+sl_2+C)", side="left", g_family=LieFamily.SL, instances=_left_sl6),
    TableRow(name="(so_n, so_n-1, so_p+so_q)", side="left", g_family=LieFamily.SO, instances=_left_so_so),
    TableRow(name="(so_2m, so_2m-1, gl_m)", side="left", g_family=LieFamily.SO, instances=_left_so_gl),
    TableRow(name="(so_2m, so_2m-2+C, gl_m)", side="left", g_family=LieFamily.SO, instances=_left_so_so_center),
    TableRow(name="(sp_n, sp_n-1+sp_1, sp_p+sp_q)", side="left", g_family=LieFamily.SP, instances=_left_sp_sp1),
    TableRow(name="(sp_n, sp_n-2+sp_2, sp_n-1+sp_1)", side="left", g_family=LieFamily.SP, instances=_left_sp_sp2),
    TableRow(name="(e6, f4, so_10+C)", side="left", g_family=LieFamily.E6, instances=_left_e6),
    TableRow(name="(f4, so_9, so_9)", side="left", g_family=LieFamily.F4, instances=_left_f4),
    TableRow(name="(sl_n, so_n, gl_n-1)", side="right", g_family=LieFamily.SL, instances=_right_sl_so),
    TableRow(name="(sl_2m, sp_m, gl_2m-1)", side="right", g_family=LieFamily.SL, instances=_right_sl_sp),
    TableRow(name="(sl_n, sl_p+sl_q+C, gl_n-1)", side="right", g_family=LieFamily.SL, instances=_right_sl_split),
    TableRow(name="(so_n, so_p+so_q, so_n-1)", side="right", g_family=LieFamily.SO, instances=_right_so_split),
    TableRow(name="(so_2m, gl_m, so_2m-1)", side="right", g_family=LieFamily.SO, instances=_right_so_gl),
    TableRow(name="(so_8, gl_4, so_6+so_2)", side="alias", g_family=LieFamily.SO, instances=_alias_so8_gl4),
    TableRow(name="(sl_4, sp_2, sl_2+sl_2+C)", side="alias", g_family=LieFamily.SL, instances=_alias_sl4_sp2),
    TableRow(name="(so_8, h, spin_7)", side="alias", g_family=LieFamily.SO, instances=_alias_so8_spin7),
]


def _key(algebra: Iterable[LieLabel]) -> Tuple[Tuple[str, int], ...]:
    return tuple(sorted((label.family.value, label.rank_param or 0) for label in algebra))


def matching_rows(triple: ComplexTriple) -> List[TableRow]:
    h_key, gp_key = _key(triple.h), _key(triple.gp)
    matches = []
    for row in TABLE_ROWS:
        if row.g_family is not triple.g.family:
            continue
        for h, gp in row.expand(triple.g.rank_param):
            if _key(h) == h_key and _key(gp) == gp_key:
                matches.append(row)
                break
    return matches


def bounded_multiplicity_triple(triple: ComplexTriple) -> bool:
    """
    Whether (g, h, g') is in the bounded-multiplicity table

    Args:
        triple: Complex triple with g simple

    Returns:
        True if some row, alias rows included, contains the triple
    """
    rows = matching_rows(triple)
    logger.debug(f"Triple {triple.g}: matched rows {[row.name for row in rows]}")
    return bool(rows)


def bounded_multiplicity_pair(g: LieLabel, gp: List[LieLabel]) -> bool:
    """(sl_n, gl_n-1), (so_n, so_n-1) or (so_8, spin_7)"""
    n = g.rank_param
    key = _key(gp)
    if g.family is LieFamily.SL:
        return key == _key([gl(n - 1)]) if n >= 2 else False
    if g.family is LieFamily.SO:
        if n >= 2 and key == _key([so(n - 1)]):
            return True
        return n == 8 and key == _key([spin(7)])
    return False


def tensor_bounded(g: LieLabel, h1: List[LieLabel], h2: List[LieLabel]) -> bool:
    """
    Bounded multiplicity of tensor products for the symmetric subalgebras h1, h2

    Type A is decided completely. For orthogonal g only the pairs built from
    so(n-1), and (so(8), so(7), gl(4)), are known to be bounded; other queries
    raise UnsupportedQueryError.
    """
    n = g.rank_param
    keys = {_key(h1), _key(h2)}
    if g.family is LieFamily.SL:
        return (n == 2 and keys == {_key([so(2)])}) or (n == 4 and keys == {_key([sp(2)])})

    if g.family is LieFamily.SO:
        if n >= 2 and keys == {_key([so(n - 1)])}:
            return True
        if n == 8 and keys == {_key([so(7)]), _key([gl(4)])}:
            return True

    raise UnsupportedQueryError(
        f"Tensor product bound for ({g}, {'+'.join(map(str, h1))}, {'+'.join(map(str, h2))}) is not tabulated",
        hint="only sl(n) and the orthogonal cases built from so(n-1) or (so(8), so(7), gl(4)) are decided",
    )


def table_triples(max_rank: int) -> List[Tuple[TableRow, ComplexTriple]]:
    """Every row instance with g of rank parameter at most max_rank"""
    triples = []
    for row in TABLE_ROWS:
        if row.g_family in (LieFamily.E6, LieFamily.F4):
            g = LieLabel(family=row.g_family)
            triples.extend((row, ComplexTriple(g=g, h=h, gp=gp)) for h, gp in row.expand(None))
            continue
        for n in range(2, max_rank + 1):
            g = LieLabel(family=row.g_family, rank_param=n)
            triples.extend((row, ComplexTriple(g=g, h=h, gp=gp)) for h, gp in row.expand(n))
    return triples
