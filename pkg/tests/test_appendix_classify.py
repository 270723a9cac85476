import pytest
from pydantic import ValidationError

from models.schemas import ComplexTriple, LieFamily, LieLabel
from services import appendix_classify
from services.appendix_classify import C, E6, F4, gl, sl, so, sp, spin
from utils.errors import UnsupportedQueryError


def triple(g, h, gp):
    return ComplexTriple(g=g, h=h, gp=gp)


class TestTriples:
    @pytest.mark.parametrize(
        "g,h,gp",
        [
            (so(9), [so(8)], [so(5), so(4)]),
            (so(9), [so(8)], [so(4), so(5)]),
            (sl(5), [gl(4)], [sl(2), sl(3), C]),
            (sl(6), [sp(3)], [sl(4), sl(2), C]),
            (sp(4), [sp(3), sp(1)], [sp(1), sp(3)]),
            (E6, [F4], [so(10), C]),
            (F4, [so(9)], [so(9)]),
            (sl(5), [so(5)], [gl(4)]),
            (so(10), [gl(5)], [so(9)]),
        ],
    )
    def test_bounded(self, g, h, gp):
        assert appendix_classify.bounded_multiplicity_triple(triple(g, h, gp))

    @pytest.mark.parametrize(
        "g,h,gp",
        [
            (sl(5), [gl(4)], [so(5)]),
            (F4, [so(9)], [sp(3), sl(2)]),
            (so(5), [so(3), so(2)], [so(3), so(2)]),
            (sp(4), [sp(2), sp(2)], [sp(2), sp(2)]),
            (so(9), [gl(4)], [so(8)]),
        ],
    )
    def test_unbounded(self, g, h, gp):
        assert not appendix_classify.bounded_multiplicity_triple(triple(g, h, gp))

    def test_alias_rows(self):
        rows = appendix_classify.matching_rows(triple(so(8), [gl(4)], [so(6), so(2)]))
        assert [row.side for row in rows] == ["alias"]
        assert appendix_classify.bounded_multiplicity_triple(triple(so(8), [so(4), so(4)], [spin(7)]))
        assert appendix_classify.bounded_multiplicity_triple(triple(sl(4), [sp(2)], [sl(2), sl(2), C]))

    def test_isomorphisms_are_not_applied(self):
        # so(6) = sl(4) abstractly, but only listed rows count
        assert not appendix_classify.bounded_multiplicity_triple(triple(so(6), [sp(2)], [sl(2), sl(2), C]))

    def test_every_table_instance_matches_its_row(self):
        for row, t in appendix_classify.table_triples(8):
            assert row in appendix_classify.matching_rows(t)

    def test_right_rows_contain_a_bounded_pair(self):
        for row, t in appendix_classify.table_triples(8):
            if row.side == "right":
                assert appendix_classify.bounded_multiplicity_pair(t.g, t.gp)

    def test_g_must_be_simple(self):
        with pytest.raises(ValidationError):
            triple(gl(4), [gl(3)], [gl(3)])

    def test_labels_are_validated(self):
        with pytest.raises(ValidationError):
            LieLabel(family=LieFamily.SO)
        with pytest.raises(ValidationError):
            LieLabel(family=LieFamily.E6, rank_param=6)


class TestPairs:
    @pytest.mark.parametrize(
        "g,gp,expected",
        [
            (sl(5), [gl(4)], True),
            (so(7), [so(6)], True),
            (so(8), [spin(7)], True),
            (so(9), [spin(7)], False),
            (sp(3), [sp(2)], False),
            (sl(5), [sl(4)], False),
        ],
    )
    def test_pair(self, g, gp, expected):
        assert appendix_classify.bounded_multiplicity_pair(g, gp) is expected


class TestTensor:
    @pytest.mark.parametrize(
        "g,h1,h2",
        [
            (so(9), [so(8)], [so(8)]),
            (so(8), [so(7)], [gl(4)]),
            (so(8), [gl(4)], [so(7)]),
            (sl(4), [sp(2)], [sp(2)]),
        ],
    )
    def test_bounded(self, g, h1, h2):
        assert appendix_classify.tensor_bounded(g, h1, h2)

    def test_type_a_is_decided(self):
        assert not appendix_classify.tensor_bounded(sl(5), [so(5)], [so(5)])
        assert not appendix_classify.tensor_bounded(sl(4), [sp(2)], [so(4)])

    def test_other_orthogonal_queries_are_unsupported(self):
        with pytest.raises(UnsupportedQueryError):
            appendix_classify.tensor_bounded(so(9), [gl(4)], [so(8)])
