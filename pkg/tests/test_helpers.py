import pytest
from numpy.testing import assert_allclose

from utils.errors import InvalidParameterError
from utils.helpers import format_processing_time, parse_grid, render_csv, render_table


class TestParseGrid:
    def test_linspace(self):
        assert_allclose(parse_grid("0:3:31")[:3], [0.0, 0.1, 0.2])
        assert len(parse_grid("0:3:31")) == 31

    def test_single_point(self):
        assert_allclose(parse_grid("1.5:1.5:1"), [1.5])

    @pytest.mark.parametrize("text", ["0:3", "a:b:c", "0:3:0", "3:0:5", "0:3:2.5"])
    def test_rejects(self, text):
        with pytest.raises(InvalidParameterError):
            parse_grid(text)


class TestRendering:
    rows = [{"t": 0.1, "value": 1.0000000000000002, "ode_residual": None}, {"t": 0.2, "value": "x,y"}]

    def test_csv(self):
        text = render_csv(self.rows, ("t", "value", "ode_residual"))
        assert text.splitlines() == ["t,value,ode_residual", "0.1,1,", '0.2,"x,y",']

    def test_table_is_aligned(self):
        lines = render_table(self.rows, ("t", "value")).splitlines()
        assert lines[0].split() == ["t", "value"]
        assert set(lines[1]) <= {"-", " "}
        assert len({len(line.rstrip()) for line in lines[:2]}) == 1


def test_format_processing_time():
    assert format_processing_time(0.25) == "250ms"
    assert format_processing_time(2.5) == "2.50s"
