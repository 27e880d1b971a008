import io

import pytest

from dadelab.dade import rings_for
from dadelab.errors import ModuleParseError, ModuleValidationError
from dadelab.heller import omega_power
from dadelab.moduleio import format_module, parse_module, read_module, write_module
from dadelab.pgroup import CATALOG, build_group
from dadelab.rpmod import trivial_module


def test_round_trip_trivial(tmp_path):
    g = build_group("C2")
    k, _ = rings_for(g, 8)
    m = trivial_module(k, g)
    path = tmp_path / "t.mod"
    write_module(m, path)
    assert read_module(path) == m


def test_round_trip_lattice_over_c8(tmp_path):
    g = build_group("C8")
    _, o = rings_for(g, 16)
    m = omega_power(o, g, 1)
    path = tmp_path / "omega.mod"
    write_module(m, str(path))
    back = read_module(str(path))
    assert back == m and back.dim == 7
    body = path.read_text().splitlines()
    rows = body[body.index("gen a") + 1 :]
    assert sum(len(r.split(";")) for r in rows) == 49


@pytest.mark.parametrize("spec", CATALOG)
def test_round_trip_catalog(spec):
    g = build_group(spec)
    for r in rings_for(g, 10):
        m = omega_power(r, g, -1)
        buf = io.StringIO()
        write_module(m, buf)
        buf.seek(0)
        assert read_module(buf) == m


def test_comments_and_blank_lines():
    text = "# a comment\n\nR k p=2\nG C2\ndim 1\n# another\ngen a\n1\n"
    m = parse_module(text)
    assert m.dim == 1


@pytest.mark.parametrize(
    "text,line",
    [
        ("R x p=2\nG C2\ndim 1\ngen a\n1\n", 1),
        ("R k p=2\nC2\ndim 1\ngen a\n1\n", 2),
        ("R k p=2\nG C5x\ndim 1\ngen a\n1\n", 2),
        ("R k p=2\nG C2\ndimension 1\ngen a\n1\n", 3),
        ("R k p=2\nG C2\ndim 2\ngen a\n1;0\n", 6),
        ("R k p=2\nG C2\ndim 2\ngen a\n1;0\n0\n", 6),
        ("R k p=2\nG C2\ndim 1\ngen b\n1\n", 4),
        ("R O p=2 n=1 N=8\nG C2\ndim 1\ngen a\n1,0\n", 5),
        ("R k p=2\nG C2\ndim 1\ngen a\n1\nextra\n", 6),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ModuleParseError) as err:
        parse_module(text)
    assert err.value.line == line
    assert str(err.value).startswith(f"line {line}:")


def test_relation_violation_is_reported():
    # over GF(2) the matrix [[1,1],[1,0]] has order 3, not 2
    text = "R k p=2\nG C2\ndim 2\ngen a\n1;1\n1;0\n"
    with pytest.raises(ModuleValidationError, match="relation violated: a\\*a"):
        parse_module(text)
    assert parse_module(text, validate=False).dim == 2


def test_format_header():
    g = build_group("Q8")
    _, o = rings_for(g, 16)
    head = format_module(trivial_module(o, g)).splitlines()[:3]
    assert head == ["R O p=2 n=2 N=16", "G Q8", "dim 1"]
