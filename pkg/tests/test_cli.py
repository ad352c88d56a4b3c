import json
import math

import pytest

from closedfrechet.cli import CurveFormatError, main, parse_curve


@pytest.fixture
def files(tmp_path):
    a = tmp_path / "squareA.txt"
    a.write_text("0 0\n1 0\n1 1\n0 1\n")
    b = tmp_path / "squareB_shift03.txt"
    b.write_text("# shifted by 0.3\n0.3 0\n1.3 0\n1.3 1\n0.3 1\n")
    p = tmp_path / "center.json"
    p.write_text(json.dumps({"dim": 2, "points": [[0.5, 0.5]]}))
    return a, b, p


def test_parse_formats():
    c = parse_curve('{"dim": 2, "points": [[0, 0]]}')
    assert c.m == 1 and c.dim == 2
    c = parse_curve("0 0 0\n1 0 0\n\n0 1 0\n")
    assert c.m == 3 and c.dim == 3


@pytest.mark.parametrize(
    "text",
    [
        "",
        "0 0\n1\n",
        "0 0\n1 x\n",
        '{"dim": 2, "points": [[0, 0, 1]]}',
        '{"dim": 2}',
        '{"dim": 2, "points": [[0, 0]',
        "0 0\nnan 1\n",
    ],
)
def test_parse_errors(text):
    with pytest.raises(CurveFormatError):
        parse_curve(text)


def test_repeated_closing_vertex_rejected():
    with pytest.raises(CurveFormatError, match="closing vertex"):
        parse_curve("0 0\n1 0\n1 1\n0 0\n")


def test_decide_exit_codes(files, capsys):
    a, b, _ = files
    assert main(["decide", "--eps", "0.35", str(a), str(b)]) == 0
    assert capsys.readouterr().out.strip() == "YES"
    assert main(["decide", "--eps", "0.25", str(a), str(b)]) == 1
    assert capsys.readouterr().out.strip() == "NO"
    assert main(["decide", "--eps", "-1", str(a), str(b)]) == 2
    assert main(["decide", "--eps", "1", str(a), "missing.txt"]) == 2


def test_decide_json(files, capsys):
    a, b, _ = files
    assert main(["decide", "--json", "--eps", "0.35", str(a), str(b)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["answer"] is True and "u" in doc["witness"]
    assert main(["decide", "--json", "--eps", "0.1", str(a), str(b)]) == 1
    assert json.loads(capsys.readouterr().out) == {"answer": False, "eps": 0.1}


def test_dimension_mismatch_exit(files, tmp_path):
    a, _, _ = files
    c = tmp_path / "c3.txt"
    c.write_text("0 0 0\n1 0 0\n")
    assert main(["decide", "--eps", "1", str(a), str(c)]) == 2


def test_distance(files, capsys):
    a, _, p = files
    assert main(["distance", "--tol", "1e-7", str(a), str(p)]) == 0
    assert float(capsys.readouterr().out) == pytest.approx(math.sqrt(0.5), abs=1e-7)
    assert main(["distance", "--tol", "0", str(a), str(p)]) == 2


def test_rank(files, capsys, tmp_path):
    a, _, _ = files
    assert main(["rank", "--eps", "0.35", str(a), str(tmp_path)]) == 0
    assert capsys.readouterr().out.split() == ["squareA.txt", "squareB_shift03.txt"]
    assert main(["rank", "--top", "2", "--tol", "1e-4", str(a), str(tmp_path)]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert [ln.split("\t")[0] for ln in lines] == ["squareA.txt", "squareB_shift03.txt"]
    assert main(["rank", "--eps", "1", str(a), str(tmp_path / "nope")]) == 2


def test_bench(capsys):
    assert main(["bench", "--sizes", "8,16", "--repeats", "2", "--seed", "1"]) == 0
    out = capsys.readouterr().out.strip().splitlines()
    assert out[0] == "m,n,wall_time_s,deque_insertions"
    assert len(out) == 1 + 4 + 1 and out[-1].startswith("# loglog_slope=")
    assert main(["bench", "--sizes", "5000"]) == 2


def test_dump(files, tmp_path):
    a, b, _ = files
    out = tmp_path / "fs.svg"
    assert main(["dump", "--eps", "0.35", str(a), str(b), "-o", str(out)]) == 0
    svg = out.read_text()
    assert 'viewBox="0 0 8 4"' in svg and 'width="320"' in svg and "<polygon" in svg


def test_dump_big_eps_is_all_free(files, tmp_path):
    a, b, _ = files
    out = tmp_path / "fs.svg"
    assert main(["dump", "--eps", "10", "--scale", "10", str(a), str(b), "-o", str(out)]) == 0
    svg = out.read_text()
    # every cell gets a polygon that reaches its four corners
    assert svg.count("<polygon") == 8 * 4


def test_usage_errors():
    assert main([]) == 2
    assert main(["frobnicate"]) == 2
