import json

import pytest

from venndim.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def report(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


@pytest.fixture
def files(tmp_path, capsys):
    paths = {}
    for kind, n in [("circles", 3), ("edwards", 4)]:
        p = tmp_path / f"{kind}{n}.json"
        assert main(["construct", kind, "--n", str(n), "--resolution", "128", "--out", str(p)]) == 0
        paths[kind] = str(p)
    capsys.readouterr()
    return paths


def test_construct_reports(tmp_path, capsys):
    code, rep = report(capsys, "construct", "edwards", "--n", "3", "--resolution", "128", "--out", str(tmp_path / "e.json"))
    assert code == 0 and rep["regions"] == 8 and rep["m"] == 2


def test_check_exit_codes(files, capsys):
    assert report(capsys, "check", files["edwards"], "--which", "thm3")[0] == 0
    code, rep = report(capsys, "check", files["edwards"], "--which", "fully")
    assert code == 1 and rep["witnesses"] == [[3, 4]]
    assert report(capsys, "check", files["circles"], "--which", "fully")[0] == 0
    # no witness exists for a fully reducible diagram: precondition error
    assert run(capsys, "check", files["circles"], "--which", "cor1")[0] == 2
    code, rep = report(capsys, "check", files["edwards"], "--which", "thm2")
    assert code == 0 and rep["agrees"] and rep["bruteforce"] is False


def test_check_report(files, capsys):
    code, rep = report(capsys, "check", files["edwards"])
    assert code == 0
    assert rep["edges"] == 28 and rep["regions"] == 16 and rep["is_venn"] and rep["is_simple"]


def test_bad_input_is_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"format": "venn-grid"}')
    assert run(capsys, "check", str(bad))[0] == 2
    assert run(capsys, "check", str(tmp_path / "missing.json"))[0] == 2


def test_lift_explicit_orders(files, tmp_path, capsys):
    out = tmp_path / "v34.json"
    code, rep = report(capsys, "construct", "lift", "--in", files["edwards"], "--enter", "1,2,3,4", "--leave", "1,3,2,4", "--out", str(out))
    assert code == 0 and rep["m"] == 3 and rep["regions"] == 16
    assert report(capsys, "check", str(out), "--which", "fully")[0] == 0
    # lifting a map is refused
    assert run(capsys, "construct", "lift", "--in", files["circles"], "--out", str(tmp_path / "x.json"))[0] == 2


def test_conjecture_commands(capsys):
    code, rep = report(capsys, "conjecture", "bound", "--m", "3", "--n", "5")
    assert code == 0 and rep["bound"] == 76
    code, rep = report(capsys, "conjecture", "detid", "--m-max", "8")
    assert code == 0 and rep["all_equal"]
    code, rep = report(capsys, "conjecture", "recurrence", "--m", "3", "--n", "5")
    assert rep["edges"] == 76 and "warning" in rep
    code, rep = report(capsys, "conjecture", "recurrence", "--m", "3", "--n", "4")
    assert rep["edges"] == rep["bound"] == 32 and "warning" not in rep


def test_render(files, tmp_path, capsys):
    out = tmp_path / "e.svg"
    assert main(["render", files["edwards"], "--out", str(out)]) == 0
    assert out.read_text().count('class="surface"') == 4
    code, svg = run(capsys, "render", files["circles"], "--no-labels")
    assert code == 0 and svg.startswith("<svg") and 'class="region"' not in svg


def test_render_slice_of_lift(files, tmp_path, capsys):
    lifted = tmp_path / "v.json"
    main(["construct", "lift", "--in", files["edwards"], "--out", str(lifted)])
    capsys.readouterr()
    assert run(capsys, "render", str(lifted))[0] == 2
    code, svg = run(capsys, "render", str(lifted), "--slice", "3=5")
    assert code == 0 and svg.count('class="surface"') == 4
