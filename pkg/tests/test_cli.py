import json
import subprocess
import sys

import pytest

from fptkit.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    assert code == 0
    return json.loads(out)


def test_derive(capsys):
    assert run_json(capsys, "derive", "-p", "3", "-i", "1", "1/t")["result"] == "2/t^2"
    code, out, _ = run(capsys, "derive", "-p", "2", "-i", "1", "t^3")
    assert code == 0 and out.strip() == "D^(1)(t^3) = t^2"


def test_delta_and_root(capsys):
    doc = run_json(capsys, "delta", "-p", "2", "-m", "1", "t^2+t+1")
    assert doc["result"] == "t^2 + 1" and doc["root"] == "t + 1"


def test_delta_bound_is_a_domain_error(capsys):
    code, _, err = run(capsys, "delta", "-p", "2", "-m", "10", "t")
    assert code == 1 and "bound" in err


def test_lucas(capsys):
    assert run_json(capsys, "lucas", "7", "3", "2")["value"] == 1
    code, out, _ = run(capsys, "lucas", "5", "2", "2")
    assert out.strip() == "C(5, 2) mod 2 = 0"


def test_pm_root(capsys):
    assert run_json(capsys, "pm-root", "-p", "2", "-m", "1", "(t^2+1)/t^2")["root"] == "(t + 1)/t"
    assert run_json(capsys, "pm-root", "-p", "2", "-m", "1", "t^3")["root"] is None


@pytest.fixture
def ideal_files(tmp_path):
    a = tmp_path / "a.txt"
    a.write_text("# closed\nX0 + t^2*X1\n")
    b = tmp_path / "b.txt"
    b.write_text("X0 + t*X1\n---\nX0 + t*X1\nX1\n")
    return a, b


def test_ideal_rational(capsys, ideal_files):
    a, b = ideal_files
    doc = run_json(capsys, "ideal-rational", "-p", "2", "-m", "1", str(a), str(b))
    assert [d["rational"] for d in doc["ideals"]] == [True, False, True]
    assert doc["ideals"][1]["witnesses"] == [{"i": 1, "generator": "X0 + t*X1", "remainder": "X1"}]
    doc = run_json(capsys, "ideal-rational", "-p", "2", "-m", "2", "--reduced-tests", str(a))
    assert doc["ideals"][0]["tested"] == [1, 2]


def test_ideal_descend(capsys, ideal_files):
    a, b = ideal_files
    doc = run_json(capsys, "ideal-descend", "-p", "2", "-m", "1", str(a))
    assert doc["ideals"][0]["descended"] == ["X0 + t^2*X1"]
    code, out, err = run(capsys, "ideal-descend", "-p", "2", "-m", "1", str(b), "--json")
    assert code == 1 and "not closed" in err
    assert json.loads(out)["certificate"]["witnesses"]


def test_ideal_intersect(capsys, tmp_path):
    f = tmp_path / "i.txt"
    f.write_text("X0 + t^2*X1\n---\nX0 + (t+1)^2*X1\n")
    doc = run_json(capsys, "ideal-intersect", "-p", "2", "-m", "1", str(f))
    assert doc["basis"] == ["X0^2 + X0*X1 + (t^4 + t^2)*X1^2"] and doc["rational"] is True


def test_vanishing(capsys):
    doc = run_json(capsys, "vanishing", "-p", "2", "-m", "1", "[t^2:1];[0:1]")
    assert doc["basis"] == ["X0^2 + t^2*X0*X1"] and doc["rational"] is True
    code, _, _ = run(capsys, "vanishing", "-p", "2", "[0:0]")
    assert code == 1
    code, _, _ = run(capsys, "vanishing", "-p", "2", "t:1")
    assert code == 1


def test_csp_search(capsys):
    doc = run_json(capsys, "csp-search", "-p", "2", "-m", "3", "--T", "t,t+1,inf", "--deg-bound", "4")
    assert doc["S"] == ["t^2 + t + 1", "t^4 + t + 1"] and doc["verified"] is True
    assert doc["quotient_size"] == 9
    assert [s["kernel_after"] for s in doc["places"]] == [3, 1]
    code, _, err = run(capsys, "csp-search", "-p", "2", "-m", "3", "--T", "t", "--deg-bound", "1")
    assert code == 1 and "degree 1" in err


def test_filtration(capsys):
    doc = run_json(capsys, "filtration", "-p", "3", "--gens", "2", "--n-max", "2")
    assert doc["intersection"] == [1, 2] and doc["intersection_is_torsion"] is True
    doc = run_json(capsys, "filtration", "-p", "2", "--gens", "t,t+1", "--n-max", "3", "--T", "t,t+1,inf")
    assert doc["levels"][2]["basis"] == ["(t)^8", "(t + 1)^8"]
    assert doc["intersection"] == [1]


def test_exm_reports(capsys):
    doc = run_json(capsys, "exm0", "-p", "2", "--n-max", "3")
    assert doc["verdicts"]["overall"].startswith("converges")
    doc = run_json(capsys, "exm1", "-p", "2", "--n-max", "3", "--places", "t+1,t^2+t+1")
    vals = [r["valuation"] for r in doc["rows"] if r["place"] == "t^2 + t + 1" and r["target"] == "y_(n+1) - y_n"]
    assert vals == [0, 4]
    code, out, _ = run(capsys, "exm1", "-p", "2", "--n-max", "2")
    assert code == 0 and "v_(t-1) and v_(t+1) are the same place" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["derive", "-p", "4", "-i", "1", "t"],
        ["derive", "-p", "3", "-i", "1", "t +"],
        ["pm-root", "-p", "3", "-m", "1", "1/0"],
        ["exm1", "-p", "2", "--places", "t"],
        ["exm0", "-p", "2", "--b", "0"],
        ["ideal-rational", "-p", "2", "-m", "1", "/nonexistent/file"],
    ],
)
def test_domain_errors_exit_1(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1 and err.startswith(f"fptkit {argv[0]}: error:")


@pytest.mark.parametrize("argv", [[], ["derive"], ["lucas", "a", "b", "2"], ["nosuch"], ["derive", "-p", "2", "t"]])
def test_usage_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_module_entry_point_is_deterministic():
    cmd = [sys.executable, "-m", "fptkit", "exm0", "-p", "3", "--n-max", "3", "--json"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and json.loads(first)["sequence_id"] == "exm0"
