import json
import subprocess
import sys

import pytest

from centralizers.campaigns import build_report, canonical_json, load_manifest, run_campaigns, select
from centralizers.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_ring_check_semiprime(capsys):
    code, out, _ = run_cli(capsys, "ring", "check", "M:2:Zn:9", "--semiprime", "--json")
    report = json.loads(out)
    assert code == 0
    assert report["semiprime"] == {"holds": False, "witness": "3*e11"}
    assert report["ring"]["cardinality"] == 6561


def test_ring_check_torsion_and_triangular(capsys):
    _, out, _ = run_cli(capsys, "ring", "check", "Zn:2", "--torsion", "2", "--json")
    assert json.loads(out)["2-torsion free"]["holds"] is False
    _, out, _ = run_cli(capsys, "ring", "check", "TRI:Zn:2", "--center", "--json")
    report = json.loads(out)
    assert report["associative"]["holds"] and report["ring"]["cardinality"] == 64
    assert report["ring"]["unital"] is False


def test_solve(capsys):
    code, out, _ = run_cli(capsys, "solve", "M:2:Zn:2", "vukman-2001", "--json")
    report = json.loads(out)
    assert code == 0 and report["cardinality"] == 1 and report["classification"]["zero"] == 1
    _, out, _ = run_cli(capsys, "solve", "M:2:Zn:3", "vukman-1999", "--json", "--members")
    report = json.loads(out)
    assert report["cardinality"] == 3 and report["classification"]["zero"] + report["classification"]["scalar-form"] == 3
    assert len(report["members"]) == 3


def test_solve_with_binding_and_sufficiency(capsys):
    code, out, _ = run_cli(capsys, "solve", "M:2:Zn:3", "mn-jordan(1,1)", "--bind", "T0=scalar:2", "--json")
    report = json.loads(out)
    assert code == 0 and report["cardinality"] == 1
    assert report["particular"] == report["bindings"]["T0"]
    code, out, _ = run_cli(capsys, "solve", "M:2:Zn:2", "jordan-left", "--verify-sufficiency", "--json")
    assert code == 0 and json.loads(out)["sufficiency"] == {"sound": True, "complete": True, "detail": ""}


def test_check_map_builtin(capsys):
    code, out, _ = run_cli(
        capsys, "check-map", "M:2:Zn:2", "builtin:entry-sum", "--identity", "vukman-1999", "--two-sided", "--json"
    )
    report = json.loads(out)
    assert code == 0
    assert report["identities"]["vukman-1999"]["holds"] is True
    assert report["two-sided"]["holds"] is False


def test_check_map_file_and_witness(capsys, tmp_path):
    path = tmp_path / "map.json"
    # column j holds the image of generator j
    path.write_text(json.dumps({"matrix": [[0, 1, 0, 0], [0, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 0]]}))
    _, out, _ = run_cli(capsys, "check-map", "M:2:Zn:4", str(path), "--left", "--identity", "vukman-ulbl-2003a", "--json")
    report = json.loads(out)
    assert report["left"]["witness"] == ["e11", "e12"]
    assert report["left"]["T(xy)"] == "e11 + e21"
    assert report["identities"]["vukman-ulbl-2003a"]["holds"] is False
    assert report["identities"]["vukman-ulbl-2003a"]["witness"] == {"x": "e12", "y": "e11"}


def test_check_map_exhaustive_triangular(capsys):
    _, out, _ = run_cli(capsys, "check-map", "TRI:Zn:2", "builtin:corner-projection", "--jordan-left", "--left", "--exhaustive", "--json")
    report = json.loads(out)
    assert report["jordan-left"]["holds"] is True
    assert report["left"]["holds"] is False


@pytest.mark.parametrize(
    "argv",
    [
        ["ring", "check", "M:x"],
        ["solve", "M:2:Zn:2", "no-such-law"],
        ["solve", "M:2:Zn:2", "T(x) = "],
        ["solve", "M:2:Zn:3", "vukman-1999-t0"],
        ["solve", "M:2:Zn:2", "jordan-left", "--bind", "T0"],
        ["check-map", "M:2:Zn:2", "[[1, 0], [0, 1]]"],
        ["check-map", "M:2:Zn:2", "builtin:nope"],
        ["verify-all", "--filter", "no-such-campaign"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    assert run_cli(capsys, *argv)[0] == 2


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["solve"])
    assert exc.value.code == 2


def test_budget_exit_3(capsys, monkeypatch):
    monkeypatch.setenv("CENTRALIZERS_ELEMENT_BUDGET", "100")
    assert run_cli(capsys, "ring", "check", "M:2:Zn:9", "--semiprime")[0] == 3
    monkeypatch.delenv("CENTRALIZERS_ELEMENT_BUDGET")
    assert run_cli(capsys, "ring", "check", "M:2:Zn:4", "--prime")[0] == 3


def test_catalog(capsys):
    code, out, _ = run_cli(capsys, "catalog", "--json")
    catalog = json.loads(out)
    assert code == 0 and len(catalog) >= 10
    assert catalog["vukman-2001"] == "2*T(x*y*x) = x*T(y)*x"


def test_manifest_covers_every_criterion():
    campaigns = load_manifest()
    assert sorted(c.criterion for c in campaigns) == list(range(1, 15))


def test_filter_semantics():
    campaigns = load_manifest()
    assert [c.id for c in select(campaigns, "kernel-mod-n")] == ["kernel-mod-n"]
    assert {c.id for c in select(campaigns, "vukman-ulbl-2003*")} == {"vukman-ulbl-2003a", "vukman-ulbl-2003b"}
    assert {c.id for c in select(campaigns, "vukman-1999")} == {"vukman-1999-char2-counterexample", "vukman-1999-scalar"}


def test_verify_all_filter(capsys, tmp_path):
    out_path = tmp_path / "r.json"
    code, out, _ = run_cli(capsys, "verify-all", "--filter", "nilpotent-jordan-not-left", "--json", str(out_path))
    assert code == 0 and out.startswith("PASS nilpotent-jordan-not-left")
    report = json.loads(out_path.read_text())
    assert report["schema"] == 1 and report["summary"] == {"total": 1, "passed": 1, "failed": 0}
    checks = {c["name"]: c for c in report["campaigns"][0]["checks"]}
    assert checks["jordan-left (all elements)"]["observed"] is True
    assert checks["left centralizer (all pairs)"]["observed"] is False


def test_verify_all_failing_campaign_exit_1(capsys):
    assert run_cli(capsys, "verify-all", "--filter", "vukman-ulbl-2003b")[0] == 1


def test_mn_grid_reports_every_binding():
    (campaign,) = select(load_manifest(), "mn-jordan-equals-t0")
    (result,) = run_campaigns([campaign])
    assert result.passed
    bindings = [c for c in result.checks if "T = T0" in c.name]
    assert len(bindings) == 3 + 5 + 5
    assert "(1,2) N=2" in result.info["exploration"]


def test_report_is_deterministic():
    campaigns = [c for c in load_manifest() if c.id not in ("oracle-completeness", "polarization-sufficiency")]
    first = build_report(run_campaigns(campaigns))
    second = build_report(run_campaigns(list(reversed(campaigns)), jobs=2))
    assert canonical_json(first, durations=False) == canonical_json(second, durations=False)
    assert "durations_ms" in first and "durations_ms" not in json.loads(canonical_json(first, durations=False))


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "centralizers", "catalog"], capture_output=True, text=True)
    assert proc.returncode == 0 and "left-centralizer" in proc.stdout
