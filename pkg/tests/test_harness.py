"""Harness and CLI tests: registry integrity, filtering, reports, exit codes."""

import json
import re
from fractions import Fraction

import pytest

from hesse_lab import harness
from hesse_lab.cli import main
from hesse_lab.field import tower_eps
from hesse_lab.hesse import PencilParameter


def test_registry_ids_unique_and_well_formed():
    ids = harness.check_ids()
    assert len(ids) == len(set(ids))
    assert len(ids) >= 50
    for check_id in ids:
        assert re.fullmatch(r"[a-z0-9_]+(\.[a-z0-9_]+)+", check_id)
    for check in harness.registry():
        assert check.reference.strip()


def test_namespaces_present():
    ids = harness.check_ids()
    for prefix in ("hesse.", "groups.", "torsion.", "lattice."):
        assert any(i.startswith(prefix) for i in ids)
    for letter in "abcdefghijklmn":
        assert f"hesse.identity.{letter}" in ids


def test_select_preserves_registry_order():
    selected = harness.select_checks(("lattice.*",))
    ids = [c.check_id for c in selected]
    assert ids == [i for i in harness.check_ids() if i.startswith("lattice.")]


def test_select_empty_filter_keeps_everything():
    assert harness.select_checks(()) == harness.registry()


def test_select_overlapping_filters_do_not_duplicate():
    selected = harness.select_checks(("lattice.*", "lattice.kummer"))
    ids = [c.check_id for c in selected]
    assert len(ids) == len(set(ids))


def test_unknown_filter_raises():
    with pytest.raises(ValueError):
        harness.select_checks(("no.such.check",))


def test_config_rejects_low_precision():
    with pytest.raises(ValueError):
        harness.HarnessConfig(precision_bits=32)


def test_config_env_override(monkeypatch):
    monkeypatch.setenv("HESSE_LAB_PRECISION", "192")
    assert harness.default_config().precision_bits == 192
    assert harness.default_config(precision_bits=128).precision_bits == 128
    monkeypatch.delenv("HESSE_LAB_PRECISION")
    assert harness.default_config().precision_bits == 128


def test_lattice_subset_passes():
    report = harness.run(harness.default_config(filters=("lattice.*",)))
    assert all(r.status == "pass" for r in report.results)
    assert report.exit_code == 0
    assert all(r.runtime_ms >= 0 for r in report.results)


def test_norm_twelve_absence_check_has_empty_witness():
    report = harness.run(harness.default_config(filters=("lattice.a2m3.norm12",)))
    (result,) = report.results
    assert result.status == "pass"
    assert result.witness == {"vectors": []}


def test_report_json_round_trip(tmp_path):
    report = harness.run(harness.default_config(filters=("lattice.a2m6.snf",)))
    path = tmp_path / "report.json"
    text = harness.report_json(report, str(path))
    on_disk = json.loads(path.read_text(encoding="utf-8"))
    assert on_disk == json.loads(text) == harness.report_dict(report)
    assert on_disk["version"] == harness.SCHEMA_VERSION
    assert on_disk["config"]["lambdas"] == ["1", "2", "1/2"]
    entry = on_disk["results"][0]
    assert set(entry) == {"check_id", "status", "witness", "paper_ref", "runtime_ms"}


def test_reports_deterministic_up_to_timing():
    config = harness.default_config(filters=("hesse.identity.*",))
    strip = lambda rep: [(r.check_id, r.status, r.witness) for r in rep.results]
    assert strip(harness.run(config)) == strip(harness.run(config))


def test_failing_runner_is_caught(monkeypatch):
    def boom(_config):
        raise ZeroDivisionError("synthetic")

    fake = (harness.RegisteredCheck("fake.boom", "always explodes", boom),)
    monkeypatch.setattr(harness, "_REGISTRY", fake)
    report = harness.run(harness.HarnessConfig())
    (result,) = report.results
    assert result.status == "fail"
    assert "ZeroDivisionError" in result.witness
    assert report.exit_code == 1


def test_jsonify_grammar():
    eps = tower_eps().symbol_element("eps")
    assert harness._jsonify(Fraction(1, 2)) == "1/2"
    assert harness._jsonify(eps) == "eps"
    assert harness._jsonify((1, (2, 3))) == [1, [2, 3]]
    assert harness._jsonify({"k": None}) == {"k": None}
    assert harness._jsonify(PencilParameter.infinity()) == "inf"
    assert harness._jsonify(PencilParameter.from_affine(Fraction(3, 2))) == "3/2"


# CLI ------------------------------------------------------------------------


def test_cli_list(capsys):
    assert main(["list"]) == 0
    out = capsys.readouterr().out.strip().splitlines()
    assert tuple(out) == harness.check_ids()


def test_cli_check_with_json(tmp_path, capsys):
    path = tmp_path / "out.json"
    code = main(["check", "lattice.*", "--json", str(path)])
    out = capsys.readouterr().out
    assert code == 0
    assert "8/8 checks passed" in out
    data = json.loads(path.read_text(encoding="utf-8"))
    assert [r["check_id"] for r in data["results"]] == [
        i for i in harness.check_ids() if i.startswith("lattice.")
    ]


def test_cli_unknown_filter_exit_two(capsys):
    assert main(["check", "no.such.*"]) == 2
    assert "matches no registered check" in capsys.readouterr().err


def test_cli_rejects_singular_lambda():
    with pytest.raises(SystemExit):
        main(["check", "torsion.nine", "--lambda", "-3"])
    with pytest.raises(SystemExit):
        main(["check", "torsion.nine", "--lambda", "inf"])


def test_cli_custom_lambda_runs(capsys):
    code = main(["check", "torsion.two", "--lambda", "5/3"])
    out = capsys.readouterr().out
    assert code == 0
    assert "1/1 checks passed" in out


def test_cli_plot(tmp_path, capsys):
    out = tmp_path / "fig.svg"
    code = main(["plot-pencil", "--lambda", "1", "--lambda", "inf", "--out", str(out)])
    assert code == 0
    assert out.exists()
    text = out.read_text(encoding="utf-8")
    assert text.count('class="member"') == 2
    assert capsys.readouterr().out.strip() == str(out)


def test_cli_plot_window_validation():
    with pytest.raises(SystemExit):
        main(["plot-pencil", "--lambda", "1", "--out", "/tmp/x.svg", "--window", "1,2,3"])
