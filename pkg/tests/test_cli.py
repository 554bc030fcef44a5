import json
from pathlib import Path
from typing import Any, Callable, Dict

import pytest

from adc_toolkit import cli
from adc_toolkit.cli import build_parser, main, request_from_args
from adc_toolkit.errors import InternalConsistencyError
from adc_toolkit.models import AdcComplex, AdcMorphism, SimplexMap
from adc_toolkit.parser import serialize_complex

WriteJson = Callable[[str, Any], str]


def run(capsys: pytest.CaptureFixture[str], *argv: str) -> Dict[str, Any]:
    code = main(list(argv))
    out = capsys.readouterr().out
    data = json.loads(out) if out.strip() else {}
    data["exit_code"] = code
    return data


@pytest.fixture
def broken_file(write_json: WriteJson, broken: AdcComplex) -> str:
    return write_json("broken.json", serialize_complex(broken))


@pytest.fixture
def loop_file(write_json: WriteJson, loop: AdcComplex) -> str:
    return write_json("loop.json", serialize_complex(loop))


class TestExitCodes:
    def test_oriental_passes(self, capsys: pytest.CaptureFixture[str]) -> None:
        data = run(capsys, "oriental", "2")
        assert data["exit_code"] == 0
        assert data["passed"]
        assert data["metadata"]["basis_size"] == 7

    def test_failed_check_exits_one(self, capsys: pytest.CaptureFixture[str], broken_file: str) -> None:
        data = run(capsys, "validate", broken_file)
        assert data["exit_code"] == 1
        assert not data["checks"]["d_squared"]
        assert "d_squared" in data["witnesses"]

    def test_missing_file_exits_two(self, capsys: pytest.CaptureFixture[str], tmp_path: Path) -> None:
        code = main(["validate", str(tmp_path / "nowhere.json")])
        assert code == 2
        assert "error:" in capsys.readouterr().err

    def test_no_command_exits_two(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert main([]) == 2

    def test_bad_environment_exits_two(self, capsys: pytest.CaptureFixture[str], monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setenv("ADC_COEFF_CAP", "zero")
        assert main(["oriental", "1"]) == 2
        assert "ADC_COEFF_CAP" in capsys.readouterr().err

    def test_unwritable_output_exits_two(self, capsys: pytest.CaptureFixture[str], tmp_path: Path) -> None:
        target = tmp_path / "missing" / "c2.json"
        assert main(["oriental", "2", "--output", str(target)]) == 2
        assert "cannot write file" in capsys.readouterr().err
        assert not target.exists()

    def test_g_phi_disagreement_is_a_witnessed_failure(
        self, capsys: pytest.CaptureFixture[str], monkeypatch: pytest.MonkeyPatch
    ) -> None:
        def disagree(phi: SimplexMap, side: str = "oplax") -> AdcMorphism:
            raise InternalConsistencyError(f"table and composite differ for {phi.values}")

        monkeypatch.setattr(cli, "g_phi", disagree)
        data = run(capsys, "gphi", "1", "01")
        assert data["exit_code"] == 1
        assert not data["checks"]["table_matches_composite"]
        assert "(0, 1)" in data["witnesses"]["table_matches_composite"]

    def test_classify_a_loop(self, capsys: pytest.CaptureFixture[str], loop_file: str) -> None:
        data = run(capsys, "classify", loop_file)
        assert data["exit_code"] == 1
        assert data["checks"]["unital"]
        assert not data["checks"]["strongly_loop_free"]


class TestOutput:
    def test_pretty(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert main(["disk", "1", "--pretty"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("disk: PASS")
        assert "  ok    d_squared" in out

    def test_artifact_is_written(self, capsys: pytest.CaptureFixture[str], tmp_path: Path) -> None:
        target = tmp_path / "triangle.json"
        assert main(["oriental", "2", "--output", str(target)]) == 0
        written = json.loads(target.read_text(encoding="utf-8"))
        assert written["name"] == "c(Δ2)"
        assert written["d"]["0.1.2"] == [[1, "0.1"], [-1, "0.2"], [1, "1.2"]]

    def test_validate_the_written_artifact(self, capsys: pytest.CaptureFixture[str], tmp_path: Path) -> None:
        target = tmp_path / "square.json"
        assert main(["tensor", "c(Δ1)", "c(Δ1)", "-o", str(target)]) == 0
        capsys.readouterr()
        assert run(capsys, "validate", str(target))["exit_code"] == 0


class TestCommands:
    def test_hom_count(self, capsys: pytest.CaptureFixture[str]) -> None:
        data = run(capsys, "hom", "c(Δ1)", "c(Δ2)")
        assert data["metadata"]["count"] == 7
        assert data["metadata"]["complete"]

    def test_jobs_do_not_change_the_verdict(self, capsys: pytest.CaptureFixture[str]) -> None:
        serial = run(capsys, "hom", "c(Δ1)", "c(Δ2)", "--jobs", "1")
        parallel = run(capsys, "hom", "c(Δ1)", "c(Δ2)", "--jobs", "2")
        serial.pop("timing_seconds")
        parallel.pop("timing_seconds")
        assert serial == parallel

    def test_gphi(self, capsys: pytest.CaptureFixture[str]) -> None:
        data = run(capsys, "gphi", "1", "01", "--side", "lax")
        assert data["exit_code"] == 0
        assert data["metadata"]["phi"] == [0, 1]

    def test_gphi_word_length(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert main(["gphi", "2", "01"]) == 2

    def test_slice_counts(self, capsys: pytest.CaptureFixture[str]) -> None:
        data = run(capsys, "slice", "Δ1", "0", "--trunc", "3")
        assert data["metadata"]["counts"] == [2, 3, 4]
        over = run(capsys, "slice", "Δ1", "0", "--trunc", "3", "--over")
        assert over["metadata"]["counts"] == [1, 1, 1]

    def test_homology_of_the_circle(self, capsys: pytest.CaptureFixture[str]) -> None:
        data = run(capsys, "homology", "∂Δ2", "--trunc", "3", "--reduced")
        groups = data["metadata"]["groups"]
        assert [g["rank"] for g in groups] == [0, 1, 0]

    def test_expect_acyclic_fails_on_the_circle(self, capsys: pytest.CaptureFixture[str]) -> None:
        data = run(capsys, "homology", "boundary2", "--trunc", "3", "--reduced", "--expect-acyclic")
        assert data["exit_code"] == 1
        assert data["witnesses"]["acyclic"] == "1"

    def test_comma(self, capsys: pytest.CaptureFixture[str]) -> None:
        data = run(capsys, "comma", "Δ1", "--trunc", "3")
        assert data["exit_code"] == 0
        assert data["metadata"]["caps"] == [1, 1]

    def test_aw_check(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert run(capsys, "aw", "2", "--check")["exit_code"] == 0

    def test_truncation_above_the_cap(self, capsys: pytest.CaptureFixture[str], monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setenv("ADC_TRUNC_CAP", "2")
        assert main(["nerve", "c(Δ1)", "--trunc", "3"]) == 2

    def test_acceptance_subset(self, capsys: pytest.CaptureFixture[str]) -> None:
        data = run(capsys, "acceptance", "--criteria", "3")
        assert data["exit_code"] == 0
        assert data["metadata"]["criteria"] == [3]


def test_request_keeps_morphism_endpoints_as_options() -> None:
    args = build_parser().parse_args(["validate", "f.json", "--source", "c(Δ0)", "--target", "c(Δ1)"])
    req = request_from_args(args)
    assert req.inputs == ["f.json"]
    assert req.options["source"] == "c(Δ0)"
    assert req.options["target"] == "c(Δ1)"
