"""
Testes da linha de comando: saídas e códigos de saída
"""

import json

import pytest

from modules.cli import join_value_options, main
from modules.run_config import EXIT_INVALID, EXIT_IO, EXIT_MISMATCH, EXIT_OK
from modules.scenario_io import save_scenario


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestRegion:

    def test_json(self, capsys):
        code, out, _ = run(capsys, "region", "--case", "mixed_support")
        payload = json.loads(out)
        assert code == EXIT_OK
        assert payload['classification_code'] == "hd<fd=fdp"
        assert payload['regions']['fd']['vertices'] == [
            ["0", "0"], ["1", "0"], ["1", "8/5"], ["3/5", "2"], ["0", "2"]]
        assert payload['corners']['prime'] == ["1", "8/5"]

    def test_parametric_case_text(self, capsys):
        code, out, _ = run(capsys, "region", "--case", "b", "--l", "1/2",
                           "--psi-fwd", "-1/2,1/2", "--psi-back", "0,1", "--format", "text")
        assert code == EXIT_OK
        assert "HD ⊂ FD = FD'" in out

    def test_negative_support_value(self, capsys):
        code, out, _ = run(capsys, "compare", "--case", "b", "--l", "1/2",
                           "--psi-fwd", "-1/2,1/2", "--psi-back", "0,1")
        assert code == EXIT_OK
        assert json.loads(out)["code"] == "hd<fd=fdp"

    def test_equals_form_still_works(self, capsys):
        code, _, _ = run(capsys, "region", "--case", "b", "--l=1/2",
                         "--psi-fwd=-1/2,1/2", "--psi-back=0,1")
        assert code == EXIT_OK

    def test_from_file(self, capsys, tmp_path, fully_overlapped):
        path = tmp_path / "cenario.json"
        save_scenario(path, fully_overlapped)
        code, out, _ = run(capsys, "region", "--in", str(path), "--format", "csv")
        assert code == EXIT_OK
        assert out.splitlines()[0] == "region,vertex,d1,d2,d1_decimal,d2_decimal"

    def test_writes_out_file(self, capsys, tmp_path):
        target = tmp_path / "regiao.json"
        code, out, _ = run(capsys, "region", "--case", "interference_free", "--out", str(target))
        assert code == EXIT_OK
        assert out == ""
        assert json.loads(target.read_text(encoding="utf-8"))['classification_code'] == "hd<fd=fdp"


class TestOtherCommands:

    def test_corners(self, capsys):
        code, out, _ = run(capsys, "corners", "--case", "mixed_support")
        assert code == EXIT_OK
        assert json.loads(out)['agree'] is True

    def test_corners_text(self, capsys):
        code, out, _ = run(capsys, "corners", "--case", "fully_overlapped", "--format", "text")
        assert code == EXIT_OK
        assert "Quantidades auxiliares" in out

    def test_dims_csv(self, capsys):
        code, out, _ = run(capsys, "dims", "--case", "mixed_support", "--format", "csv")
        assert code == EXIT_OK
        assert out.splitlines()[0] == "quantity,value,value_decimal"
        assert "null_h12,8/5,1.6" in out

    def test_compare(self, capsys):
        code, out, _ = run(capsys, "compare", "--case", "fully_overlapped")
        payload = json.loads(out)
        assert code == EXIT_OK
        assert payload['code'] == "hd=fd<fdp"
        assert payload['gain_fdp_hd'] == "1"

    def test_compare_text(self, capsys):
        code, out, _ = run(capsys, "compare", "--case", "symmetric_spread", "--format", "text")
        assert code == EXIT_OK
        assert "Comparação - HD ⊂ FD = FD'" in out


class TestSweep:

    def test_overlap_csv(self, capsys):
        code, out, _ = run(capsys, "sweep", "--overlap", "--l", "1/2", "--steps", "3")
        lines = out.splitlines()
        assert code == EXIT_OK
        assert lines[0] == "param,d1_max,d2_max,d_sum_fd,d_sum_fdp,class,rect_fd"
        assert lines[1] == "0,1,1,2,2,hd<fd=fdp,true"
        assert lines[3] == "1,1,1,1,1,hd=fd=fdp,false"

    def test_length_json(self, capsys):
        code, out, _ = run(capsys, "sweep", "--length", "--l-usr", "1/2",
                           "--l-bs", "1/4,1/2,1", "--format", "json")
        payload = json.loads(out)
        assert code == EXIT_OK
        assert payload['parameter'] == "l_bs"
        assert [row['d_sum_fdp'] for row in payload['rows']] == ["1/2", "1", "2"]

    def test_overlap_needs_length(self, capsys):
        code, _, err = run(capsys, "sweep", "--overlap")
        assert code == EXIT_IO
        assert "--l" in err

    def test_xlsx_needs_out(self, capsys):
        code, _, _ = run(capsys, "sweep", "--overlap", "--l", "1/2", "--format", "xlsx")
        assert code == EXIT_IO

    def test_xlsx_file(self, capsys, tmp_path):
        target = tmp_path / "varredura.xlsx"
        code, _, _ = run(capsys, "sweep", "--overlap", "--l", "1/2", "--steps", "3",
                         "--format", "xlsx", "--out", str(target))
        assert code == EXIT_OK
        assert target.read_bytes()[:2] == b"PK"


class TestVerify:

    def test_passes(self, capsys):
        code, out, _ = run(capsys, "verify", "--case", "mixed_support", "--trials", "2")
        payload = json.loads(out)
        assert code == EXIT_OK
        assert payload['passed'] is True
        assert payload['max_rank_gap'] == 0

    def test_corrupted_field_is_a_mismatch(self, capsys):
        code, out, _ = run(capsys, "verify", "--case", "mixed_support", "--trials", "2",
                           "--corrupt-field", "rank_h12")
        assert code == EXIT_MISMATCH
        assert json.loads(out)['passed'] is False

    def test_unknown_corrupt_field(self, capsys):
        code, _, _ = run(capsys, "verify", "--case", "mixed_support", "--corrupt-field", "nada")
        assert code == EXIT_IO

    def test_non_integral_density(self, capsys):
        code, _, err = run(capsys, "verify", "--case", "mixed_support", "--density", "3")
        assert code == EXIT_INVALID
        assert "sugestão: 10" in err

    def test_same_seed_same_bytes(self, capsys):
        argv = ("verify", "--case", "mixed_support", "--trials", "2", "--seed", "3")
        first = run(capsys, *argv)
        second = run(capsys, *argv)
        assert first[0] == second[0] == EXIT_OK
        assert first[1].encode("utf-8") == second[1].encode("utf-8")

    def test_seed_from_environment(self, capsys, monkeypatch):
        monkeypatch.setenv("FDX_SEED", "4")
        code, out, _ = run(capsys, "verify", "--case", "interference_free", "--trials", "1")
        assert code == EXIT_OK
        assert json.loads(out)['seed'] == 4


class TestErrors:

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "region", "--in", str(tmp_path / "nada.json"))
        assert code == EXIT_IO
        assert "não encontrado" in err

    def test_broken_json(self, capsys, tmp_path):
        path = tmp_path / "quebrado.json"
        path.write_text("{", encoding="utf-8")
        code, _, _ = run(capsys, "dims", "--in", str(path))
        assert code == EXIT_IO

    def test_invalid_scenario(self, capsys, tmp_path):
        path = tmp_path / "invalido.json"
        path.write_text(json.dumps({"l_t1": 0, "l_t2": 1, "l_r1": 1, "l_r2": 1}), encoding="utf-8")
        code, _, err = run(capsys, "region", "--in", str(path))
        assert code == EXIT_INVALID
        assert "l_t1 deve ser > 0" in err

    def test_case_missing_flags(self, capsys):
        code, _, err = run(capsys, "region", "--case", "b", "--l", "1/2")
        assert code == EXIT_IO
        assert "--psi-fwd, --psi-back" in err

    def test_empty_common_support(self, capsys):
        code, _, _ = run(capsys, "region", "--case", "a", "--l-bs", "1", "--l-usr", "1", "--psi", "")
        assert code == EXIT_INVALID

    @pytest.mark.parametrize("argv", [
        ["region"],
        ["region", "--case", "mixed_support", "--in", "x.json"],
        ["region", "--case", "zzz"],
        ["region", "--case", "mixed_support", "--format", "xlsx", "--out", "x.xlsx"],
    ])
    def test_bad_scenario_source(self, capsys, argv):
        code, _, _ = run(capsys, *argv)
        assert code == EXIT_IO

    def test_usage_error_exit_code(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["nope"])
        assert info.value.code == EXIT_IO


class TestJoinValueOptions:

    def test_joins_value_after_support_option(self):
        assert join_value_options(["region", "--psi-fwd", "-1/2,1/2", "--l", "1"]) == [
            "region", "--psi-fwd=-1/2,1/2", "--l=1"]

    def test_other_options_untouched(self):
        argv = ["verify", "--trials", "2", "--seed", "3", "--format", "text"]
        assert join_value_options(argv) == argv

    def test_trailing_option_left_for_argparse(self):
        assert join_value_options(["region", "--psi"]) == ["region", "--psi"]
