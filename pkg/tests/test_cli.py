import csv
import io
import json
import math

import pytest

from oilcurb import cli
from oilcurb.cli import OUTCOME_COLUMNS, ConfigError, ScenarioConfig, load_config, main, parse_grid, render, run


def invoke(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


class TestGrid:
    def test_inclusive_range(self):
        g = parse_grid("0:0.7:0.01")
        assert len(g) == 71
        assert g[0] == 0.0 and g[-1] == 0.7
        assert g[30] == 0.3

    def test_list_and_single(self):
        assert parse_grid("0.1, 0.3,0.5") == [0.1, 0.3, 0.5]
        assert parse_grid("0.2") == [0.2]

    @pytest.mark.parametrize("text", ["0:1", "a:b:c", "0:0.5:0", "0.5:0.1:0.1", "x"])
    def test_bad(self, text):
        with pytest.raises(ConfigError):
            parse_grid(text)


class TestConfig:
    def test_empty_config_is_default(self, tmp_path):
        path = tmp_path / "empty.ini"
        path.write_text("")
        assert load_config(path) == ScenarioConfig()

    def test_sections(self, tmp_path):
        path = tmp_path / "c.ini"
        path.write_text(
            "[calibration]\np_star = 90\nhorizon = long\n[policy]\ngrid = 0.1,0.2\n"
            "[run]\nmode = exact\nthreads = 2\n[output]\nformat = json\n"
        )
        cfg = load_config(path)
        assert cfg.p_star == 90.0
        assert cfg.horizon.value == "long"
        assert cfg.grid == [0.1, 0.2]
        assert cfg.mode.value == "exact"
        assert (cfg.threads, cfg.fmt) == (2, "json")

    def test_two_field_sources(self, tmp_path):
        path = tmp_path / "c.ini"
        path.write_text("[fields]\npath = f.csv\nseed = 3\n")
        with pytest.raises(ConfigError, match="either"):
            load_config(path)

    def test_bad_value(self, tmp_path):
        path = tmp_path / "c.ini"
        path.write_text("[calibration]\np_star = cheap\n")
        with pytest.raises(ConfigError, match="p_star"):
            load_config(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            load_config(tmp_path / "nope.ini")

    def test_validate_paths_and_grid(self, tmp_path):
        with pytest.raises(ConfigError):
            ScenarioConfig(fields_path=tmp_path / "nope.csv").validate()
        with pytest.raises(ConfigError):
            ScenarioConfig(grid=[0.5, 1.0]).validate()


class TestCommands:
    def test_baseline(self, capsys):
        code, out, _ = invoke(capsys, "baseline")
        assert code == 0
        table = {r["quantity"]: r["value"] for r in rows(out)}
        assert float(table["p_star"]) == 101.33
        assert float(table["s_row_star"]) == 91.5
        assert abs(float(table["clearing_residual"])) < 1e-12

    def test_empty_config_baseline(self, capsys, tmp_path):
        path = tmp_path / "empty.ini"
        path.write_text("")
        assert invoke(capsys, "baseline", "--config", str(path))[1] == invoke(capsys, "baseline")[1]

    def test_quantity_sweep_columns(self, capsys):
        code, out, _ = invoke(capsys, "quantity", "--alpha-grid", "0:0.7:0.01", "--horizon", "short")
        assert code == 0
        header = out.splitlines()[0].split(",")
        assert header == list(OUTCOME_COLUMNS)
        assert len(rows(out)) == 71

    def test_discount_single(self, capsys):
        code, out, _ = invoke(capsys, "discount", "--delta", "0.2", "--horizon", "short")
        assert code == 0
        [row] = rows(out)
        assert float(row["d_profit_ru"]) == pytest.approx(-152, abs=0.5)

    def test_json(self, capsys):
        code, out, _ = invoke(capsys, "quantity", "--alpha", "0.3", "--format", "json", "--horizon", "long")
        assert code == 0
        [rec] = json.loads(out)
        assert list(rec) == list(OUTCOME_COLUMNS)
        assert rec["d_profit_ru"] == pytest.approx(-158, rel=0.1)

    def test_regions(self, capsys):
        code, out, _ = invoke(capsys, "regions", "--grid", "0.3")
        assert code == 0
        [row] = rows(out)
        assert float(row["EU"]) == pytest.approx(-0.47, abs=0.1)
        assert list(row) == ["extent", "EU", "US", "India", "China", "Russia"]

    def test_compare(self, capsys):
        code, out, _ = invoke(capsys, "compare", "--grid", "0,0.5")
        assert code == 0
        assert [r["policy"] for r in rows(out)] == ["quantity", "quantity", "discount", "discount"]

    def test_indifference(self, capsys):
        code, out, _ = invoke(capsys, "indifference", "--alpha-grid", "0.4")
        assert code == 0
        [row] = rows(out)
        assert float(row["delta"]) == pytest.approx(0.2, abs=0.02)
        assert row["saturated"] == "false"

    def test_gen_fields_then_load(self, capsys, tmp_path):
        code, _, _ = invoke(capsys, "gen-fields", "--seed", "4", "--out-dir", str(tmp_path))
        assert code == 0
        path = tmp_path / "fields.csv"
        code, from_file, _ = invoke(capsys, "quantity", "--alpha", "0.2", "--fields", str(path))
        code2, from_seed, _ = invoke(capsys, "quantity", "--alpha", "0.2", "--seed", "4")
        assert code == code2 == 0
        assert from_file == from_seed

    def test_out_dir(self, capsys, tmp_path):
        code, out, _ = invoke(capsys, "discount", "--delta-grid", "0:0.9:0.1", "--out-dir", str(tmp_path))
        assert code == 0 and out == ""
        assert len(rows((tmp_path / "discount_short.csv").read_text())) == 10

    def test_byte_identical_and_thread_independent(self, capsys, tmp_path, monkeypatch):
        a, b = tmp_path / "a", tmp_path / "b"
        invoke(capsys, "discount", "--mode", "exact", "--horizon", "long", "--threads", "1", "--out-dir", str(a))
        monkeypatch.setenv("OILCURB_THREADS", "4")
        invoke(capsys, "discount", "--mode", "exact", "--horizon", "long", "--out-dir", str(b))
        assert (a / "discount_long.csv").read_bytes() == (b / "discount_long.csv").read_bytes()


class TestExitCodes:
    def test_grid_out_of_range(self, capsys):
        code, _, err = invoke(capsys, "quantity", "--alpha", "1.2")
        assert code == 2
        assert err.startswith("oilcurb: error:")

    def test_bad_grid_syntax(self, capsys):
        assert invoke(capsys, "quantity", "--alpha-grid", "0:x:1")[0] == 2

    def test_missing_fields_file(self, capsys, tmp_path):
        assert invoke(capsys, "quantity", "--fields", str(tmp_path / "none.csv"))[0] == 2

    def test_malformed_fields_file(self, capsys, tmp_path):
        path = tmp_path / "f.csv"
        path.write_text("field_id,capacity_mbd,opex_usd_per_b,capex_usd_per_b\nF1,x,1,1\n")
        assert invoke(capsys, "quantity", "--fields", str(path))[0] == 2

    def test_bad_env_threads(self, capsys, monkeypatch):
        monkeypatch.setenv("OILCURB_THREADS", "many")
        assert invoke(capsys, "quantity", "--alpha", "0.1")[0] == 2

    def test_unwritable_output(self, capsys, tmp_path):
        blocker = tmp_path / "file"
        blocker.write_text("")
        assert invoke(capsys, "baseline", "--out-dir", str(blocker / "sub"))[0] == 4

    def test_solver_failure(self, capsys, monkeypatch):
        from oilcurb.errors import SolverError

        def boom(cfg):
            raise SolverError("no bracket")

        monkeypatch.setitem(cli.COMMANDS, "quantity", boom)
        code, _, err = invoke(capsys, "quantity")
        assert code == 3 and "solver error" in err

    def test_non_finite_cell_aborts(self, capsys, monkeypatch):
        monkeypatch.setitem(cli.COMMANDS, "quantity", lambda cfg: (("extent", "x"), [{"extent": 0.1, "x": math.nan}]))
        assert invoke(capsys, "quantity")[0] == 3

    def test_bad_flag(self):
        with pytest.raises(SystemExit) as exc:
            main(["quantity", "--horizon", "medium"])
        assert exc.value.code == 2


class TestRender:
    def test_csv_quoting(self):
        text = render(("name", "v"), [{"name": "a,b", "v": 1.5}], "csv")
        assert text == 'name,v\n"a,b",1.5\n'

    def test_run_to_stream(self):
        buf = io.StringIO()
        assert run(ScenarioConfig(grid=[0.2]), "discount", stdout=buf) == 0
        assert buf.getvalue().startswith("extent,")


class TestConfigComments:
    def test_inline_comments(self, tmp_path):
        path = tmp_path / "c.ini"
        path.write_text("[calibration]\nhorizon = long   ; short | long\n[run]\nmode = exact # or approx\n")
        cfg = load_config(path)
        assert (cfg.horizon.value, cfg.mode.value) == ("long", "exact")
