import json

import pytest

from semicolor.census import ColoringSpec
from semicolor.cli import main
from semicolor.groups import subgroup_from_words


@pytest.fixture
def four_color_spec_file(tmp_path, d6, hexH):
    spec = ColoringSpec.type2(
        hexH, subgroup_from_words(d6, "a2b"), hexH, d6.element("a3")
    )
    path = tmp_path / "spec.json"
    path.write_text(json.dumps(spec.to_json()), encoding="utf-8")
    return path


class TestSubgroupsCommand:
    def test_subgroups_of_color_group(self, capsys):
        assert main(["subgroups", "--group", "dihedral:6", "--of", "a2,b"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["count"] == 6

    def test_index_filter(self, capsys):
        assert main(["subgroups", "--group", "dihedral:6", "--index", "2"]) == 0
        assert json.loads(capsys.readouterr().out)["count"] == 3

    def test_index_one(self, capsys):
        assert main(["subgroups", "--group", "dihedral:6", "--index", "1"]) == 0
        assert json.loads(capsys.readouterr().out)["count"] == 1

    def test_bad_descriptor_exits_two(self, capsys):
        assert main(["subgroups", "--group", "unknown:6"]) == 2
        assert capsys.readouterr().err.startswith("error:")

    def test_resource_limit_exits_three(self, capsys, monkeypatch):
        monkeypatch.setenv("SEMICOLOR_MAX_ORDER", "8")
        assert main(["subgroups", "--group", "dihedral:6"]) == 3


class TestEnumerateCommand:
    def test_two_orbit_census(self, capsys):
        assert main(["enumerate", "--group", "dihedral:6", "--H", "a2,b", "--type", "2"]) == 0
        assert "15 semiperfect" in capsys.readouterr().out

    def test_full_hexagon_census(self, capsys):
        code = main(
            ["enumerate", "--group", "dihedral:6", "--H", "a2,b", "--H", "a", "--type", "all"]
        )
        assert code == 0
        assert "25 semiperfect" in capsys.readouterr().out

    def test_rotation_color_group_has_no_one_orbit_colorings(self, capsys):
        assert main(["enumerate", "--group", "dihedral:6", "--H", "a", "--type", "1"]) == 0
        assert "0 semiperfect" in capsys.readouterr().out

    def test_census_file_output(self, capsys, tmp_path):
        out = tmp_path / "census.json"
        assert (
            main(
                [
                    "enumerate", "--group", "dihedral:6", "--H", "a2,b",
                    "--format", "json", "--out", str(out),
                ]
            )
            == 0
        )
        data = json.loads(out.read_text(encoding="utf-8"))
        assert data["total"] == 19
        assert len(data["entries"]) == 19

    def test_csv_output(self, capsys, tmp_path):
        out = tmp_path / "census.csv"
        main(
            [
                "enumerate", "--group", "dihedral:6", "--H", "a2,b",
                "--type", "2", "--format", "csv", "--out", str(out),
            ]
        )
        lines = out.read_text(encoding="utf-8").splitlines()
        assert len(lines) == 16  # header + 15 entries

    def test_non_index_two_color_group_rejected(self, capsys):
        assert main(["enumerate", "--group", "dihedral:6", "--H", "a2"]) == 2


class TestTableCommand:
    def test_row_count_and_back_references(self, capsys):
        import csv
        import io

        assert main(["table1"]) == 0
        out = capsys.readouterr().out
        rows = list(csv.reader(io.StringIO(out)))
        assert len(rows) == 19
        assert rows[0] == ["J", "l", "r^l", "Resulting Coloring"]
        results = [row[3] for row in rows[1:]]
        assert results.count("perfect") == 10
        for tag in ("(1)", "(2)", "(3)", "(4)"):
            assert f"{tag} semiperfect" in results
            assert f"equivalent to {tag}" in results


class TestVerifyCommand:
    def test_hexagon_suites_pass(self, capsys):
        assert main(["verify", "--group", "dihedral:6"]) == 0
        out = capsys.readouterr().out
        assert "all suites passed" in out
        assert "FAIL" not in out

    def test_degenerate_group_is_vacuous(self, capsys):
        assert main(["verify", "--group", "dihedral:1"]) == 0

    def test_square_quotient_suites_pass_slow(self, capsys):
        assert main(["verify", "--group", "p4m_quotient:2"]) == 0
        out = capsys.readouterr().out
        assert "all suites passed" in out
        assert "diagram-soundness" in out


class TestRenderCommand:
    def test_writes_svg(self, tmp_path, capsys, four_color_spec_file):
        out = tmp_path / "out.svg"
        assert main(["render", str(four_color_spec_file), "--out", str(out)]) == 0
        text = out.read_text(encoding="utf-8")
        assert text.startswith("<?xml")
        assert text.count("<polygon") == 12

    def test_deterministic_output(self, tmp_path, four_color_spec_file):
        out1, out2 = tmp_path / "a.svg", tmp_path / "b.svg"
        main(["render", str(four_color_spec_file), "--out", str(out1)])
        main(["render", str(four_color_spec_file), "--out", str(out2)])
        assert out1.read_bytes() == out2.read_bytes()

    def test_missing_file_exits_two(self, tmp_path, capsys):
        assert main(["render", str(tmp_path / "nope.json"), "--out", "x.svg"]) == 2


class TestConjugateCommand:
    def test_explicit_map(self, capsys, four_color_spec_file):
        code = main(["conjugate", str(four_color_spec_file), "--map", "a=a5,b=ab"])
        assert code == 0
        data = json.loads(capsys.readouterr().out)
        assert data["verdict"] == "semiperfect"
        assert ["e", "a^5b"] in data["blocks"]

    def test_search_for_target(self, capsys, four_color_spec_file):
        code = main(["conjugate", str(four_color_spec_file), "--onto", "a2,ab"])
        assert code == 0
        data = json.loads(capsys.readouterr().out)
        assert sorted(data["spec"]["H"]) == sorted(
            ["e", "a^2", "a^4", "ab", "a^3b", "a^5b"]
        )

    def test_recoloring_table_rows(self, capsys, four_color_spec_file):
        code = main(
            ["conjugate", str(four_color_spec_file), "--map", "a=a5,b=ab", "--table"]
        )
        assert code == 0
        lines = capsys.readouterr().out.splitlines()
        header = lines.index("domain,original,image,new")
        assert len(lines) - header - 1 == 12

    def test_requires_map_or_target(self, capsys, four_color_spec_file):
        assert main(["conjugate", str(four_color_spec_file)]) == 2
