import json
import subprocess
import sys

import numpy as np
import pytest

from doeforge import UNIT_CUBE, DesignSpace, SampleSet, make_stream, read_points, write_points
from doeforge.cli import main
from doeforge.errors import ParseError
from doeforge.io import file_digest, read_manifest


def test_csv_roundtrip_bitwise(tmp_path):
    pts = make_stream(0).generator().random((37, 3))
    s = SampleSet(pts, UNIT_CUBE, "test")
    path = tmp_path / "pts.csv"
    write_points(s, path)
    back = read_points(path)
    assert np.array_equal(back.points, s.points)


def test_json_roundtrip_bitwise(tmp_path):
    pts = make_stream(1).generator().random((11, 2))
    s = SampleSet(pts, UNIT_CUBE, "test", 1, {"k": (1, 2)})
    path = tmp_path / "pts.json"
    write_points(s, path, fmt="json")
    back = read_points(path)
    assert np.array_equal(back.points, s.points)
    assert back.domain == UNIT_CUBE and back.method == "test"


def test_csv_parse_error_line_number(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("x1,x2\n0.1,0.2\n0.3\n", encoding="utf-8")
    with pytest.raises(ParseError) as err:
        read_points(path)
    assert err.value.line == 3
    path.write_text("a,b\n0.1,0.2\n", encoding="utf-8")
    with pytest.raises(ParseError) as err:
        read_points(path)
    assert err.value.line == 1


def test_json_points_file_resolution(tmp_path):
    pts = make_stream(2).generator().random((5, 2))
    s = SampleSet(pts, UNIT_CUBE, "test")
    write_points(s, tmp_path / "data.csv")
    doc = {
        "manifest": {"method": "test", "domain": {"kind": "unit01", "bounds": None}},
        "points_file": "data.csv",
    }
    jpath = tmp_path / "wrapper.json"
    jpath.write_text(json.dumps(doc), encoding="utf-8")
    back = read_points(jpath)
    assert np.array_equal(back.points, s.points)


def test_gen_hammersley_within_bounds(tmp_path):
    out = tmp_path / "pts.csv"
    rc = main([
        "gen", "--method", "hammersley", "--dim", "2", "--count", "400",
        "--bounds", "-1,1;0,1", "--out", str(out),
    ])
    assert rc == 0
    s = read_points(out)
    assert s.n == 400 and s.dims == 2
    assert np.all(s.points[:, 0] >= -1) and np.all(s.points[:, 0] <= 1)
    assert np.all(s.points[:, 1] >= 0) and np.all(s.points[:, 1] <= 1)
    assert (tmp_path / "pts.csv.manifest.json").exists()
    assert isinstance(s.domain, DesignSpace)


def test_gen_sparse_grid_level3(tmp_path):
    out = tmp_path / "sg.csv"
    rc = main([
        "gen", "--method", "sparse-grid", "--dim", "2", "--level", "3",
        "--out", str(out),
    ])
    assert rc == 0
    assert read_points(out).n == 13


def test_gen_deterministic_same_seed(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for out in (a, b):
        rc = main([
            "gen", "--method", "lhs", "--dim", "3", "--count", "20",
            "--seed", "9", "--out", str(out),
        ])
        assert rc == 0
    assert a.read_bytes() == b.read_bytes()


def test_manifest_regen_byte_identical(tmp_path):
    out = tmp_path / "mm.csv"
    rc = main([
        "gen", "--method", "maximin-lhs", "--dim", "2", "--count", "15",
        "--seed", "4", "--n-iter", "5", "--m", "40", "--out", str(out),
    ])
    assert rc == 0
    regen = tmp_path / "regen.csv"
    rc = main(["regen", str(out) + ".manifest.json", "--out", str(regen)])
    assert rc == 0
    assert out.read_bytes() == regen.read_bytes()
    man = read_manifest(str(out) + ".manifest.json")
    assert man["file_sha256"] == file_digest(out)


def test_gen_json_format_regen(tmp_path):
    out = tmp_path / "pts.json"
    rc = main([
        "gen", "--method", "sobol", "--dim", "4", "--count", "32",
        "--format", "json", "--out", str(out),
    ])
    assert rc == 0
    regen = tmp_path / "again.json"
    assert main(["regen", str(out) + ".manifest.json", "--out", str(regen)]) == 0
    assert out.read_bytes() == regen.read_bytes()


def test_gen_oa_csv_path(tmp_path):
    from doeforge import builtin_arrays
    from doeforge.classical import save_oa_csv

    oa_path = tmp_path / "array.csv"
    save_oa_csv(builtin_arrays()["oa8_4_2_3"], oa_path)
    out = tmp_path / "oalhs.csv"
    rc = main([
        "gen", "--method", "oa-lhs", "--oa", str(oa_path), "--seed", "3",
        "--out", str(out),
    ])
    assert rc == 0
    assert read_points(out).n == 8


def test_usage_errors_exit_2(tmp_path):
    # missing count for a count-driven method
    rc = main(["gen", "--method", "lhs", "--dim", "2",
               "--out", str(tmp_path / "x.csv")])
    assert rc == 2
    # malformed bounds
    rc = main(["gen", "--method", "halton", "--dim", "2", "--count", "4",
               "--bounds", "0;1", "--out", str(tmp_path / "y.csv")])
    assert rc == 2
    # argparse-level: unknown method
    rc = main(["gen", "--method", "nope", "--out", str(tmp_path / "z.csv")])
    assert rc == 2


def test_generation_failure_exit_1(tmp_path):
    rc = main(["gen", "--method", "factorial", "--dim", "25",
               "--out", str(tmp_path / "f.csv")])
    assert rc == 1


def test_compare_report(tmp_path):
    out = tmp_path / "report.json"
    rc = main([
        "compare", "--methods", "hammersley,random", "--dim", "2",
        "--count", "64", "--seeds", "5",
        "--metrics", "maximin,centered-l2,star-disc", "--out", str(out),
    ])
    assert rc == 0
    doc = json.loads(out.read_text())
    ham = [r for r in doc["reports"] if r["method"] == "hammersley"]
    rnd = [r for r in doc["reports"] if r["method"] == "random"]
    assert len(ham) == 1 and ham[0]["seed"] is None  # seedless: one entry
    assert len(rnd) == 5
    assert doc["summary"]["hammersley"]["seedless"] is True
    h_med = doc["summary"]["hammersley"]["star-disc"]["median"]
    r_med = doc["summary"]["random"]["star-disc"]["median"]
    assert h_med < r_med
    csv_path = tmp_path / "report.csv"
    lines = csv_path.read_text().strip().splitlines()
    assert lines[0] == "method,seed,metric,value"
    assert len(lines) == 1 + 3 * (1 + 5)


def test_compare_single_method_single_seed(tmp_path):
    out = tmp_path / "one.json"
    rc = main([
        "compare", "--methods", "lhs", "--dim", "2", "--count", "16",
        "--seeds", "1", "--out", str(out),
    ])
    assert rc == 0
    doc = json.loads(out.read_text())
    assert len(doc["reports"]) == 1
    assert doc["reports"][0]["seed"] == 0


def test_compare_unknown_metric_exit_2(tmp_path):
    rc = main([
        "compare", "--methods", "lhs", "--dim", "2", "--count", "8",
        "--metrics", "bogus", "--out", str(tmp_path / "r.json"),
    ])
    assert rc == 2


def test_compare_structural_method_count_resolution(tmp_path):
    out = tmp_path / "grid.json"
    rc = main([
        "compare", "--methods", "sparse-grid,factorial", "--dim", "2",
        "--count", "100", "--out", str(out),
    ])
    assert rc == 0
    doc = json.loads(out.read_text())
    by_method = {r["method"]: r for r in doc["reports"]}
    assert by_method["sparse-grid"]["n"] == 65  # largest level with n <= 100
    assert by_method["factorial"]["n"] == 9     # 3-level fits in 100


def test_console_script_entrypoint(tmp_path):
    out = tmp_path / "cli.csv"
    proc = subprocess.run(
        [sys.executable, "-m", "doeforge.cli", "gen", "--method", "halton",
         "--dim", "2", "--count", "10", "--out", str(out)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert read_points(out).n == 10
