import io
import subprocess
import sys

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from ghorkit.cli import run
from ghorkit.corpus import CORPUS_DIR, corpus_manifest

FIG1 = str(CORPUS_DIR / "ex-fig1.dqif")
HEX = str(CORPUS_DIR / "hex-c3.dqif")


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    status = run(list(argv), out, err)
    return status, out.getvalue(), err.getvalue()


def test_matchings_listing():
    status, out, _ = call("matchings", FIG1)
    lines = out.splitlines()
    assert status == 0
    assert sum(line.endswith(" simple") for line in lines) == 3
    assert "x = b,d' simple" in lines
    status, out, _ = call("matchings", FIG1, "--simple-only")
    assert len(out.splitlines()) == 3


def test_eq():
    status, out, _ = call("eq", FIG1, "b.a.a.d@3", "b'.a.a.d'@3", "--dimer", "--bound", "8")
    assert status == 0
    assert out.splitlines() == ["ghor: equal", "dimer: not-equal-within-bound"]


def test_report():
    status, out, _ = call("report", HEX)
    assert status == 0
    assert out.splitlines()[0] == "N=2 dimS=3 bound=3 RS=equal-up-to-bound(6)"


def test_labels_and_cycles():
    status, out, _ = call("labels", FIG1, "--basis", "simple")
    assert status == 0 and "sigma: x*y*z" in out
    status, out, _ = call("cycles", FIG1)
    assert status == 0 and len(out.splitlines()) == 9
    status, out, _ = call("cycle-algebra", HEX)
    assert out.splitlines() == ["generators: m1, m2, m3", "dim=3"]


def test_center_and_compare():
    status, out, _ = call("compare-rs", FIG1, "--bound", "6")
    assert (status, out.strip()) == (0, "RS=strictly-smaller(6) witness=z")
    status, out, _ = call("center", FIG1, "--bound", "2")
    assert status == 0 and "z," not in out


def test_geodesic_exit_codes():
    status, out, _ = call("geodesic", FIG1, "--bound", "4")
    assert status == 1 and "witness=a@1 class=(1,0)" in out
    status, out, _ = call("geodesic", HEX, "--bound", "4")
    assert status == 0 and out.startswith("geodesic=geodesic-up-to-bound(4)")


def test_module_commands():
    status, out, _ = call("module-check", FIG1, str(CORPUS_DIR / "ex-fig1-vertex1.module"))
    assert status == 0 and "syzygies: b@1, b'@1, a@1 - 7e1" in out
    status, out, _ = call("resolve", HEX, str(CORPUS_DIR / "hex-c3-235.module"))
    lines = out.splitlines()
    assert status == 0
    assert [line.split(",")[0] for line in lines[:4]] == ["term 0: rank 1", "term 1: rank 9", "term 2: rank 64", "term 3: rank 144"]
    assert lines[4:7] == ["d2=ok", "pd=3", "case=full"]


def test_module_check_failure(tmp_path):
    bad = tmp_path / "bad.module"
    bad.write_text("module\nsupport 1 2\nscalar b 1\n")
    status, out, _ = call("module-check", FIG1, str(bad))
    assert status == 1 and "valid=false" in out


def test_validate_failure(tmp_path):
    broken = tmp_path / "broken.dqif"
    broken.write_text((CORPUS_DIR / "hex-c3.dqif").read_text().replace("arrow l3 1 1 -1 -1", "arrow l3 1 1 -1 0"))
    status, out, _ = call("validate", str(broken))
    assert status == 1 and out.splitlines()[-1] == "valid=false"


def test_usage_and_parse_errors(tmp_path):
    assert call()[0] == 2
    assert call("frobnicate", FIG1)[0] == 2
    assert call("geodesic", FIG1, "--bound", "0")[0] == 2
    assert call("matchings", FIG1, "--no-such-flag")[0] == 2
    assert call("validate", str(tmp_path / "missing.dqif"))[0] == 2
    bad = tmp_path / "bad.dqif"
    bad.write_text("surface 2\nvertices x\n")
    status, _, err = call("validate", str(bad))
    assert status == 2 and "line 2" in err
    assert call("eq", FIG1, "a@2", "a@1")[0] == 2


@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(st.text(alphabet="surfacevtio wdcl0123456789-\n", max_size=80))
def test_malformed_inputs_follow_exit_contract(tmp_path, text):
    f = tmp_path / "fuzz.dqif"
    f.write_text(text)
    for cmd in ("validate", "matchings"):
        status, _, _ = call(cmd, str(f))
        assert status in (0, 1, 2)


def test_deterministic_output():
    for argv in (("cycles", FIG1), ("geodesic", HEX, "--bound", "3"), ("resolve", FIG1, str(CORPUS_DIR / "ex-fig1-vertex1.module"))):
        assert call(*argv) == call(*argv)


def test_manifest(tmp_path):
    entries = {e.name: e for e in corpus_manifest()}
    assert "published arrow labels" in entries["ex-fig1"].provenance
    assert entries["hex-c3"].provenance.startswith("derived")
    assert entries["g2-c5"].provenance.startswith("derived")
    assert corpus_manifest(tmp_path) == []
    status, out, _ = call("corpus", str(tmp_path))
    assert (status, out) == (0, "")


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "ghorkit.cli", "matchings", FIG1],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert len(proc.stdout.splitlines()) == 6
