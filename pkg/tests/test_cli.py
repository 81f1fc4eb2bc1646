import io
import random
import subprocess
import sys

import pytest

from conftest import DATA, random_graph
from temporient.cli import run
from temporient.core import serialize_instance

CLOSING, SYNC, DIP_PATH = (str(DATA / n) for n in ("closing-triangle.tg", "sync-triangle.tg", "dip-path.tg"))


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_recognize_closing_triangle_prints_orientation():
    code, out, _ = call("recognize", "--variant", "tto", CLOSING, "--print-orientation")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "YES"
    assert len([x for x in lines if x.startswith("-> ")]) == 3


def test_recognize_strong_sync_triangle():
    code, out, _ = call("recognize", "--variant", "strong", SYNC)
    assert code == 1 and out == "NO reason=UNSAT: bottom-triangle\n"


def test_complete_dip_path():
    code, out, _ = call("complete", "--variant", "tto", "--budget", "2", DIP_PATH)
    assert code == 0 and out.splitlines() == ["YES", "+ a d 3", "+ b d 3"]
    code, out, _ = call("complete", "--variant", "tto", "--budget", "1", DIP_PATH)
    assert code == 1 and out == "NO reason=budget\n"


def test_yes_outputs_reverify(tmp_path):
    code, out, _ = call("complete", "--variant", "tto", "--budget", "2", DIP_PATH, "--print-orientation")
    assert code == 0
    orient = write(tmp_path, "o.txt", out)
    assert call("verify", "--variant", "tto", DIP_PATH, orient)[:2] == (0, "YES\n")
    rng = random.Random(11)
    for i in range(20):
        inst = write(tmp_path, f"g{i}.tg", serialize_instance(random_graph(rng, 5, 6)))
        for variant in ("tto", "strict", "strong", "strong-strict"):
            code, out, _ = call("recognize", "--variant", variant, inst, "--print-orientation")
            if code == 0:
                o = write(tmp_path, "w.txt", out)
                assert call("verify", "--variant", variant, inst, o)[0] == 0
            assert call("oracle", "recognize", "--variant", variant, inst)[0] == code


def test_verify_reports_violation(tmp_path):
    orient = write(tmp_path, "o.txt", "-> u v 1\n-> v w 1\n-> w u 1\n")
    code, out, _ = call("verify", "--variant", "tto", SYNC, orient)
    assert code == 1 and out.startswith("NO reason=wrong-direction\n")
    assert call("verify", "--variant", "strict", SYNC, orient)[0] == 0
    half = write(tmp_path, "h.txt", "-> u v 1\n")
    code, out, _ = call("verify", "--variant", "tto", SYNC, half)
    assert code == 1 and out.startswith("NO reason=improper")


def test_verify_multilayer(tmp_path):
    inst = write(tmp_path, "m.tg", "em u v 1\nem v w 1\nem w u 1,2\n")
    bad = write(tmp_path, "b.txt", "-> u v 1\n-> v w 1\n-> w u 1,2\n")
    code, out, _ = call("verify", inst, bad)
    assert code == 1 and "layer 1" in out
    good = write(tmp_path, "g.txt", "-> u v 1\n-> v w 1\n-> u w 1,2\n")
    assert call("verify", inst, good)[0] == 0


def test_multilayer_and_oracle(tmp_path):
    inst = write(tmp_path, "m.tg", "em a b 1,2\nem b c 2\nem a c 1\n")
    code, out, _ = call("multilayer", inst, "--print-orientation")
    assert code == call("oracle", "multilayer", inst)[0]
    assert out.splitlines()[0] in ("YES", "NO reason=search-exhausted")


def test_oracle_complete_matches():
    code, out, _ = call("oracle", "complete", "--variant", "tto", "--budget", "2", DIP_PATH)
    assert code == 0 and sorted(out.splitlines()[1:]) == ["+ a d 3", "+ b d 3"]
    code, out, _ = call("oracle", "complete", "--variant", "tto", "--budget", "1", DIP_PATH)
    assert (code, out) == (1, "NO reason=oracle\n")


def test_gen_roundtrip(tmp_path):
    cnf = write(tmp_path, "f.cnf", "p cnf 3 3\n-1 -2 0\n1 3 0\n2 -3 0\n")
    code, out, _ = call("gen", "--reduction", "ttc", "--k", "3", cnf)
    assert code == 0 and out.startswith("# completion instance: budget 0 (k=3)\n")
    inst = write(tmp_path, "g.tg", out)
    assert call("complete", "--variant", "tto", "--budget", "0", inst)[0] == 0
    nae = write(tmp_path, "n.cnf", "p cnf 3 1\n1 2 3 0\n")
    code, out, _ = call("gen", "--reduction", "mto", nae)
    assert code == 0 and call("multilayer", write(tmp_path, "m.tg", out))[0] == 0


@pytest.mark.parametrize("argv", [
    [],
    ["recognize", CLOSING],
    ["recognize", "--variant", "weird", CLOSING],
    ["recognize", "--variant", "tto", "/nonexistent.tg"],
    ["complete", "--variant", "tto", "--budget", "-1", DIP_PATH],
    ["recognize", "--variant", "tto", DIP_PATH],
    ["gen", "--reduction", "mto", "--k", "2", CLOSING],
    ["recognize", "--variant", "tto", "--jobs", "0", CLOSING],
])
def test_usage_errors_exit_2(argv):
    code, out, err = call(*argv)
    assert code == 2 and err and not out


def test_parse_error_names_line(tmp_path):
    bad = write(tmp_path, "bad.tg", "e a b 1\ne a b 2\n")
    code, _, err = call("recognize", "--variant", "tto", bad)
    assert code == 2 and "line 2" in err


def test_oracle_budget_exceeded(monkeypatch):
    monkeypatch.setenv("TEMPORIENT_ORACLE_BUDGET", "edges=2")
    code, _, err = call("oracle", "recognize", "--variant", "tto", CLOSING)
    assert code == 2 and "budget" in err


def test_output_is_deterministic():
    a = call("recognize", "--variant", "tto", CLOSING, "--print-orientation")
    b = call("recognize", "--variant", "tto", CLOSING, "--print-orientation")
    assert a == b


def test_console_entry_point_reads_stdin():
    text = (DATA / "closing-triangle.tg").read_text()
    proc = subprocess.run([sys.executable, "-m", "temporient", "recognize", "--variant", "tto", "-"],
                          input=text, capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "YES\n"
