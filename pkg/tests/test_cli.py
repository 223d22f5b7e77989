import io
import subprocess
import sys


from treeorders.cli import COMMANDS, run
from treeorders.textio import parse

WS = "wstree\nnode r parent=-\nnode a parent=r edgelen=2\nnode b parent=r edgelen=w\n"
WS_BR = "wstree\nnode r parent=-\nnode m parent=r edgelen=1\nnode a parent=m edgelen=1\nnode b parent=m edgelen=w\n"
SEG = "segtree\nnode r parent=-\nnode m parent=r len=1\nnode a parent=m len=1\nnode b parent=m len=2 top=open\n"
CHAIN = "segtree\nnode r parent=-\nnode a parent=r len=1\n"


def call(tmp_path, cmd, text, *extra):
    f = tmp_path / "in.txt"
    f.write_text(text)
    out, err = io.StringIO(), io.StringIO()
    code = run([cmd, str(f), *extra], stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def ok(tmp_path, cmd, text, *extra):
    code, out, err = call(tmp_path, cmd, text, *extra)
    assert code == 0, err
    return out


def test_rank(tmp_path):
    out = ok(tmp_path, "rank", WS, "b", "b@3", "a@1")
    assert out == "b w\nb@3 3\na@1 1\n"


def test_pad_and_succ(tmp_path):
    padded = ok(tmp_path, "pad", WS)
    assert parse(padded).root == "r'"
    back = ok(tmp_path, "succ", padded)
    assert ok(tmp_path, "iso", back + WS) == "true\n"


def test_iso_false(tmp_path):
    assert ok(tmp_path, "iso", WS + WS_BR) == "false\n"


def test_meet(tmp_path):
    assert ok(tmp_path, "meet", WS, "a@1", "b@2") == "r\n"
    assert ok(tmp_path, "meet", SEG, "a@1/2", "b@1") == "m\n"


def test_grading_commands(tmp_path):
    g = ok(tmp_path, "grade-rank", WS)
    assert g.startswith("grading\n")
    cover = ok(tmp_path, "cover", WS + g)
    assert cover.splitlines()[0] == "1: r"
    rg = ok(tmp_path, "rgrade", WS + g)
    assert "r 1" in rg.splitlines()
    q = ok(tmp_path, "qgrade-succ", WS + rg)
    assert "a 1/2" not in q or q.startswith("grading")
    br = ok(tmp_path, "grade-rank", WS_BR, "m")
    ext = ok(tmp_path, "extend-branch", WS_BR + br)
    assert "m 1/2" in ext.splitlines()


def test_road(tmp_path):
    out = ok(tmp_path, "road", WS)
    assert "node b parent=r len=1 top=closed" in out


def test_segtree_commands(tmp_path):
    assert "a 2" in ok(tmp_path, "arclen", SEG).splitlines()
    assert "a b@1 2" in ok(tmp_path, "metric", SEG, "a", "b@1").splitlines()
    assert ok(tmp_path, "check-metric", SEG, "--seed", "4").startswith("ok ")
    assert ok(tmp_path, "validate", SEG) == "ok\n"
    assert ok(tmp_path, "wispy", SEG) == "branching 1 twigs 2\n"
    assert ok(tmp_path, "width", SEG) == "2\n"
    out = ok(tmp_path, "reroot", SEG, "--root", "a")
    assert parse(out).root == "a"
    region = "region\nvertex a\nvertex r\n"
    assert ok(tmp_path, "convex", SEG + region) == "false\n"
    assert "digraph" in ok(tmp_path, "dot", SEG)


def test_approx_commands(tmp_path):
    dec = ok(tmp_path, "decompose", SEG)
    assert dec.splitlines() == [
        "branch 0 leaf=a base=- length=2 image=[0,1]",
        "branch 1 leaf=b base=m length=2 image=(0,1)",
    ]
    sub = ok(tmp_path, "subtree", CHAIN, "--n", "2")
    assert sub.splitlines() == ["a a@1/2", "a@1/2 r", "r -"]
    assert ok(tmp_path, "density", CHAIN, "--n", "2", "a@1/4", "a@3/4") == "a@1/4 a@3/4 2 a@1/2\n"
    assert ok(tmp_path, "density", CHAIN, "--n", "1", "a@1/4", "a@3/4") == "a@1/4 a@3/4 none\n"
    assert ok(tmp_path, "combine", CHAIN, "--n", "2").startswith("grading\n")
    assert ok(tmp_path, "inject", SEG, "--n", "3") == "m m\n"


def test_continuize(tmp_path):
    f = "jumpfn\npiece end=1/2 low=0 high=1/2\npiece end=1 low=3/2 high=2\n"
    out = ok(tmp_path, "continuize", f, "--target", "0")
    assert out == "jumpfn\npiece end=1/2 low=0 high=1/2 value=1/2\npiece end=1 low=1/2 high=2 value=2\n"


def test_diag(tmp_path):
    out = ok(tmp_path, "diag", "family\n(0)\n(0,1)\n")
    assert out == "stage 1 word=(0) promise=1 fired\nstage 2 word=(0,2) promise=3 blocked\n"


def test_exit_codes(tmp_path):
    code, _, err = call(tmp_path, "validate", "segtree\nnode r parent=-\nnode a parent=r len=1 top=open\nnode b parent=a len=1\n")
    assert code == 1 and "open top" in err
    code, _, err = call(tmp_path, "width", "segtree\nnode b parent=a len=1\n")
    assert code == 2 and "line 2" in err
    code, _, _ = call(tmp_path, "succ", "wstree\nnode r parent=-\nnode a parent=r edgelen=1\nnode b parent=r edgelen=1\n")
    assert code == 1
    code, _, _ = call(tmp_path, "subtree", CHAIN)
    assert code == 1


def test_input_flag(tmp_path):
    f = tmp_path / "x.txt"
    f.write_text(WS)
    out = io.StringIO()
    assert run(["meet", "--input", str(f), "a@1", "b@2"], stdout=out) == 0
    assert out.getvalue() == "r\n"


def test_every_command_is_deterministic(tmp_path):
    inputs = {
        "iso": WS + WS,
        "meet": WS,
        "cover": WS + "grading\nr 0\na@1 1\nb@1 1\n",
        "rgrade": WS + "grading\nr 0\na@1 1\nb@1 1\n",
        "qgrade-succ": WS + "grading\nr 0\na@1 1\na 2\n",
        "extend-branch": WS_BR + "grading\nm 0\n",
        "continuize": "jumpfn\npiece end=1/3 low=0 high=1\npiece end=1 low=2 high=3\n",
        "diag": "family\n(0) (1)\n(0,2)\n-\n",
        "convex": SEG + "region\nvertex m\ninterval a 0 1 closed closed\n",
    }
    extra = {
        "meet": ["a", "b"],
        "subtree": ["--n", "4"],
        "density": ["--n", "6", "--seed", "1"],
        "combine": ["--n", "3"],
        "inject": ["--n", "4"],
        "reroot": ["--root", "m@1/2"],
        "check-metric": ["--seed", "2"],
    }
    ws_cmds = {"rank", "pad", "succ", "grade-rank", "road"}
    for cmd in COMMANDS:
        text = inputs.get(cmd, WS if cmd in ws_cmds else SEG)
        if cmd == "succ":
            text = ok(tmp_path, "pad", WS)
        a = ok(tmp_path, cmd, text, *extra.get(cmd, []))
        b = ok(tmp_path, cmd, text, *extra.get(cmd, []))
        assert a == b, cmd


def test_console_entry_point(tmp_path):
    f = tmp_path / "c.txt"
    f.write_text(CHAIN)
    res = subprocess.run(
        [sys.executable, "-m", "treeorders.cli", "width", str(f)], capture_output=True, text=True
    )
    assert res.returncode == 0 and res.stdout == "1\n"
