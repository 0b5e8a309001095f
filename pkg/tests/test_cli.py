import pytest
from hypothesis import given, settings

from at2ag.cli import main
from at2ag.graph_io import parse_graph_json
from at2ag.tree_io import save_tree

from treegen import trees


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_transform_fig1_dot(capsys, fixtures_dir, tmp_path):
    target = tmp_path / "fig1.dot"
    code, out, _ = run(capsys, "transform", fixtures_dir / "fig1.at.json", "--emit=dot", "--output", target)
    assert code == 0
    assert "states=16 transitions=16 success=3" in out
    dot = target.read_text(encoding="utf-8")
    assert dot.count(" -> ") == 16
    assert dot.endswith("}\n")


def test_transform_to_stdout_keeps_stats_on_stderr(capsys, fixtures_dir):
    code, out, err = run(capsys, "transform", fixtures_dir / "leaf.at", "--emit=json")
    assert code == 0
    g = parse_graph_json(out)
    assert len(g) == 2
    assert "states=2" in err


def test_transform_and5(capsys, fixtures_dir, tmp_path):
    code, out, _ = run(capsys, "transform", fixtures_dir / "and5.at", "-o", tmp_path / "x.ag.json")
    assert code == 0
    assert "states=33" in out


def test_transform_parse_error(capsys, tmp_path):
    bad = tmp_path / "bad.at"
    bad.write_text("r <- OR(a,\n b", encoding="utf-8")
    code, _, err = run(capsys, "transform", bad)
    assert code == 1
    assert "bad.at:2:3:" in err


def test_transform_validation_error(capsys, tmp_path):
    bad = tmp_path / "dup.at"
    bad.write_text("r <- OR(a, a)", encoding="utf-8")
    code, _, err = run(capsys, "transform", bad)
    assert code == 1
    assert "duplicate" in err


def test_missing_input(capsys, tmp_path):
    code, _, _ = run(capsys, "stats", tmp_path / "nope.at")
    assert code == 1


def test_check_fig1(capsys, fixtures_dir):
    code, out, _ = run(capsys, "check", fixtures_dir / "fig1.at.json")
    assert code == 0
    assert "traces=4 match" in out
    assert out.count(": pass") == 6


def test_check_resource_limit(capsys, fixtures_dir):
    code, _, err = run(capsys, "check", fixtures_dir / "and5.at", "--max-paths", "100")
    assert code == 4
    assert "resource limit" in err


def test_and20_fails_fast(capsys, fixtures_dir):
    for cmd in ("transform", "check"):
        code, _, _ = run(capsys, cmd, fixtures_dir / "and20.at")
        assert code == 4


def test_stats(capsys, fixtures_dir):
    code, out, _ = run(capsys, "stats", fixtures_dir / "and3.at")
    assert code == 0
    assert "predicted_states=9" in out
    code, out, _ = run(capsys, "stats", fixtures_dir / "fig1.at.json")
    fields = dict(pair.split("=") for pair in out.split())
    assert (fields["nodes"], fields["internal"], fields["leaves"]) == ("9", "4", "5")
    assert "predicted_states" not in fields


def test_render(capsys, fixtures_dir, tmp_path):
    first, second = tmp_path / "a.dot", tmp_path / "b.dot"
    assert run(capsys, "render", fixtures_dir / "fig2.ag.json", "-o", first)[0] == 0
    assert run(capsys, "render", fixtures_dir / "fig2.ag.json", "-o", second)[0] == 0
    assert first.read_bytes() == second.read_bytes()
    assert first.read_text(encoding="utf-8").count(" -> ") == 16


def test_render_rejects_bad_graph(capsys, tmp_path):
    bad = tmp_path / "bad.ag.json"
    bad.write_text('{"states": [], "transitions": [], "initial": [3], "success": []}', encoding="utf-8")
    assert run(capsys, "render", bad)[0] == 1


def test_check_reports_broken_graph(capsys, monkeypatch, fixtures_dir):
    import at2ag.cli as cli
    from at2ag.transform import transform as real

    def broken(tree, **kw):
        g, stats = real(tree, **kw)
        g.remove_transition(0, "Remote login")
        return g, stats

    monkeypatch.setattr(cli, "transform", broken)
    code, out, _ = run(capsys, "check", fixtures_dir / "fig1.at.json")
    assert code == 3
    assert "mismatch" in out and "missing: Remote login" in out


@settings(max_examples=25, deadline=None)
@given(trees(max_depth=3))
def test_check_random(tmp_path_factory, tree):
    path = tmp_path_factory.mktemp("t") / "tree.at.json"
    save_tree(tree, path)
    assert main(["check", str(path), "--quiet"]) == 0
