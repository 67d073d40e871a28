import json

from qbgraph.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_qbg_dot_a2(capsys):
    code, out = run(capsys, "qbg", "--type", "A", "--rank", "2", "--format", "dot")
    assert code == 0
    assert out.count(" -> ") == 15
    assert out.count("style=dashed") == 7
    assert out.count('"321"') > 0


def test_pqbg_alias_json(capsys):
    code, out = run(
        capsys, "pqbg", "--type", "A", "--rank", "3", "--parabolic", "1,3",
        "--format", "json",
    )
    assert code == 0
    doc = json.loads(out)
    assert len(doc["vertices"]) == 6
    assert len(doc["edges"]) == 8
    assert sum(1 for e in doc["edges"] if e["kind"] == "quantum") == 2
    perms = {v["permutation"] for v in doc["vertices"]}
    assert perms == {"1234", "1324", "1423", "2314", "2413", "3412"}


def test_qbg_cycle(capsys):
    code, out = run(
        capsys, "qbg", "--type", "A", "--rank", "2", "--parabolic", "1"
    )
    assert code == 0
    assert "vertices=3 edges=3 quantum=1" in out


def test_determinism_across_runs(capsys):
    args = ("qbg", "--type", "A", "--rank", "2", "--format", "dot")
    _, first = run(capsys, *args)
    _, second = run(capsys, *args)
    assert first.encode() == second.encode()


def test_lift_walk_reproduces_ladder(capsys):
    code, out = run(
        capsys, "lift", "--type", "A", "--rank", "2", "--parabolic", "1",
        "--mu=-2,-4", "--start", "", "--walk", "0,1;1,1;0,1",
    )
    assert code == 0
    assert "6d-a2" in out and "6d-a1-a2" in out and "5d-a2" in out
    assert "213 t(-2,-3)" in out


def test_lift_table(capsys):
    code, out = run(
        capsys, "lift", "--type", "A", "--rank", "2", "--parabolic", "1",
        "--format", "json",
    )
    assert code == 0
    doc = json.loads(out)
    assert len(doc["covers"]) == 3


def test_poset_slice(capsys):
    code, out = run(
        capsys, "poset", "--type", "A", "--rank", "2", "--lambda", "2,1",
        "--window", "1", "--format", "json",
    )
    assert code == 0
    doc = json.loads(out)
    assert len(doc["vertices"]) == 18


def test_poset_dot_red_layer(capsys):
    code, out = run(
        capsys, "poset", "--type", "A", "--rank", "2", "--lambda", "2,1",
        "--window", "1", "--format", "dot",
    )
    assert code == 0
    assert out.count("color=red") >= 6 + 8  # six level nodes and eight covers


def test_poset_rejects_zero_weight(capsys):
    code, _ = run(capsys, "poset", "--type", "A", "--rank", "2", "--lambda", "0,0")
    assert code == 2


def test_poset_rejects_small_window(capsys):
    code, _ = run(
        capsys, "poset", "--type", "A", "--rank", "2", "--lambda", "2,1",
        "--window", "0",
    )
    assert code == 2


def test_bad_flags_exit_two(capsys):
    assert main(["qbg", "--type", "Z", "--rank", "2"]) == 2
    assert main(["qbg", "--type", "A", "--rank", "0"]) == 2
    assert main(["qbg", "--type", "A", "--rank", "2", "--parabolic", "5"]) == 2
    assert main(["verify", "--suite", "no-such-suite"]) == 2


def test_tilted_and_qlen(capsys):
    code, out = run(
        capsys, "tilted", "--type", "A", "--rank", "2", "--parabolic", "1",
        "--u", "1,2,1", "--z", "",
    )
    assert code == 0
    assert "minimum : 123" in out and "distance: 1" in out
    code, out = run(capsys, "qlen", "--type", "A", "--rank", "2", "--u", "1,2,1")
    assert code == 0
    assert out.strip() == "1"


def test_verify_single_suite(capsys):
    code, out = run(
        capsys, "verify", "--suite", "reference-graphs,example-chain", "--format", "json"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["passed"] is True
    assert [s["suite"] for s in doc["suites"]] == ["reference-graphs", "example-chain"]


def test_verify_types_override(capsys):
    code, out = run(
        capsys, "verify", "--suite", "quantum-roots", "--types", "A1..A3,G2"
    )
    assert code == 0
    assert "A1:" in out and "A3:" in out and "G2:" in out


def test_verify_deterministic_across_jobs(capsys):
    args = ("verify", "--suite", "reference-graphs,determinism,example-chain")
    _, one = run(capsys, *args, "--jobs", "1")
    _, two = run(capsys, *args, "--jobs", "2")
    assert one.encode() == two.encode()


def test_poset_parabolic_consistency(capsys):
    # the parabolic set, when given, must be the zero set of lambda
    code, _ = run(
        capsys, "poset", "--type", "A", "--rank", "2", "--lambda", "2,1",
        "--parabolic", "1", "--window", "1",
    )
    assert code == 2
    code, _ = run(
        capsys, "poset", "--type", "A", "--rank", "2", "--lambda", "2,0",
        "--parabolic", "2", "--window", "2",
    )
    assert code == 0
