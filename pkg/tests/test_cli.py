import csv

import pytest

from subsume import cli, engine
from subsume.encodings import EncodingKind
from subsume.harness import CSV_HEADER

L1_M1 = "cnf(l1, axiom, p(X1,X2) | p(f(X2),X3)).\ncnf(m1, axiom, p(g(Y1),c) | ~p(f(c),e)).\n"
L4_M4 = "cnf(l4, axiom, p(X1) | q(X2) | r(X3)).\ncnf(m4, axiom, ~p(Y1) | q(c)).\n"


@pytest.fixture(autouse=True)
def no_color(monkeypatch):
    monkeypatch.setenv("SUBSUME_COLOR", "0")


@pytest.fixture
def write(tmp_path):
    def make(text, name="in.p"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return make


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("encoding", ["direct", "indirect"])
def test_check_l1_m1(capsys, write, encoding):
    code, out, _ = run(capsys, "check", write(L1_M1), "--encoding", encoding)
    assert code == 0
    assert out.splitlines()[0] == "sr p(g(Y1),c)"


def test_check_pruned(capsys, write):
    code, out, _ = run(capsys, "check", write(L4_M4))
    assert code == 0
    first, stats = out.splitlines()
    assert first == "none"
    assert "pruned=true" in stats and "sat_calls=0" in stats


def test_check_subsumed(capsys, write):
    code, out, _ = run(capsys, "check", write("cnf(a,axiom,p(X)).\ncnf(b,axiom,p(c)|q(d))."))
    assert code == 0 and out.startswith("subsumed")


def test_check_color(capsys, write, monkeypatch):
    monkeypatch.setenv("SUBSUME_COLOR", "1")
    _, out, _ = run(capsys, "check", write(L1_M1))
    assert "\033[" in out


@pytest.mark.parametrize("text", [
    "cnf(a,axiom,p(X)).",
    "cnf(a,axiom,p(X).",
    "cnf(a,axiom,p(X)).\ncnf(b,axiom,p(X,Y)).",
    "fof(a,axiom,p).",
])
def test_check_input_errors(capsys, write, text):
    code, _, err = run(capsys, "check", write(text))
    assert code == 2 and err.startswith("subsume:")


def test_missing_file(capsys, tmp_path):
    code, _, _ = run(capsys, "check", str(tmp_path / "nope.p"))
    assert code == 2


def test_simplify_l1_m1(capsys, write):
    code, out, _ = run(capsys, "simplify", write(L1_M1))
    assert code == 0
    assert out == "cnf(l1, axiom, p(X1,X2) | p(f(X2),X3)).\ncnf(m1, axiom, p(g(Y1),c)).\n"


def test_simplify_trace(capsys, write):
    _, out, _ = run(capsys, "simplify", write(L1_M1), "--trace")
    assert out.splitlines()[0].startswith("% m1 simplified by l1")


def test_simplify_idempotent(capsys, write):
    text = "cnf(a,axiom,p(X)).\ncnf(b,axiom,p(c)|q(d)).\ncnf(c,axiom,~q(Y)|r(Y)).\n" + L1_M1
    _, first, _ = run(capsys, "simplify", write(text))
    _, second, _ = run(capsys, "simplify", write(first, "again.p"))
    assert first == second


def test_simplify_tautologies_only(capsys, write):
    code, out, err = run(capsys, "simplify", write("cnf(t,axiom,p(X)|~p(X))."))
    assert code == 0 and out == ""
    assert "dropped tautology t" in err


def test_verify_ok(capsys):
    code, out, _ = run(capsys, "verify", "--seed", "1", "--count", "300")
    assert code == 0 and "0 mismatches" in out


def test_verify_zero_pairs(capsys):
    code, out, _ = run(capsys, "verify", "--count", "0")
    assert code == 0 and "verified 0 pairs" in out


def test_verify_negative_count(capsys):
    code, _, _ = run(capsys, "verify", "--count", "-1")
    assert code == 2


def test_verify_catches_dropped_coherence(capsys, monkeypatch):
    def without_coherence(original):
        def encode(ms, solver):
            enc = original(ms, solver)
            solver.clauses = [c for c in solver.clauses if c not in enc.coherence]
            return enc

        return encode

    for kind in (EncodingKind.SR_DIRECT, EncodingKind.SR_INDIRECT):
        monkeypatch.setitem(engine.ENCODERS, kind, without_coherence(engine.ENCODERS[kind]))
    code, out, _ = run(capsys, "verify", "--seed", "1", "--count", "2000")
    assert code == 1
    assert "MISMATCH" in out


def read_csv(path):
    with open(path, newline="") as f:
        return list(csv.reader(f))


def test_bench_both_encodings(capsys, tmp_path):
    out_csv = tmp_path / "bench.csv"
    code, out, _ = run(capsys, "bench", "--count", "200", "--csv", str(out_csv))
    assert code == 0
    direct = read_csv(tmp_path / "bench-direct.csv")
    indirect = read_csv(tmp_path / "bench-indirect.csv")
    assert direct[0] == indirect[0] == CSV_HEADER
    assert len(direct) == len(indirect) > 1
    verdict = CSV_HEADER.index("verdict")
    assert [r[verdict] for r in direct] == [r[verdict] for r in indirect]
    assert {"direct", "indirect"} <= {line.split()[0] for line in out.splitlines()}


def test_bench_empty_corpus(capsys, tmp_path):
    corpus = tmp_path / "corpus"
    corpus.mkdir()
    out_csv = tmp_path / "empty.csv"
    code, _, _ = run(capsys, "bench", "--encoding", "direct", "--corpus", str(corpus),
                     "--csv", str(out_csv))
    assert code == 0
    assert read_csv(out_csv) == [CSV_HEADER]


def test_bench_problem_file(capsys, write):
    extra = "cnf(u, axiom, ~p(X,c)).\ncnf(v, axiom, p(d,c) | q(d)).\n"
    code, out, _ = run(capsys, "bench", "--corpus", write(L1_M1 + extra))
    assert code == 0 and "direct" in out


def test_bench_corpus_arity_conflict(capsys, write):
    code, _, _ = run(capsys, "bench", "--corpus", write(L1_M1 + L4_M4))
    assert code == 2


def test_bench_missing_corpus(capsys, tmp_path):
    code, _, _ = run(capsys, "bench", "--corpus", str(tmp_path / "missing"))
    assert code == 2


def test_bench_dense_clause_ratio(capsys):
    code, out, _ = run(capsys, "bench", "--dense", "10", "--count", "1")
    assert code == 0
    rows = {line.split()[0]: line.split() for line in out.splitlines()[1:]}
    uniqueness = int(rows["direct"][5])
    structurality = int(rows["indirect"][6])
    assert uniqueness >= 10 * structurality > 0


def test_deterministic(capsys, tmp_path):
    outputs = []
    for name in ("a.csv", "b.csv"):
        run(capsys, "bench", "--encoding", "indirect", "--count", "50", "--seed", "7",
            "--csv", str(tmp_path / name))
        rows = read_csv(tmp_path / name)
        time_ns = CSV_HEADER.index("time_ns")
        outputs.append([r[:time_ns] for r in rows])
    assert outputs[0] == outputs[1]
