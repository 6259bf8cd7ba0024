import json

import numpy as np

from inforank.cli import (EXIT_CONFIG, EXIT_OK, EXIT_PARSE, EXIT_SOLVER, main)


def run(tmp_path, *argv):
    out = tmp_path / "out.json"
    code = main(list(argv) + ["--output", str(out)])
    return code, out


def test_rank_star_center_scores_one(tmp_path):
    code, out = run(tmp_path, "rank", "--generate", "star:5")
    assert code == EXIT_OK
    payload = json.loads(out.read_text())
    assert payload["seed"] == 0
    nodes = payload["nodes"]
    assert nodes[0]["inforank"] == 1.0
    assert all(row["inforank"] < 1.0 for row in nodes[1:])


def test_rank_empty_file_exits_parse(tmp_path):
    empty = tmp_path / "empty.txt"
    empty.write_text("")
    assert main(["rank", "--input", str(empty)]) == EXIT_PARSE


def test_rank_missing_file_exits_parse():
    assert main(["rank", "--input", "/no/such/file"]) == EXIT_PARSE


def test_rank_undefined_index_exits_solver(tmp_path):
    code, _ = run(tmp_path, "rank", "--generate", "er:4,1.0")
    assert code == EXIT_SOLVER


def test_bad_generator_spec_exits_config(tmp_path):
    code, _ = run(tmp_path, "rank", "--generate", "nope:3")
    assert code == EXIT_CONFIG


def test_rank_p4_matches_library(tmp_path):
    edges = tmp_path / "p4.txt"
    edges.write_text("a b\nb c\nc d\n")
    code, out = run(tmp_path, "rank", "--input", str(edges))
    assert code == EXIT_OK
    payload = json.loads(out.read_text())
    from inforank import inforank, load_edge_list
    rep = inforank(load_edge_list("a b\nb c\nc d\n"))
    got = [row["inforank"] for row in payload["nodes"]]
    assert np.allclose(got, rep.I, atol=1e-11)


def test_rank_base2_rescales_entropies_not_index(tmp_path):
    code1, out1 = run(tmp_path, "rank", "--generate", "er:12,0.4", "--seed", "2")
    nats = json.loads(out1.read_text())
    code2, out2 = run(tmp_path, "rank", "--generate", "er:12,0.4", "--seed", "2",
                      "--base2")
    bits = json.loads(out2.read_text())
    assert bits["entropy_unit"] == "bits"
    assert abs(bits["S0"] - nats["S0"] / np.log(2)) < 1e-9
    assert bits["nodes"][0]["inforank"] == nats["nodes"][0]["inforank"]


def test_compare_three_cycle_constant_indices(tmp_path):
    edges = tmp_path / "c3.txt"
    edges.write_text("a b\nb c\nc a\n")
    code, out = run(tmp_path, "compare", "--input", str(edges), "--directed")
    assert code == EXIT_OK
    payload = json.loads(out.read_text())
    for name in ("degree", "closeness", "pagerank", "inforank"):
        values = [row[name] for row in payload["nodes"]]
        assert max(values) - min(values) < 1e-9
    assert all(v is None for v in payload["correlations"].values())


def test_compare_measure_and_alpha_passthrough(tmp_path):
    code, out = run(tmp_path, "compare", "--generate", "er:12,0.3", "--seed", "4",
                    "--directed", "--measure", "pagerank", "--alpha", "0.5")
    assert code == EXIT_OK
    payload = json.loads(out.read_text())
    assert payload["pagerank_alpha"] == 0.5
    from inforank import pagerank
    from inforank.generators import erdos_renyi
    expect = pagerank(erdos_renyi(12, 0.3, seed=4, directed=True), alpha=0.5)
    got = [row["pagerank"] for row in payload["nodes"]]
    assert np.allclose(got, expect.scores, atol=1e-9)


def test_accuracy_command(tmp_path):
    code, out = run(tmp_path, "accuracy", "--generate", "er:25,0.15", "--seed", "5",
                    "--directed")
    assert code == EXIT_OK
    payload = json.loads(out.read_text())
    assert set(payload["correlations"]) == {"degree", "closeness", "pagerank",
                                            "inforank"}
    assert 0 <= payload["benchmark_accuracy"] <= 1
    assert len(payload["per_node"]) == 25


def test_sample_writes_numbered_files(tmp_path):
    outdir = tmp_path / "samples"
    code = main(["sample", "--generate", "er:15,0.3", "--seed", "6",
                 "--samples", "4", "--output-dir", str(outdir)])
    assert code == EXIT_OK
    files = sorted(p.name for p in outdir.iterdir())
    assert files == [f"sample_{t:05d}.edges" for t in range(4)]


def test_risk_command_records_fits(tmp_path):
    code, out = run(tmp_path, "risk", "--generate", "scalefree:15,2", "--seed", "7",
                    "--samples", "10")
    assert code == EXIT_OK
    payload = json.loads(out.read_text())
    assert payload["alpha"] == 0.9 and payload["beta"] == 0.9
    assert payload["externals"]["mu_a"] == 10.0
    assert len(payload["fit_linear"]["coefficients_highest_first"]) == 2
    assert len(payload["fit_quadratic"]["coefficients_highest_first"]) == 3


def test_risk_requires_directed(tmp_path):
    code, _ = run(tmp_path, "risk", "--generate", "er:10,0.3", "--seed", "1")
    assert code == EXIT_CONFIG


def test_risk_csv_writes_sibling_fit_json(tmp_path):
    out = tmp_path / "risk.csv"
    code = main(["risk", "--generate", "scalefree:12,2", "--seed", "2",
                 "--samples", "6", "--format", "csv", "--output", str(out)])
    assert code == EXIT_OK
    assert out.read_text().startswith("# seed=2")
    fits = json.loads((tmp_path / "risk.fits.json").read_text())
    assert fits["seed"] == 2 and "fit_linear" in fits


def test_byte_identical_reruns_and_thread_independence(tmp_path):
    outs = []
    for name, threads in (("a", "1"), ("b", "4"), ("c", "2")):
        out = tmp_path / f"{name}.json"
        code = main(["rank", "--generate", "ba:30,2", "--seed", "9",
                     "--threads", threads, "--output", str(out)])
        assert code == EXIT_OK
        outs.append(out.read_bytes())
    assert outs[0] == outs[1] == outs[2]

    r1 = tmp_path / "r1.json"
    r2 = tmp_path / "r2.json"
    for path in (r1, r2):
        assert main(["risk", "--generate", "scalefree:12,2", "--seed", "3",
                     "--samples", "8", "--output", str(path)]) == EXIT_OK
    assert r1.read_bytes() == r2.read_bytes()


def test_csv_format_records_seed(tmp_path):
    out = tmp_path / "out.csv"
    code = main(["rank", "--generate", "star:5", "--format", "csv",
                 "--output", str(out)])
    assert code == EXIT_OK
    text = out.read_text()
    assert text.startswith("# seed=0")
    assert "node,label,k,S0_contrib,S_cond,inforank" in text


def test_config_file_defaults_overridden_by_flags(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("tolerance = 1e-6\nthreads = 2\n")
    out1 = tmp_path / "o1.json"
    assert main(["rank", "--generate", "er:10,0.4", "--seed", "1",
                 "--config", str(cfg), "--output", str(out1)]) == EXIT_OK
    out2 = tmp_path / "o2.json"
    assert main(["rank", "--generate", "er:10,0.4", "--seed", "1",
                 "--config", str(cfg), "--tolerance", "1e-12",
                 "--output", str(out2)]) == EXIT_OK
    assert json.loads(out1.read_text())["n"] == 10
    assert json.loads(out2.read_text())["n"] == 10


def test_threads_env_var(tmp_path, monkeypatch):
    monkeypatch.setenv("INFORANK_THREADS", "3")
    out = tmp_path / "env.json"
    assert main(["rank", "--generate", "er:10,0.4", "--seed", "2",
                 "--output", str(out)]) == EXIT_OK
    ref = tmp_path / "ref.json"
    monkeypatch.delenv("INFORANK_THREADS")
    assert main(["rank", "--generate", "er:10,0.4", "--seed", "2",
                 "--output", str(ref)]) == EXIT_OK
    assert out.read_bytes() == ref.read_bytes()


def test_twelve_significant_digit_output(tmp_path):
    code, out = run(tmp_path, "rank", "--generate", "er:10,0.4", "--seed", "3")
    assert code == EXIT_OK
    payload = json.loads(out.read_text())
    s0 = payload["S0"]
    assert s0 == float(f"{s0:.12g}")
