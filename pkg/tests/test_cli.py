"""End-to-end CLI behaviour: jobs, reports, exit codes, round trips."""

import json
import random

import pytest

from eigenshift.cli import main
from eigenshift.linalg import Matrix
from eigenshift.reporting import matrix_to_obj, vector_to_obj
from eigenshift.synthesis import (
    SegreCharacteristic,
    build_matrix,
    random_unimodular,
)


def run_cli(args):
    return main(list(args))


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


GOLDEN_JOB = {
    "target_eigenvalue": "1",
    "new_eigenvalue": "2",
    "k": 2,
    "backend": "exact",
    "segre": [["1", 4], ["3", 2]],
}


def test_shift_golden_job(tmp_path, capsys):
    job = write(tmp_path, "job.json", GOLDEN_JOB)
    out = tmp_path / "report.json"
    assert run_cli(["shift", job, "-o", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["verdicts"] == {
        "spectrum_check": "pass",
        "half_chain_invariance": "pass",
        "prediction_vs_oracle": "pass",
    }
    assert report["prediction"]["segre"] == [["2", 4], ["3", 2]]
    assert report["oracle_segre"] == [["2", 4], ["3", 2]]


def test_shift_split_job(tmp_path):
    job = dict(GOLDEN_JOB)
    n = 6
    r_free = [["0", "0"] for _ in range(n)]
    r_free[2][1] = "-1"  # R = [e1, e2 - e3]
    job["r_free"] = r_free
    path = write(tmp_path, "job.json", job)
    out = tmp_path / "report.json"
    assert run_cli(["shift", path, "-o", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["oracle_segre"] == [["2", 2], ["2", 2], ["3", 2]]
    assert report["prediction"]["segre"] == [["2", 2], ["2", 2], ["3", 2]]


def test_noop_shift_passes(tmp_path):
    job = dict(GOLDEN_JOB)
    job["new_eigenvalue"] = "1"
    path = write(tmp_path, "job.json", job)
    out = tmp_path / "report.json"
    assert run_cli(["shift", path, "-o", str(out)]) == 0
    report = json.loads(out.read_text())
    A, _ = build_matrix(
        SegreCharacteristic([(1, 4), (3, 2)]), Matrix.identity(6)
    )
    assert report["shifted_matrix"] == matrix_to_obj(A)
    assert all(v == "pass" for v in report["verdicts"].values())


def test_report_round_trip_byte_identical(tmp_path):
    path = write(tmp_path, "job.json", GOLDEN_JOB)
    out1 = tmp_path / "r1.json"
    out2 = tmp_path / "r2.json"
    assert run_cli(["shift", path, "-o", str(out1)]) == 0
    embedded = json.loads(out1.read_text())["job"]
    path2 = write(tmp_path, "job2.json", embedded)
    assert run_cli(["shift", path2, "-o", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_parse_error_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run_cli(["shift", str(bad)]) == 2
    missing = write(tmp_path, "missing.json", {"k": 2})
    assert run_cli(["shift", missing]) == 2
    bad_scalar = dict(GOLDEN_JOB, target_eigenvalue="1.5")
    assert run_cli(["shift", write(tmp_path, "s.json", bad_scalar)]) == 2


def test_precondition_error_exit_3(tmp_path):
    job = dict(GOLDEN_JOB, k=1)  # k inconsistent with the 4-chain
    assert run_cli(["shift", write(tmp_path, "job.json", job)]) == 3


def test_float_backend_skips_classification(tmp_path):
    job = dict(GOLDEN_JOB, backend="float")
    out = tmp_path / "report.json"
    assert run_cli(["shift", write(tmp_path, "job.json", job), "-o", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["verdicts"]["prediction_vs_oracle"] == "not-applicable"
    assert report["prediction"] is None
    assert isinstance(report["shifted_matrix"][0][0], (int, float))


def test_float_backend_refuses_classify(tmp_path):
    form = write(tmp_path, "form.json", {"kind": "even", "k": 2, "lambda": "0"})
    assert run_cli(["--backend", "float", "classify", form]) == 3


def test_classify_even_zero_coupling(tmp_path, capsys):
    form = write(tmp_path, "form.json", {"kind": "even", "k": 2, "lambda": "0"})
    assert run_cli(["classify", form]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["case_label"] == "Even1"
    assert report["segre"] == [["0", 2], ["0", 2]]


def test_classify_even_full_block(tmp_path, capsys):
    form = write(
        tmp_path,
        "form.json",
        {
            "kind": "even",
            "k": 2,
            "lambda": "0",
            "C": [["0", "0"], ["1", "0"]],
        },
    )
    assert run_cli(["classify", form]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["case_label"] == "Even3"
    assert report["segre"] == [["0", 4]]


def test_classify_odd_trivial(tmp_path, capsys):
    form = write(tmp_path, "form.json", {"kind": "odd", "k": 1, "lambda": "0"})
    assert run_cli(["classify", form]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["case_label"] == "Odd4c"
    assert report["segre"] == [["0", 1], ["0", 1], ["0", 1]]


def test_classify_bad_form_exit_2(tmp_path):
    form = write(tmp_path, "form.json", {"kind": "cube", "k": 1, "lambda": "0"})
    assert run_cli(["classify", form]) == 2


def _chains_doc(chain_list):
    return {
        "chains": [
            {
                "lambda": lam,
                "left": [vector_to_obj(u) for u in pair.left],
                "right": [vector_to_obj(v) for v in pair.right],
            }
            for lam, pair in chain_list
        ]
    }


def test_verify_synthesized_chains(tmp_path, capsys):
    rng = random.Random(7)
    segre = SegreCharacteristic([(2, 4), (5, 2)])
    P = random_unimodular(6, rng)
    A, chains = build_matrix(segre, P)
    mat = write(tmp_path, "mat.json", matrix_to_obj(A))
    doc = _chains_doc([("2", chains[0]), ("5", chains[1])])
    ch = write(tmp_path, "chains.json", doc)
    assert run_cli(["verify", mat, ch]) == 0
    report = json.loads(capsys.readouterr().out)
    assert all(v == "pass" for v in report["verdicts"].values())
    assert "cross_orthogonality_0_1" in report["verdicts"]


def test_verify_corrupted_chain_exit_4(tmp_path, capsys):
    segre = SegreCharacteristic([(2, 4)])
    A, chains = build_matrix(segre, Matrix.identity(4))
    mat = write(tmp_path, "mat.json", matrix_to_obj(A))
    doc = _chains_doc([("2", chains[0])])
    doc["chains"][0]["right"][2][0] = "9"  # corrupt one chain vector
    ch = write(tmp_path, "chains.json", doc)
    assert run_cli(["verify", mat, ch]) == 4
    report = json.loads(capsys.readouterr().out)
    assert report["verdicts"]["chain_0:recurrence"] == "fail"


def test_selftest_deterministic(tmp_path):
    out1 = tmp_path / "s1.json"
    out2 = tmp_path / "s2.json"
    assert run_cli(["selftest", "--seed", "5", "--count", "2", "-o", str(out1)]) == 0
    assert run_cli(["selftest", "--seed", "5", "--count", "2", "-o", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_explicit_matrix_job(tmp_path, capsys):
    segre = SegreCharacteristic([(1, 4)])
    A, chains = build_matrix(segre, Matrix.identity(4))
    job = {
        "target_eigenvalue": "1",
        "new_eigenvalue": "6",
        "k": 2,
        "backend": "exact",
        "matrix": matrix_to_obj(A),
        "chains": {
            "left": [vector_to_obj(u) for u in chains[0].left],
            "right": [vector_to_obj(v) for v in chains[0].right],
        },
    }
    assert run_cli(["shift", write(tmp_path, "job.json", job)]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["verdicts"]["prediction_vs_oracle"] == "pass"
    assert report["prediction"]["segre"] == [["6", 4]]
