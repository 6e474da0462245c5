"""Job parsing, report assembly and deterministic serialization.

Jobs and reports are single JSON documents.  All scalars travel as
exact strings ("3", "-1/2", "1/2+3i") so no value is ever routed
through floating point; the float backend only affects how matrices
are *rendered* in the report, never how they are computed.  Reports
embed their normalized input job, so re-running a report's job
reproduces the report byte for byte.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .canonical import predict_structure
from .errors import (
    EigenShiftError,
    ExtractionError,
    InvalidParameterError,
)
from .linalg import Matrix, Vector
from .oracle import oracle_segre, weyr_profile
from .scalars import ComplexRational, format_scalar, parse_scalar
from .shifting import (
    charpoly_ratio_check,
    half_chain_invariance_holds,
    make_left_inverse,
    make_right_inverse,
    shift_even,
    shift_odd,
)
from .synthesis import ChainPair, SegreCharacteristic, build_matrix


class JobParseError(EigenShiftError):
    """Malformed job or form document (CLI exit code 2)."""


PASS, FAIL, NA = "pass", "fail", "not-applicable"


# ---------------------------------------------------------------------------
# scalar / matrix / vector (de)serialization


def scalar_to_str(x: ComplexRational) -> str:
    return format_scalar(x)


def str_to_scalar(s) -> ComplexRational:
    try:
        return parse_scalar(s)
    except (ValueError, TypeError) as exc:
        raise JobParseError(f"bad scalar {s!r}: {exc}") from exc


def matrix_to_obj(M: Matrix):
    return [[scalar_to_str(M[i, j]) for j in range(M.cols)] for i in range(M.rows)]


def matrix_to_float_obj(M: Matrix):
    """Float rendering for reports; real entries stay plain numbers and
    complex ones become [re, im] pairs (JSON has no complex type)."""
    out = []
    for row in M.to_float_rows():
        rendered = []
        for e in row:
            c = complex(e)
            rendered.append(c.real if c.imag == 0.0 else [c.real, c.imag])
        out.append(rendered)
    return out


def obj_to_matrix(obj) -> Matrix:
    if not isinstance(obj, list) or not obj or not all(
        isinstance(r, list) and len(r) == len(obj[0]) for r in obj
    ):
        raise JobParseError("matrix must be a non-empty list of equal-length rows")
    rows = [[str_to_scalar(e) for e in r] for r in obj]
    return Matrix.from_rows(rows)


def vector_to_obj(v: Vector):
    return [scalar_to_str(e) for e in v.entries]


def obj_to_vector(obj) -> Vector:
    if not isinstance(obj, list) or not obj:
        raise JobParseError("vector must be a non-empty list of scalar strings")
    return Vector([str_to_scalar(e) for e in obj])


def segre_to_obj(segre: SegreCharacteristic):
    return [
        [scalar_to_str(lam), size] for lam, size in segre.canonical().blocks
    ]


def obj_to_segre(obj) -> SegreCharacteristic:
    try:
        return SegreCharacteristic(
            [(str_to_scalar(lam), int(size)) for lam, size in obj]
        )
    except (TypeError, ValueError) as exc:
        raise JobParseError(f"bad segre description: {exc}") from exc


def dumps(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


# ---------------------------------------------------------------------------
# shift jobs


@dataclass
class ShiftJob:
    """Parsed shift job (one of the two source forms)."""

    target_eigenvalue: ComplexRational
    new_eigenvalue: ComplexRational
    k: int
    backend: str = "exact"
    segre: Optional[SegreCharacteristic] = None
    change_of_basis: Optional[Matrix] = None
    matrix: Optional[Matrix] = None
    left_chain: Optional[list] = None
    right_chain: Optional[list] = None
    r_free: Optional[Matrix] = None
    l_free: Optional[Matrix] = None

    def normalized(self) -> dict:
        """Canonical document form; embedding this in a report and
        re-parsing it round-trips exactly."""
        doc = {
            "target_eigenvalue": scalar_to_str(self.target_eigenvalue),
            "new_eigenvalue": scalar_to_str(self.new_eigenvalue),
            "k": self.k,
            "backend": self.backend,
        }
        if self.segre is not None:
            doc["segre"] = segre_to_obj(self.segre)
            if self.change_of_basis is not None:
                doc["change_of_basis"] = matrix_to_obj(self.change_of_basis)
        else:
            doc["matrix"] = matrix_to_obj(self.matrix)
            doc["chains"] = {
                "left": [vector_to_obj(u) for u in self.left_chain],
                "right": [vector_to_obj(v) for v in self.right_chain],
            }
        if self.r_free is not None:
            doc["r_free"] = matrix_to_obj(self.r_free)
        if self.l_free is not None:
            doc["l_free"] = matrix_to_obj(self.l_free)
        return doc


def parse_shift_job(doc) -> ShiftJob:
    if not isinstance(doc, dict):
        raise JobParseError("job document must be a single object")
    try:
        lam0 = str_to_scalar(doc["target_eigenvalue"])
        lam1 = str_to_scalar(doc["new_eigenvalue"])
        k = int(doc["k"])
    except KeyError as exc:
        raise JobParseError(f"job is missing required field {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise JobParseError(f"bad job field: {exc}") from exc
    backend = doc.get("backend", "exact")
    if backend not in ("exact", "float"):
        raise JobParseError(f"unknown backend {backend!r}")
    if k < 0:
        raise JobParseError("k must be >= 0")
    job = ShiftJob(lam0, lam1, k, backend)
    if "segre" in doc:
        job.segre = obj_to_segre(doc["segre"])
        if "change_of_basis" in doc:
            job.change_of_basis = obj_to_matrix(doc["change_of_basis"])
    elif "matrix" in doc:
        job.matrix = obj_to_matrix(doc["matrix"])
        chains = doc.get("chains")
        if not isinstance(chains, dict):
            raise JobParseError("explicit-matrix jobs need a chains object")
        try:
            job.left_chain = [obj_to_vector(u) for u in chains["left"]]
            job.right_chain = [obj_to_vector(v) for v in chains["right"]]
        except KeyError as exc:
            raise JobParseError(f"chains object missing {exc}") from exc
    else:
        raise JobParseError("job needs either a segre or an explicit matrix")
    if "r_free" in doc:
        job.r_free = obj_to_matrix(doc["r_free"])
    if "l_free" in doc:
        job.l_free = obj_to_matrix(doc["l_free"])
    return job


def _job_inputs(job: ShiftJob):
    """Materialize (A, chain pair at lam0, prediction basis P or None,
    other blocks) from either job source."""
    lam0 = job.target_eigenvalue
    if job.segre is not None:
        segre = job.segre
        n = segre.total_size
        P0 = (
            job.change_of_basis
            if job.change_of_basis is not None
            else Matrix.identity(n)
        )
        A, chain_list = build_matrix(segre, P0)
        picked = [
            (i, cp)
            for i, (cp, (lam, _)) in enumerate(zip(chain_list, segre.blocks))
            if lam == lam0
        ]
        if len(picked) != 1:
            raise InvalidParameterError(
                "the target eigenvalue must occupy exactly one Jordan block"
            )
        idx, chains = picked[0]
        m = chains.length
        # prediction basis: the shifted block's right chain first,
        # then every other block's columns in original order
        offsets = []
        off = 0
        for lam, size in segre.blocks:
            offsets.append((off, size))
            off += size
        cols = [P0.col(offsets[idx][0] + i) for i in range(m)]
        others = []
        for i, (lam, size) in enumerate(segre.blocks):
            if i != idx:
                cols.extend(P0.col(offsets[i][0] + t) for t in range(size))
                others.append((lam, size))
        P = Matrix.from_columns(cols, dim=n)
        return A, chains, P, others
    A = job.matrix
    chains = ChainPair(lam0, job.left_chain, job.right_chain)
    m = chains.length
    P = None
    if A.rows == m:
        P = Matrix.from_columns(list(chains.right), dim=m)
    return A, chains, P, []


def run_shift_job(job: ShiftJob) -> dict:
    """Execute shift -> predict -> verify and assemble the report."""
    lam0, lam1 = job.target_eigenvalue, job.new_eigenvalue
    A, chains, P, others = _job_inputs(job)
    m = chains.length
    if m != 2 * job.k and m != 2 * job.k + 1:
        raise InvalidParameterError(
            f"k={job.k} is inconsistent with a chain of length {m}"
        )
    R = (
        make_right_inverse(
            Matrix.from_columns(list(chains.right[: job.k]), dim=A.rows),
            free=job.r_free,
        )
        if job.k > 0
        else None
    )
    L = (
        make_left_inverse(
            Matrix.from_columns(list(chains.left[: job.k]), dim=A.rows),
            free=job.l_free,
        )
        if job.k > 0
        else None
    )
    if m % 2 == 0:
        shift = shift_even(A, chains, lam1, R=R, L=L)
    else:
        shift = shift_odd(A, chains, lam1, R=R, L=L)

    diagnostics = []
    verdicts = {}
    verdicts["spectrum_check"] = (
        PASS if charpoly_ratio_check(A, shift.A_hat, lam0, lam1, m) else FAIL
    )
    verdicts["half_chain_invariance"] = (
        PASS if half_chain_invariance_holds(shift) else FAIL
    )

    prediction = None
    predicted_obj = None
    cycles_obj = None
    report_oracle = None
    if job.backend != "exact":
        verdicts["prediction_vs_oracle"] = NA
        diagnostics.append(
            "float backend: classification skipped (exact backend required)"
        )
    elif P is None:
        verdicts["prediction_vs_oracle"] = NA
        diagnostics.append(
            "no full-dimension Jordan basis available for an explicit "
            "matrix larger than the supplied chain; prediction skipped"
        )
    else:
        try:
            prediction = predict_structure(shift, P)
        except ExtractionError as exc:
            verdicts["prediction_vs_oracle"] = NA
            diagnostics.append(f"prediction not applicable: {exc}")
        else:
            diagnostics.extend(prediction.diagnostics)
            predicted_full = SegreCharacteristic(
                list(prediction.segre.blocks) + others
            )
            if job.segre is not None:
                eigs = [lam1] + [lam for lam, _ in others]
                oracle = oracle_segre(shift.A_hat, eigs)
            else:
                sizes = weyr_profile(shift.A_hat, lam1).block_sizes()
                oracle = SegreCharacteristic([(lam1, s) for s in sizes])
                predicted_full = prediction.segre
            verdicts["prediction_vs_oracle"] = (
                PASS if predicted_full == oracle else FAIL
            )
            predicted_obj = {
                "segre": segre_to_obj(predicted_full),
                "case_label": prediction.case_label,
                "fallback_used": prediction.fallback_used,
            }
            cycles_obj = [
                [vector_to_obj(v) for v in cycle]
                for cycle in prediction.cycles
            ]
            report_oracle = segre_to_obj(oracle)
    report = {
        "kind": "shift-report",
        "job": job.normalized(),
        "shifted_matrix": (
            matrix_to_obj(shift.A_hat)
            if job.backend == "exact"
            else matrix_to_float_obj(shift.A_hat)
        ),
        "prediction": predicted_obj,
        "oracle_segre": report_oracle,
        "cycles": cycles_obj,
        "verdicts": verdicts,
        "diagnostics": diagnostics,
    }
    return report


def report_exit_code(report: dict) -> int:
    verdicts = report.get("verdicts", {})
    return 0 if all(v != FAIL for v in verdicts.values()) else 4


# ---------------------------------------------------------------------------
# verify jobs (biorthogonality / resolvent identity suite)


def parse_chain_sets(doc):
    """Chains document: {"chains": [{"lambda", "left", "right"}, ...]}."""
    if isinstance(doc, dict) and "chains" in doc:
        items = doc["chains"]
    elif isinstance(doc, list):
        items = doc
    else:
        raise JobParseError("chains document must hold a 'chains' array")
    pairs = []
    for item in items:
        try:
            lam = str_to_scalar(item["lambda"])
            left = [obj_to_vector(u) for u in item["left"]]
            right = [obj_to_vector(v) for v in item["right"]]
        except (KeyError, TypeError) as exc:
            raise JobParseError(f"bad chain entry: {exc}") from exc
        pairs.append(ChainPair(lam, left, right))
    return pairs


def run_verify_job(A: Matrix, pairs) -> dict:
    """Biorthogonality, Hankel-pattern and resolvent identity report."""
    from .biortho import (
        check_hankel,
        gram_table,
        middle_product_nonzero,
        resolvent_orthogonality_check,
    )
    from .errors import InvalidChainError

    verdicts = {}
    diagnostics = []
    lams = [p.lam for p in pairs]
    for i, pair in enumerate(pairs):
        tag = f"chain_{i}"
        try:
            pair.verify_against(A)
            verdicts[f"{tag}:recurrence"] = PASS
        except InvalidChainError as exc:
            verdicts[f"{tag}:recurrence"] = FAIL
            diagnostics.append(f"{tag}: {exc}")
            continue
        ok, info = check_hankel(gram_table(pair.left, pair.right))
        verdicts[f"{tag}:hankel_pattern"] = PASS if ok else FAIL
        if not ok:
            diagnostics.append(
                f"{tag}: Gram table violates the Hankel pattern at {info[0]}:"
                f" {info[1]}"
            )
        if pair.length % 2 == 1:
            try:
                middle_product_nonzero(pair.left, pair.right)
                verdicts[f"{tag}:middle_product"] = PASS
            except InvalidChainError as exc:
                verdicts[f"{tag}:middle_product"] = FAIL
                diagnostics.append(f"{tag}: {exc}")
        point = _resolvent_point(A, exclude=lams)
        if point is None:
            verdicts[f"{tag}:resolvent_identities"] = NA
            diagnostics.append(
                f"{tag}: no rational resolvent point found outside the spectrum"
            )
        else:
            ok = resolvent_orthogonality_check(A, point, pair)
            verdicts[f"{tag}:resolvent_identities"] = PASS if ok else FAIL
    for i in range(len(pairs)):
        for j in range(len(pairs)):
            if i == j or pairs[i].lam == pairs[j].lam:
                continue
            if verdicts.get(f"chain_{i}:recurrence") != PASS:
                continue
            if verdicts.get(f"chain_{j}:recurrence") != PASS:
                continue
            cross = gram_table(pairs[i].left, pairs[j].right)
            ok = cross.table.is_zero
            verdicts[f"cross_orthogonality_{i}_{j}"] = PASS if ok else FAIL
            if not ok:
                diagnostics.append(
                    f"chains {i} and {j} have distinct eigenvalues but a "
                    "nonzero cross Gram table"
                )
    return {
        "kind": "verify-report",
        "matrix": matrix_to_obj(A),
        "chains": [
            {
                "lambda": scalar_to_str(p.lam),
                "left": [vector_to_obj(u) for u in p.left],
                "right": [vector_to_obj(v) for v in p.right],
            }
            for p in pairs
        ],
        "verdicts": verdicts,
        "diagnostics": diagnostics,
    }


def _resolvent_point(A: Matrix, exclude):
    """First small rational point outside the spectrum of A."""
    from .scalars import CR

    n = A.rows
    ident = Matrix.identity(n)
    t = 0
    tried = 0
    while tried <= n + len(exclude) + 2:
        s = CR(t)
        t += 1
        if any(s == x for x in exclude):
            continue
        tried += 1
        if not (A - ident.scale(s)).det().is_zero:
            return s
    return None


# ---------------------------------------------------------------------------
# classify jobs (direct canonical-form access)


def run_classify_job(doc) -> dict:
    from .canonical import (
        ConcentratedForm,
        EvenCanonical,
        OddCanonical,
        classify_even,
        classify_odd,
        reduce_to_concentrated,
    )

    if not isinstance(doc, dict):
        raise JobParseError("form document must be a single object")
    kind = doc.get("kind")
    try:
        k = int(doc["k"])
        lam = str_to_scalar(doc["lambda"])
    except KeyError as exc:
        raise JobParseError(f"form is missing required field {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise JobParseError(f"bad form field: {exc}") from exc
    if k < 1:
        raise JobParseError("classification needs k >= 1")
    if kind == "even":
        C = obj_to_matrix(doc["C"]) if "C" in doc else Matrix.zeros(k, k)
        if C.shape != (k, k):
            raise JobParseError(f"C must be {k}x{k}")
        prediction = classify_even(EvenCanonical(k, lam, C))
    elif kind == "odd":
        C = obj_to_matrix(doc["C"]) if "C" in doc else Matrix.zeros(k, k)
        a = obj_to_vector(doc["a"]) if "a" in doc else Vector.zero(k)
        b = obj_to_vector(doc["b"]) if "b" in doc else Vector.zero(k)
        if C.shape != (k, k) or a.dim != k or b.dim != k:
            raise JobParseError(f"a, b must have length {k} and C be {k}x{k}")
        oc = OddCanonical(k, lam, a, b, C)
        prediction = classify_odd(reduce_to_concentrated(oc))
    else:
        raise JobParseError("form kind must be 'even' or 'odd'")
    return {
        "kind": "classify-report",
        "form": doc,
        "case_label": prediction.case_label,
        "segre": segre_to_obj(prediction.segre),
        "cycles": [
            [vector_to_obj(v) for v in cycle] for cycle in prediction.cycles
        ],
        "fallback_used": prediction.fallback_used,
        "diagnostics": list(prediction.diagnostics),
        "verdicts": {"classification": PASS},
    }
