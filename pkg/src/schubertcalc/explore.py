"""
Batch sweeps over all pairs (u, v) of S_n: expand the product, certify
every nonzero coefficient, and assemble a reproducible report.

Records are sorted by (u, v, w) one-line notation; reruns with any job
count produce identical reports apart from the wall-clock field.
"""
from __future__ import annotations

import concurrent.futures
import json
import time

from . import CONVENTION_VERSION, __version__
from .cache import cache_get, cache_key, cache_put, canonical_request
from .grothendieck import expansion_K
from .permutations import Permutation, all_permutations
from .polynomials import render, render_localized
from .positivity import (
    DifferencePair,
    BudgetExceeded,
    CERTIFIED,
    INCONCLUSIVE_AT_BOUNDS,
    INFEASIBLE_COMPLETE,
    DENOMINATOR_SHAPE_VIOLATION,
    SearchSpaceTooLarge,
    certify_grothendieck,
    certify_schubert,
)
from .schubert import expansion

SCHUBERT_N_CAP = 4
GROTHENDIECK_N_CAP = 3


def _present_ambient(variables) -> int:
    indices = [i for (f, i) in variables if f in ("y", "t")]
    return max(indices, default=1)


def certify_coefficient_schubert(coeff, target_desc: dict):
    """Certify with pairs drawn from the variables present, escalating once."""
    ambient = _present_ambient(coeff.variables())
    outcome = certify_schubert(coeff, ambient, target_desc)
    if outcome.status == INFEASIBLE_COMPLETE:
        outcome = certify_schubert(coeff, ambient + 1, target_desc)
    return outcome


def certify_coefficient_grothendieck(coeff, target_desc: dict, bounds=None):
    variables = set(coeff.num.variables())
    variables.update(("y", j) for j in coeff.den_y)
    variables.update(("t", i) for i in coeff.den_t)
    ambient = _present_ambient(variables)
    # search over the rectangle of indices that can actually occur
    t_max = max([i for (f, i) in variables if f == "t"], default=1)
    y_max = max([j for (f, j) in variables if f == "y"], default=1)
    allowed = [
        DifferencePair("ktheory", i, j)
        for i in range(1, t_max + 1)
        for j in range(1, y_max + 1)
    ]
    try:
        return certify_grothendieck(coeff, ambient, bounds, target_desc, allowed=allowed)
    except (SearchSpaceTooLarge, BudgetExceeded) as exc:
        from .positivity import CertifyOutcome

        return CertifyOutcome(INCONCLUSIVE_AT_BOUNDS, reason=f"{type(exc).__name__}: {exc}")


def pair_records(u_window: tuple, v_window: tuple, mode: str, bounds=None) -> list[dict]:
    """All certification records for one (u, v) pair, sorted by w."""
    u = Permutation(u_window) if u_window else Permutation([])
    v = Permutation(v_window) if v_window else Permutation([])
    records = []
    if mode == "schubert":
        result = expansion(u, v)
        items = sorted(result.coefficients.items(), key=lambda kv: kv[0].one_line())
        for w, coeff in items:
            desc = {
                "u": list(u.one_line()),
                "v": list(v.one_line()),
                "w": list(w.one_line()),
            }
            outcome = certify_coefficient_schubert(coeff, desc)
            records.append(_record(u, v, w, render(coeff), outcome))
    elif mode == "grothendieck":
        result = expansion_K(u, v)
        items = sorted(result.coefficients.items(), key=lambda kv: kv[0].one_line())
        for w, coeff in items:
            desc = {
                "u": list(u.one_line()),
                "v": list(v.one_line()),
                "w": list(w.one_line()),
            }
            outcome = certify_coefficient_grothendieck(coeff, desc, bounds)
            records.append(_record(u, v, w, render_localized(coeff), outcome))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return records


def _record(u, v, w, coefficient_text: str, outcome) -> dict:
    return {
        "u": list(u.one_line()),
        "v": list(v.one_line()),
        "w": list(w.one_line()),
        "coefficient": coefficient_text,
        "outcome": outcome.status,
        "certificate": outcome.certificate.to_json_dict() if outcome.certificate else None,
        "reason": outcome.reason,
    }


def _pair_worker(args) -> list[dict]:
    u_window, v_window, mode, bounds = args
    return pair_records(tuple(u_window), tuple(v_window), mode, bounds)


def explore(
    n: int,
    mode: str = "schubert",
    jobs: int = 1,
    bounds=None,
    cache_dir: str | None = None,
) -> tuple[dict, int]:
    """Sweep S_n x S_n; returns (report, exit_code)."""
    cap = SCHUBERT_N_CAP if mode == "schubert" else GROTHENDIECK_N_CAP
    if n < 1 or n > cap:
        raise ValueError(f"explore in {mode} mode supports 1 <= n <= {cap}")
    started = time.monotonic()
    perms = sorted(all_permutations(n), key=lambda w: w.one_line())
    pairs = [(u.one_line(), v.one_line()) for u in perms for v in perms]
    tasks = [(u_ol, v_ol, mode, bounds) for u_ol, v_ol in pairs]

    def compute(task) -> list[dict]:
        u_ol, v_ol, mode_, bounds_ = task
        if cache_dir:
            request = canonical_request(
                "explore-pair",
                {"u": list(u_ol), "v": list(v_ol), "mode": mode_, "bounds": bounds_},
                CONVENTION_VERSION,
            )
            key = cache_key(request)
            hit = cache_get(cache_dir, key)
            if hit is not None and "records" in hit:
                return hit["records"]
            records = _pair_worker(task)
            cache_put(cache_dir, key, {"request": request, "records": records})
            return records
        return _pair_worker(task)

    if jobs > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            per_pair = list(pool.map(_pair_worker, tasks))
        if cache_dir:
            for task, records in zip(tasks, per_pair):
                u_ol, v_ol, mode_, bounds_ = task
                request = canonical_request(
                    "explore-pair",
                    {"u": list(u_ol), "v": list(v_ol), "mode": mode_, "bounds": bounds_},
                    CONVENTION_VERSION,
                )
                cache_put(cache_dir, cache_key(request), {"request": request, "records": records})
    else:
        per_pair = [compute(task) for task in tasks]

    records = [record for chunk in per_pair for record in chunk]
    records.sort(key=lambda r: (r["u"], r["v"], r["w"]))
    counts = {
        CERTIFIED: 0,
        INFEASIBLE_COMPLETE: 0,
        INCONCLUSIVE_AT_BOUNDS: 0,
        DENOMINATOR_SHAPE_VIOLATION: 0,
    }
    for record in records:
        counts[record["outcome"]] += 1
    report = {
        "parameters": {
            "n": n,
            "mode": mode,
            "bounds": list(bounds) if bounds else None,
            "jobs": jobs,
        },
        "records": records,
        "summary": {
            "pairs": len(pairs),
            "nonzero_coefficients": len(records),
            "certified": counts[CERTIFIED],
            "infeasible_complete": counts[INFEASIBLE_COMPLETE],
            "inconclusive_at_bounds": counts[INCONCLUSIVE_AT_BOUNDS],
            "denominator_shape_violation": counts[DENOMINATOR_SHAPE_VIOLATION],
        },
        "tool_version": __version__,
        "convention_version": CONVENTION_VERSION,
        "wall_clock_seconds": round(time.monotonic() - started, 3),
    }
    if mode == "schubert" and counts[INFEASIBLE_COMPLETE] > 0:
        code = 3
    elif counts[INCONCLUSIVE_AT_BOUNDS] or counts[DENOMINATOR_SHAPE_VIOLATION]:
        code = 1
    else:
        code = 0
    return report, code


def render_report(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"
