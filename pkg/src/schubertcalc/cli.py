"""
Command-line front end.

Exit codes form a contract for CI: 0 success, 1 inconclusive evidence
(K-mode bounds exhausted), 2 usage error, 3 a positivity-theorem
violation (a schubert-mode InfeasibleComplete, which indicates an
implementation bug, never a disproof), 4 I/O failure.

Permutations are accepted as one-line notation `3,1,2` or word syntax
`s1 s2` everywhere. `--json` switches to machine output. The optional
config file holds `key=value` lines (keys: cache, jobs); flags override
the file, the file overrides SCHUBERT_CACHE / SCHUBERT_JOBS.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import CONVENTION_VERSION, __version__
from .cache import atomic_write_text, cache_get, cache_key, cache_put, canonical_request
from .divided_differences import skew_partial
from .explore import explore, render_report
from .grothendieck import (
    DenominatorShapeViolation,
    double_grothendieck,
    triple_coefficient_K,
)
from .permutations import (
    NotAPermutation,
    canonical_reduced_word,
    inversion_pairs,
    parse_permutation,
)
from .polynomials import ParseError, parse, render, render_localized
from .positivity import certify_billey
from .schubert import (
    AmbientTooSmall,
    NotReduced,
    billey as billey_formula,
    double_schubert,
    localize,
    triple_coefficient,
)
from .explore import certify_coefficient_grothendieck, certify_coefficient_schubert
from . import selftest as selftest_module


class UsageError(ValueError):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="schub",
        description="Exact triple Schubert calculus workbench",
    )
    parser.add_argument("--version", action="version", version=f"schubertcalc {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--config", help="key=value config file")

    p = sub.add_parser("poly", help="double Schubert polynomial")
    p.add_argument("--perm", required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--vars", choices=["xy", "xt"], default="xy")
    common(p)

    p = sub.add_parser("groth", help="double Grothendieck polynomial")
    p.add_argument("--perm", required=True)
    p.add_argument("--n", type=int)
    common(p)

    p = sub.add_parser("coeff", help="triple structure coefficient")
    p.add_argument("--u", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("--w", required=True)
    p.add_argument("--groth", action="store_true")
    common(p)

    p = sub.add_parser("skewdd", help="apply a skew divided difference")
    p.add_argument("--w", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("--input", required=True, metavar="EXPR")
    common(p)

    p = sub.add_parser("billey", help="localization via Billey's formula")
    p.add_argument("--u", required=True)
    p.add_argument("--w", required=True)
    p.add_argument("--word", help="comma-separated reduced word of w")
    common(p)

    p = sub.add_parser("localize", help="restriction of a Schubert class to a fixed point")
    p.add_argument("--u", required=True)
    p.add_argument("--w", required=True)
    common(p)

    p = sub.add_parser("certify", help="positivity certificate for a coefficient")
    p.add_argument("--u", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("--w", required=True)
    p.add_argument("--groth", action="store_true")
    p.add_argument("--zdeg-max", type=int, dest="zdeg_max")
    p.add_argument("--bdeg-max", type=int, dest="bdeg_max")
    common(p)

    p = sub.add_parser("explore", help="sweep all pairs of S_n and certify")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--groth", action="store_true")
    p.add_argument("--jobs", type=int)
    p.add_argument("--out", help="report file (written atomically)")
    common(p)

    p = sub.add_parser("selftest", help="run all module invariant suites")
    common(p)

    return parser


def _load_config(path: str | None) -> dict:
    settings: dict = {}
    if not path:
        return settings
    with open(path, "r", encoding="utf-8") as handle:
        for line in handle:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise UsageError(f"bad config line: {line!r}")
            key, _, value = line.partition("=")
            settings[key.strip()] = value.strip()
    return settings


def _settings(args) -> dict:
    config = _load_config(getattr(args, "config", None))
    cache_dir = config.get("cache", os.environ.get("SCHUBERT_CACHE"))
    jobs_raw = config.get("jobs", os.environ.get("SCHUBERT_JOBS", "1"))
    explicit_jobs = getattr(args, "jobs", None)
    try:
        jobs = int(explicit_jobs if explicit_jobs is not None else jobs_raw)
    except ValueError as exc:
        raise UsageError(f"bad jobs value: {jobs_raw!r}") from exc
    return {"cache": cache_dir, "jobs": max(jobs, 1)}


def _emit(args, payload: dict, text: str) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _cached_json(settings, command: str, params: dict, compute):
    """Run compute() or reuse the cached result for this canonical request."""
    cache_dir = settings.get("cache")
    if not cache_dir:
        return compute()
    request = canonical_request(command, params, CONVENTION_VERSION)
    key = cache_key(request)
    hit = cache_get(cache_dir, key)
    if hit is not None and "result" in hit:
        return hit["result"]
    result = compute()
    cache_put(cache_dir, key, {"request": request, "result": result})
    return result


def _cmd_poly(args, settings) -> int:
    w = parse_permutation(args.perm)
    n = args.n if args.n is not None else w.size()
    p = double_schubert(w, n)
    if args.vars == "xt":
        p = p.rename({("y", j): ("t", j) for j in range(1, n + 1)})
    _emit(args, {"polynomial": render(p), "n": n}, render(p))
    return 0


def _cmd_groth(args, settings) -> int:
    w = parse_permutation(args.perm)
    n = args.n if args.n is not None else w.size()
    g = double_grothendieck(w, n)
    _emit(args, {"element": render_localized(g), "n": n}, render_localized(g))
    return 0


def _cmd_coeff(args, settings) -> int:
    u = parse_permutation(args.u)
    v = parse_permutation(args.v)
    w = parse_permutation(args.w)
    params = {
        "u": list(u.one_line()),
        "v": list(v.one_line()),
        "w": list(w.one_line()),
        "groth": bool(args.groth),
    }

    def compute() -> str:
        if args.groth:
            return render_localized(triple_coefficient_K(u, v, w))
        return render(triple_coefficient(u, v, w))

    text = _cached_json(settings, "coeff", params, compute)
    _emit(args, {"coefficient": text, **params}, text)
    return 0


def _cmd_skewdd(args, settings) -> int:
    w = parse_permutation(args.w)
    v = parse_permutation(args.v)
    operand = parse(args.input)
    result = skew_partial(w, v, operand)
    _emit(args, {"polynomial": render(result)}, render(result))
    return 0


def _cmd_billey(args, settings) -> int:
    u = parse_permutation(args.u)
    w = parse_permutation(args.w)
    word = None
    if args.word:
        try:
            word = tuple(int(tok) for tok in args.word.split(","))
        except ValueError as exc:
            raise UsageError(f"bad word: {args.word!r}") from exc
    result = billey_formula(u, w, word)
    used = word if word is not None else canonical_reduced_word(w)
    _emit(
        args,
        {"polynomial": render(result), "word": list(used)},
        render(result),
    )
    return 0


def _cmd_localize(args, settings) -> int:
    u = parse_permutation(args.u)
    w = parse_permutation(args.w)
    n = max(u.size(), w.size())
    result = localize(u, w, n)
    _emit(args, {"polynomial": render(result), "n": n}, render(result))
    return 0


def _certify_exit(status: str) -> int:
    if status == "certified":
        return 0
    if status == "infeasible_complete":
        return 3
    return 1


def _cmd_certify(args, settings) -> int:
    u = parse_permutation(args.u)
    v = parse_permutation(args.v)
    w = parse_permutation(args.w)
    desc = {"u": list(u.one_line()), "v": list(v.one_line()), "w": list(w.one_line())}
    bounds = None
    if args.zdeg_max is not None or args.bdeg_max is not None:
        if args.zdeg_max is None or args.bdeg_max is None:
            raise UsageError("--zdeg-max and --bdeg-max must be given together")
        bounds = (args.zdeg_max, args.bdeg_max)
    params = {**desc, "groth": bool(args.groth), "bounds": list(bounds) if bounds else None}

    def compute() -> dict:
        if args.groth:
            coeff = triple_coefficient_K(u, v, w)
            outcome = certify_coefficient_grothendieck(coeff, desc, bounds)
            coefficient = render_localized(coeff)
        else:
            coeff = triple_coefficient(u, v, w)
            outcome = certify_coefficient_schubert(coeff, desc)
            coefficient = render(coeff)
        return {
            "coefficient": coefficient,
            "outcome": outcome.status,
            "certificate": outcome.certificate.to_json_dict() if outcome.certificate else None,
            "bounds": list(outcome.bounds) if outcome.bounds else None,
            "reason": outcome.reason,
            "convention_version": CONVENTION_VERSION,
        }

    payload = _cached_json(settings, "certify", params, compute)
    print(json.dumps(payload, indent=2))
    return _certify_exit(payload["outcome"])


def _cmd_explore(args, settings) -> int:
    mode = "grothendieck" if args.groth else "schubert"
    try:
        report, code = explore(
            args.n, mode=mode, jobs=settings["jobs"], cache_dir=settings.get("cache")
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    text = render_report(report)
    if args.out:
        atomic_write_text(args.out, text)
    print(text, end="")
    return code


def _cmd_selftest(args, settings) -> int:
    return selftest_module.run()


_HANDLERS = {
    "poly": _cmd_poly,
    "groth": _cmd_groth,
    "coeff": _cmd_coeff,
    "skewdd": _cmd_skewdd,
    "billey": _cmd_billey,
    "localize": _cmd_localize,
    "certify": _cmd_certify,
    "explore": _cmd_explore,
    "selftest": _cmd_selftest,
}


def dispatch(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        settings = _settings(args)
        return _HANDLERS[args.command](args, settings)
    except (UsageError, NotAPermutation, ParseError, AmbientTooSmall, NotReduced) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DenominatorShapeViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 4


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
