"""Command-line surface.

Every subcommand reads windows/words/matrices inline or as JSON, computes
exactly, and writes machine-readable output (json by default, csv or pretty
on request).  Output is byte-stable for fixed inputs and configuration:
canonical key ordering and canonical term ordering throughout.

Exit codes: 0 success; 1 usage error; 2 domain error (invalid window or
matrix); 3 verification failure (a counterexample was found); 4 refusal to
use uncertified data.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import affperm, asymptotic, hecke, klcache, parabolic, schur, verify
from .affperm import AffPerm
from .errors import (
    AffschurError,
    CacheIoError,
    UncertifiedAValue,
    UncertifiedBoundary,
    WindowExceeded,
)
from .hecke import HeckeElt
from .laurent import LaurentPoly
from .parabolic import Composition, CosetTriple, PeriodicMatrix

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2
EXIT_VERIFY = 3
EXIT_UNCERTIFIED = 4

ENV_PREFIX = "AFFSCHUR_"
DEFAULTS = {"r": None, "n": None, "L": 4, "omega_window": None, "cache": None,
            "format": "json", "seed": 0}


class UsageError(Exception):
    pass


def _env(name: str):
    return os.environ.get(ENV_PREFIX + name.upper().replace("-", "_"))


def _setting(args, name: str, cast=None):
    """Precedence: explicit flag > environment variable > default."""
    val = getattr(args, name, None)
    if val is None:
        raw = _env(name)
        val = raw if raw is not None else DEFAULTS.get(name)
    if val is not None and cast is int and not isinstance(val, int):
        val = int(val)
    return val


def _require(cfg, *names) -> None:
    for name in names:
        if cfg.get(name) is None:
            raise UsageError(f"--{name} is required (flag or {ENV_PREFIX}{name.upper()})")


def parse_omega_window(raw) -> tuple[int, int] | None:
    if raw is None:
        return None
    if isinstance(raw, (tuple, list)):
        lo, hi = raw
    else:
        lo, hi = raw.split(":")
    lo, hi = int(lo), int(hi)
    if lo > hi:
        raise UsageError(f"omega window {lo}:{hi} is not ordered")
    return (lo, hi)


def parse_perm(spec: str, r: int | None) -> AffPerm:
    """Parse a window `a,b,c`, with optional `^k` rho-power suffix, a word
    (when every entry is a generator index for the given r), or JSON."""
    spec = spec.strip()
    if spec.startswith("{"):
        obj = json.loads(spec)
        if "window" in obj:
            return AffPerm(obj.get("r", len(obj["window"])), tuple(obj["window"]))
        return affperm.from_word(obj["r"], obj.get("omega", 0), obj.get("word", ()))
    power = 0
    if "^" in spec:
        spec, raw = spec.split("^", 1)
        power = int(raw)
    parts = [int(p) for p in spec.split(",") if p != ""]
    if not parts:
        raise UsageError("empty window")
    if r is None or len(parts) == r:
        try:
            return AffPerm(r or len(parts), tuple(parts)).shift(power)
        except AffschurError:
            if r is None:
                raise
    if r is not None and all(0 <= p < r for p in parts):
        return affperm.from_word(r, power, parts)
    return AffPerm(r or len(parts), tuple(parts)).shift(power)


def parse_comp(spec: str, n: int | None) -> Composition:
    spec = spec.strip()
    if spec.startswith("{"):
        return Composition.from_json(json.loads(spec))
    parts = tuple(int(p) for p in spec.split(","))
    return Composition(n or len(parts), parts)


def parse_matrix(spec: str) -> PeriodicMatrix:
    obj = json.loads(spec)
    return PeriodicMatrix.from_json(obj)


def parse_hecke(spec: str, r: int | None) -> HeckeElt:
    spec = spec.strip()
    if spec.startswith("{"):
        return HeckeElt.from_json(json.loads(spec))
    w = parse_perm(spec, r)
    return hecke.t_elt(w)


def parse_jelt(spec: str, r: int | None) -> asymptotic.JElt:
    spec = spec.strip()
    if spec.startswith("{"):
        obj = json.loads(spec)
        terms = {}
        for t in obj["terms"]:
            if "window" in t:
                key = AffPerm(obj["r"], tuple(t["window"]))
            else:
                key = PeriodicMatrix(obj["n"], tuple(tuple(e) for e in t["matrix"]))
            coeff = t.get("coeff", "1")
            if isinstance(coeff, str):
                terms[key] = LaurentPoly(int(coeff))
            else:
                terms[key] = LaurentPoly.from_json(coeff)
        return asymptotic.JElt(obj["ring"], obj["r"], obj.get("n", 0), terms)
    return asymptotic.j_elt(parse_perm(spec, r))


# ---------------------------------------------------------------------------
# output


def _flatten(obj, prefix="") -> list[tuple[str, str]]:
    rows = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            rows.extend(_flatten(obj[k], f"{prefix}{k}." if prefix else f"{k}."))
    elif isinstance(obj, (list, tuple)):
        rows.append((prefix.rstrip("."), json.dumps(obj, sort_keys=True)))
    else:
        rows.append((prefix.rstrip("."), json.dumps(obj)))
    return rows


def emit(obj, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(obj, sort_keys=True, separators=(",", ": "), indent=None))
    elif fmt == "csv":
        print("key,value")
        for k, v in _flatten(obj):
            v = v.replace('"', '""')
            print(f'{k},"{v}"')
    elif fmt == "pretty":
        print(json.dumps(obj, sort_keys=True, indent=2))
    else:
        raise UsageError(f"unknown output format {fmt!r}")


# ---------------------------------------------------------------------------
# subcommand implementations


def cmd_length(args, cfg) -> int:
    w = parse_perm(args.w, cfg["r"])
    emit({"window": list(w.window), "l": w.length, "omega_degree": w.omega_degree,
          "right_descents": sorted(w.right_descents), "left_descents": sorted(w.left_descents),
          "provenance": "exact"},
         cfg["format"])
    return EXIT_OK


def cmd_word(args, cfg) -> int:
    w = parse_perm(args.w, cfg["r"])
    omega, word = w.reduced_word()
    emit({"omega": omega, "word": list(word), "l": w.length, "provenance": "exact"},
         cfg["format"])
    return EXIT_OK


def cmd_bruhat(args, cfg) -> int:
    y = parse_perm(args.y, cfg["r"])
    w = parse_perm(args.w, cfg["r"])
    emit({"y": list(y.window), "w": list(w.window), "leq": affperm.bruhat_leq(y, w),
          "provenance": "exact"}, cfg["format"])
    return EXIT_OK


def cmd_klpoly(args, cfg) -> int:
    y = parse_perm(args.y, cfg["r"])
    w = parse_perm(args.w, cfg["r"])
    emit({"P": hecke.kl_poly(y, w).to_json(), "note": "polynomial in q = t^2, t-exponents",
          "provenance": "exact"}, cfg["format"])
    return EXIT_OK


def cmd_cbasis(args, cfg) -> int:
    w = parse_perm(args.w, cfg["r"])
    elt = hecke.cprime_elt(w) if args.prime else hecke.c_elt(w)
    emit(elt.to_json(), cfg["format"])
    return EXIT_OK


def cmd_hmul(args, cfg) -> int:
    a = parse_hecke(args.a, cfg["r"])
    b = parse_hecke(args.b, cfg["r"])
    emit(hecke.h_mul(a, b).to_json(), cfg["format"])
    return EXIT_OK


def cmd_hstruct(args, cfg) -> int:
    x = parse_perm(args.x, cfg["r"])
    y = parse_perm(args.y, cfg["r"])
    z = parse_perm(args.z, cfg["r"])
    emit({"h": hecke.h_struct(x, y, z).to_json(), "provenance": "exact"}, cfg["format"])
    return EXIT_OK


def cmd_cosets(args, cfg) -> int:
    lam = parse_comp(args.lam, cfg["n"])
    mu = parse_comp(args.mu, cfg["n"])
    w = parse_perm(args.w, lam.r)
    rep = parabolic.min_double_rep(w, lam, mu)
    triple = CosetTriple(lam, rep, mu)
    coset = sorted(parabolic.double_coset(triple), key=lambda x: x.sort_key)
    emit(
        {
            "min": list(rep.window),
            "plus": list(parabolic.plus_rep(triple).window),
            "size": len(coset),
            "elements": [list(x.window) for x in coset],
            "provenance": "exact",
        },
        cfg["format"],
    )
    return EXIT_OK


def cmd_matrix(args, cfg) -> int:
    lam = parse_comp(args.lam, cfg["n"])
    mu = parse_comp(args.mu, cfg["n"])
    w = parse_perm(args.w, lam.r)
    rep = parabolic.min_double_rep(w, lam, mu)
    A = parabolic.matrix_of_triple(CosetTriple(lam, rep, mu))
    out = A.to_json()
    out["d_A"] = parabolic.d_A_combinatorial(A)
    out["provenance"] = "exact"
    emit(out, cfg["format"])
    return EXIT_OK


def cmd_triple(args, cfg) -> int:
    A = parse_matrix(args.A)
    t = parabolic.triple_of_matrix(A)
    emit(
        {
            "lam": t.lam.to_json(),
            "w": list(t.w.window),
            "mu": t.mu.to_json(),
            "plus": list(parabolic.plus_rep(t).window),
            "d_A": parabolic.d_A_coxeter(A),
            "provenance": "exact",
        },
        cfg["format"],
    )
    return EXIT_OK


def cmd_theta(args, cfg) -> int:
    A = parse_matrix(args.A)
    elt = schur.theta_in_phihat(A)
    if args.basis != "phihat":
        elt = schur.basis_convert(elt, args.basis)
    emit(elt.to_json(), cfg["format"])
    return EXIT_OK


def cmd_gstruct(args, cfg) -> int:
    A, B, C = parse_matrix(args.A), parse_matrix(args.B), parse_matrix(args.C)
    emit({"g": schur.g_struct(A, B, C).to_json(), "provenance": "exact"}, cfg["format"])
    return EXIT_OK


def cmd_afn(args, cfg) -> int:
    z = parse_perm(args.z, cfg["r"])
    av = (asymptotic.certified_a if args.adaptive else asymptotic.a_bounded)(z, cfg["L"])
    emit(av.to_json(), cfg["format"])
    return EXIT_OK


def cmd_gamma(args, cfg) -> int:
    hecke_side = all((args.x, args.y, args.z))
    matrix_side = all((args.A, args.B, args.C))
    if hecke_side == matrix_side:
        raise UsageError("gamma needs either all of --x/--y/--z or all of --A/--B/--C")
    if args.A:
        A, B, C = parse_matrix(args.A), parse_matrix(args.B), parse_matrix(args.C)
        g = asymptotic.gamma_mat(A, B, C, cfg["L"])
    else:
        x = parse_perm(args.x, cfg["r"])
        y = parse_perm(args.y, cfg["r"])
        z = parse_perm(args.z, cfg["r"])
        g = asymptotic.gamma(x, y, z, cfg["L"])
    emit({"gamma": g, "provenance": "window-bounded, certified"}, cfg["format"])
    return EXIT_OK


def cmd_dinv(args, cfg) -> int:
    _require(cfg, "r")
    if cfg["n"]:
        dd = asymptotic.dinv_schur(cfg["n"], cfg["r"], cfg["L"], cfg["omega_window"])
        emit({"matrices": [[list(e) for e in A.entries] for A in dd],
              "count": len(dd), "provenance": "window-bounded, certified"}, cfg["format"])
    else:
        dd = asymptotic.distinguished_involutions(cfg["r"], cfg["L"])
        emit({"windows": [list(d.window) for d in dd], "count": len(dd),
              "provenance": "window-bounded, certified"}, cfg["format"])
    return EXIT_OK


def cmd_jmul(args, cfg) -> int:
    a = parse_jelt(args.a, cfg["r"])
    b = parse_jelt(args.b, cfg["r"])
    emit(asymptotic.j_mul(a, b, cfg["L"]).to_json(), cfg["format"])
    return EXIT_OK


def cmd_phi_map(args, cfg) -> int:
    if bool(args.A) == bool(args.w):
        raise UsageError("phi-map needs exactly one of --w or --A")
    if args.A:
        A = parse_matrix(args.A)
        img = asymptotic.lusztig_phi_schur(A, cfg["L"])
    else:
        w = parse_perm(args.w, cfg["r"])
        img = asymptotic.lusztig_phi_hecke(w, cfg["L"])
    emit(img.to_json(), cfg["format"])
    return EXIT_OK


def cmd_cells(args, cfg) -> int:
    _require(cfg, "r")
    if not args.hecke:
        _require(cfg, "n")
    if args.hecke:
        elems = list(affperm.ball(cfg["r"], cfg["L"]))
    else:
        elems = list(parabolic.enumerate_theta(cfg["n"], cfg["r"], cfg["L"], cfg["omega_window"]))
    report = asymptotic.cell_preorder(elems, args.flavor, cfg["L"])
    emit(report.to_json(), cfg["format"])
    return EXIT_OK


def cmd_lowest_cell(args, cfg) -> int:
    _require(cfg, "n", "r")
    report = asymptotic.lowest_cell(cfg["n"], cfg["r"], cfg["L"], cfg["omega_window"])
    emit(report.to_json(), cfg["format"])
    return EXIT_OK


def cmd_qsuite(args, cfg) -> int:
    _require(cfg, "n", "r")
    out = asymptotic.q_suite(cfg["n"], cfg["r"], cfg["L"], cfg["omega_window"])
    emit(out, cfg["format"])
    return EXIT_OK if out["ok"] else EXIT_VERIFY


def cmd_verify(args, cfg) -> int:
    results = []

    def progress(res: dict) -> None:
        status = "PASS" if res["ok"] else "FAIL"
        print(f"[{status}] {res['id']} ({res['seconds']}s): {res['summary']}", file=sys.stderr)

    for res in verify.run_all(progress=progress):
        results.append(
            {"id": res["id"], "ok": res["ok"], "summary": res["summary"], "seconds": res["seconds"]}
        )
    ok = all(r["ok"] for r in results)
    emit({"ok": ok, "criteria": results}, cfg["format"])
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_cache_stats(args, cfg) -> int:
    path = args.path or cfg["cache"]
    if not path:
        raise UsageError("cache-stats needs --cache or a positional path")
    emit(klcache.scan_stats(path), cfg["format"])
    return EXIT_OK


# ---------------------------------------------------------------------------
# wiring


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--r", type=int, default=None, help="period of the affine symmetric group")
    common.add_argument("--n", type=int, default=None, help="number of composition parts")
    common.add_argument("--L", type=int, default=None, help="length bound / scan radius")
    common.add_argument("--omega-window", default=None, metavar="lo:hi",
                        help="rho-power range for enumerations")
    common.add_argument("--cache", default=None, help="path of the KL JSON-lines cache")
    common.add_argument("--format", default=None, choices=("json", "csv", "pretty"))
    common.add_argument("--seed", type=int, default=None, help="seed for randomized spot checks")

    p = argparse.ArgumentParser(
        prog="affschur",
        description="Exact Kazhdan-Lusztig combinatorics for the extended affine "
        "symmetric group, its Hecke algebra, and the affine q-Schur algebra.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, configure=None):
        sp = sub.add_parser(name, parents=[common], help=help_)
        if configure:
            configure(sp)
        sp.set_defaults(fn=fn)
        return sp

    add("length", cmd_length, "length, omega-degree, and descents of a window",
        lambda sp: sp.add_argument("--w", required=True))
    add("word", cmd_word, "canonical reduced word rho^a s_i1 ... s_ik",
        lambda sp: sp.add_argument("--w", required=True))
    add("bruhat", cmd_bruhat, "Bruhat comparison y <= w",
        lambda sp: (sp.add_argument("--y", required=True), sp.add_argument("--w", required=True)))
    add("klpoly", cmd_klpoly, "Kazhdan-Lusztig polynomial P_{y,w}",
        lambda sp: (sp.add_argument("--y", required=True), sp.add_argument("--w", required=True)))
    add("cbasis", cmd_cbasis, "canonical basis element C_w (or C'_w) in the T-basis",
        lambda sp: (sp.add_argument("--w", required=True),
                    sp.add_argument("--prime", action="store_true")))
    add("hmul", cmd_hmul, "product of two T-basis Hecke elements",
        lambda sp: (sp.add_argument("--a", required=True), sp.add_argument("--b", required=True)))
    add("hstruct", cmd_hstruct, "structure constant h_{x,y,z} of the C-basis",
        lambda sp: (sp.add_argument("--x", required=True), sp.add_argument("--y", required=True),
                    sp.add_argument("--z", required=True)))
    add("cosets", cmd_cosets, "double coset of w: minimal/maximal representatives and members",
        lambda sp: (sp.add_argument("--lam", required=True), sp.add_argument("--mu", required=True),
                    sp.add_argument("--w", required=True)))
    add("matrix", cmd_matrix, "periodic matrix of a coset triple",
        lambda sp: (sp.add_argument("--lam", required=True), sp.add_argument("--mu", required=True),
                    sp.add_argument("--w", required=True)))
    add("triple", cmd_triple, "coset triple of a periodic matrix",
        lambda sp: sp.add_argument("--A", required=True))
    add("theta", cmd_theta, "canonical basis element theta_A expanded over phihat",
        lambda sp: (sp.add_argument("--A", required=True),
                    sp.add_argument("--basis", default="phihat",
                                    choices=("phi", "phihat", "e", "bracket"))))
    add("gstruct", cmd_gstruct, "structure constant g_{A,B,C} of the theta basis",
        lambda sp: (sp.add_argument("--A", required=True), sp.add_argument("--B", required=True),
                    sp.add_argument("--C", required=True)))
    add("afn", cmd_afn, "window-bounded a-function value with certification",
        lambda sp: (sp.add_argument("--z", required=True),
                    sp.add_argument("--adaptive", action="store_true",
                                    help="widen the scan radius until certified")))
    add("gamma", cmd_gamma, "leading coefficient gamma (Hecke --x/--y/--z or matrix --A/--B/--C)",
        lambda sp: (sp.add_argument("--x"), sp.add_argument("--y"), sp.add_argument("--z"),
                    sp.add_argument("--A"), sp.add_argument("--B"), sp.add_argument("--C")))
    add("dinv", cmd_dinv, "distinguished involutions in the window (matrices when --n is given)")
    add("jmul", cmd_jmul, "product in the asymptotic ring",
        lambda sp: (sp.add_argument("--a", required=True), sp.add_argument("--b", required=True)))
    add("phi-map", cmd_phi_map, "Lusztig homomorphism image (Hecke --w or Schur --A)",
        lambda sp: (sp.add_argument("--w"), sp.add_argument("--A")))
    add("cells", cmd_cells, "window-bounded cell preorder and partition",
        lambda sp: (sp.add_argument("--flavor", default="L", choices=("L", "R", "LR")),
                    sp.add_argument("--hecke", action="store_true",
                                    help="work in W instead of the matrix algebra")))
    add("lowest-cell", cmd_lowest_cell, "members and left cells of the lowest two-sided cell")
    add("qsuite", cmd_qsuite, "run the Q1-Q15 property suite on a certified window")
    add("verify", cmd_verify, "run the full acceptance suite")
    add("cache-stats", cmd_cache_stats, "inspect a KL cache file",
        lambda sp: sp.add_argument("path", nargs="?", default=None))
    return p


def main(argv: "list[str] | None" = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses exit code 2 for usage errors; remap --help passthrough
        return EXIT_OK if exc.code == 0 else EXIT_USAGE

    cfg = {
        "r": _setting(args, "r", int),
        "n": _setting(args, "n", int),
        "L": _setting(args, "L", int),
        "omega_window": None,
        "cache": _setting(args, "cache"),
        "format": _setting(args, "format"),
        "seed": _setting(args, "seed", int),
    }
    cache = None
    try:
        cfg["omega_window"] = parse_omega_window(
            args.omega_window if args.omega_window is not None else _env("omega_window")
        )
        if cfg["cache"]:
            cache = klcache.KLCache(cfg["cache"]).load()
        code = args.fn(args, cfg)
        if cache is not None:
            appended = cache.save_new()
            stats = cache.stats()
            stats["appended"] = appended
            print(json.dumps({"cache": stats}, sort_keys=True), file=sys.stderr)
        return code
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UncertifiedAValue, UncertifiedBoundary, WindowExceeded) as exc:
        print(f"uncertified data refusal: {exc}", file=sys.stderr)
        return EXIT_UNCERTIFIED
    except CacheIoError as exc:
        print(f"cache error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except AffschurError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
