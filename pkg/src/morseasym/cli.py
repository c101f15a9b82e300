"""Command line: ``morseasym <command> ...``.

Exit status 0 on success, 1 for bad input or an invalid complex, 2 when a
precondition fails or the integer oracle refuses.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction

from . import document
from .complex import augmentation, build, validate
from .errors import LatticeRankError, MorseError, OracleRefused, ZeroClass
from .invariants import main_bound
from .matrix import matmul, snf
from .novikov import (basic_subcomplex, check_xi_generic, excluded_hyperplanes,
                      to_xi_presentation)
from .oracle import cyclic_cover_Z, finite_quotient_Z, morse_number_Z, mu_series, slope_fit
from .ring import split_along_xi

EXIT_OK, EXIT_INPUT, EXIT_PRECONDITION = 0, 1, 2


class Refused(Exception):
    """Precondition failure reported with exit status 2."""


def _read(path):
    with open(path, "rb") as fh:
        raw = fh.read()
    return raw, hashlib.sha256(raw).hexdigest()


def _load(path):
    raw, digest = _read(path)
    return document.loads(raw.decode("utf-8")), digest


def _parse_xi(text):
    try:
        xi = [int(x) for x in text.split(",")]
    except ValueError:
        raise ValueError(f"--xi expects comma-separated integers, got {text!r}") from None
    try:
        return split_along_xi(xi)
    except ZeroClass as exc:
        raise Refused(f"--xi: {exc}") from None


def _fmt(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, bool):
        return "yes" if x else "no"
    return str(x)


def _poly_list(ps):
    return "[" + ", ".join(str(p) for p in ps) + "]"


# ---------------------------------------------------------------------------
# commands: each returns (report sections, human lines)
# ---------------------------------------------------------------------------

def cmd_validate(args):
    C, digest = _load(args.path)
    bad = validate(C)
    sections = {"valid": not bad, "lattice_rank": C.lattice_rank, "ranks": list(C.ranks),
                "violations": [{"kind": v.kind, "p": v.p, "row": v.row, "col": v.col,
                                "message": v.message} for v in bad]}
    lines = [f"lattice rank {C.lattice_rank}, ranks {list(C.ranks)}"]
    lines += [f"violation: {v}" for v in bad] or ["valid"]
    return digest, sections, lines, (EXIT_INPUT if bad else EXIT_OK)


def _require_valid(C):
    bad = validate(C)
    if bad:
        raise ValueError("invalid complex: " + "; ".join(str(v) for v in bad))


def _invariant_lines(R):
    lines = ["p\tB_p\tQ_p\tbound_p"]
    for p, (b, q, pb) in enumerate(zip(R.B_per_degree, R.Q_per_degree, R.per_degree_bound)):
        lines.append(f"{p}\t{b}\t{q}\t{pb}")
    lines.append(f"B = {R.B_total}, Q = {R.Q_total}, bound B+2Q = {R.bound}")
    for p, (rs, zs, f) in enumerate(zip(R.rho, R.zeta, R.fitting)):
        if not f.ideals or f.d == 0:
            continue
        fit = "; ".join(f"F_{i.t} {i.kind.value}"
                        + (f" (content {i.content}, witness {i.witness})" if i.witness else "")
                        for i in f.ideals)
        lines.append(f"d_{p + 1}: fitting {fit}")
        lines.append(f"d_{p + 1}: rho {_poly_list(rs)}, zeta {_poly_list(zs)}")
    if R.xi is not None:
        lines.append(f"xi {list(R.xi.covector)} = {R.xi.divisibility} * "
                     f"{list(R.xi.reduced)}, basis change {[list(r) for r in R.xi.basis_change]}")
        for d in R.principal:
            lines.append(f"p = {d.p}: q_p = {d.q}, a = {_poly_list(d.a)}, "
                         f"xi-special {_fmt(d.all_special)}")
        g = R.generic
        if g.certified:
            lines.append(f"genericity: certified against {len(g.hyperplanes)} hyperplane(s)")
        else:
            lines.append(f"genericity: not certified, xi vanishes on {list(g.excluded_by)}")
    lines.append("flags: " + ", ".join(f"{k}={_fmt(v)}" for k, v in R.flags.items()))
    return lines


def cmd_invariants(args):
    C, digest = _load(args.path)
    _require_valid(C)
    xi = _parse_xi(args.xi) if args.xi else None
    if xi is not None and xi.lattice_rank != C.lattice_rank:
        raise ValueError(f"--xi has {xi.lattice_rank} entries, lattice rank is {C.lattice_rank}")
    R = main_bound(C, xi)
    return digest, {"invariants": R.as_dict()}, _invariant_lines(R), EXIT_OK


def _oracle_input(C, xi_text, augment):
    """The univariate complex whose truncations feed the oracle."""
    if xi_text:
        xi = _parse_xi(xi_text)
        if xi.lattice_rank != C.lattice_rank:
            raise ValueError(f"--xi has {xi.lattice_rank} entries, "
                             f"lattice rank is {C.lattice_rank}")
        X = to_xi_presentation(C, xi).complex
    elif C.lattice_rank == 1:
        X = C
    else:
        raise Refused(f"lattice rank {C.lattice_rank}: pass --xi to pick the direction t")
    if X.lattice_rank > 1:
        if not augment:
            raise OracleRefused(f"kernel rank {X.lattice_rank - 1} >= 1; the integer oracle "
                                "only handles kernel rank 0 (use --augment to send the "
                                "kernel variables to 1)")
        X = augmentation(X, [X.lattice_rank - 1])
    return X


def cmd_mu(args):
    C, digest = _load(args.path)
    _require_valid(C)
    X = _oracle_input(C, args.xi, args.augment)
    D = basic_subcomplex(X)
    series = mu_series(D, args.kmax)
    fit = slope_fit(series, args.burnin)
    predicted = main_bound(C).bound
    agree = fit.slope == predicted
    rows = [{"k": k, "mu": v, "prediction": predicted * k}
            for k, v in enumerate(series.values, start=1)]
    sections = {"mu_series": rows, "basic_shifts": list(D.shifts), "fit": fit.as_dict(),
                "predicted_slope": predicted, "agree": agree}
    table = [f"{r['k']}\t{r['mu']}\t{r['prediction']}" for r in rows]
    if args.table:
        return digest, sections, table, EXIT_OK
    lines = ["k\tmu_k\t(B+2Q)k"] + table
    lines.append(f"basic subcomplex shifts {list(D.shifts)}")
    lines.append(f"fit over k = {fit.window[0]}..{fit.window[1]}: slope {fit.slope}, "
                 f"max deviation {fit.max_deviation}")
    lines.append(f"predicted slope B+2Q = {predicted}: {'agree' if agree else 'disagree'}")
    return digest, sections, lines, EXIT_OK


def cmd_cover(args):
    C, digest = _load(args.path)
    _require_valid(C)
    bound = main_bound(C).bound
    if args.quotient is not None:
        k_max, cover, power = args.quotient, finite_quotient_Z, C.lattice_rank
    else:
        if C.lattice_rank != 1:
            raise Refused("cyclic covers need a univariate complex; use --quotient")
        k_max, cover, power = args.k, cyclic_cover_Z, 1
    ks = range(1, k_max + 1) if args.table else [k_max]
    rows = []
    for k in ks:
        Z = cover(C, k)
        M = morse_number_Z(Z)
        rows.append({"k": k, "ranks": list(Z.ranks), "morse": M,
                     "prediction": bound * k ** power, "residual": M - bound * k ** power})
    sections = {"cover": "quotient" if args.quotient is not None else "cyclic",
                "bound": bound, "power": power, "rows": rows}
    lines = [f"bound B+2Q = {bound}, prediction (B+2Q)*k^{power}",
             "k\tranks\tM_Z\tprediction\tresidual"]
    lines += [f"{r['k']}\t{r['ranks']}\t{r['morse']}\t{r['prediction']}\t{r['residual']}"
              for r in rows]
    return digest, sections, lines, EXIT_OK


def cmd_make(args):
    kw = {}
    m = args.m
    if args.model in ("tau", "tau-basic"):
        if args.rho is None:
            raise ValueError("--rho is required")
        kw = {"rho": args.rho, "i": args.dim, "lattice_rank": m}
    elif args.model == "free":
        kw = {"i": args.dim, "s": args.rank, "lattice_rank": m}
    else:
        b = [int(x) for x in args.b.split(",")] if args.b else []
        a = []
        for i in range(10):
            val = getattr(args, f"a{i}")
            if val:
                a.extend([[]] * (i + 1 - len(a)))
                a[i] = [s.strip() for s in val.split(",")]
        kw = {"b": b, "a": a, "lattice_rank": m}
    C = build(args.model.replace("-", "_"), **kw)
    return None, {"document": json.loads(document.dumps(C))}, [document.dumps(C).rstrip("\n")], EXIT_OK


def cmd_snf(args):
    raw, digest = _read(args.path)
    try:
        A = json.loads(raw.decode("utf-8"))
    except json.JSONDecodeError as exc:
        raise document.DocumentError(f"parse error: {exc.msg}", exc.lineno, exc.colno) from None
    if isinstance(A, dict):
        A = A.get("matrix")
    ok = (isinstance(A, list) and all(isinstance(r, list) for r in A)
          and all(isinstance(x, int) and not isinstance(x, bool) for r in A for x in r)
          and len({len(r) for r in A}) <= 1)
    if not ok:
        raise ValueError("expected a rectangular list of integer rows")
    ncols = len(A[0]) if A else 0
    res = snf(A, ncols)
    check = matmul(matmul(res.U, A, len(A)), res.V, ncols) == res.S if A else True
    sections = {"divisors": res.divisors, "rank": res.rank, "S": res.S, "U": res.U, "V": res.V,
                "verified": check}
    lines = [f"rank {res.rank}", f"divisors {res.divisors}",
             "S = " + json.dumps(res.S), "U = " + json.dumps(res.U), "V = " + json.dumps(res.V)]
    return digest, sections, lines, EXIT_OK


def cmd_hyperplanes(args):
    C, digest = _load(args.path)
    _require_valid(C)
    if args.xi:
        xi = _parse_xi(args.xi)
        if xi.lattice_rank != C.lattice_rank:
            raise ValueError(f"--xi has {xi.lattice_rank} entries, "
                             f"lattice rank is {C.lattice_rank}")
        cert = check_xi_generic(C, xi)
        hs = cert.hyperplanes
        sections = {"hyperplanes": hs.as_dict(), "genericity": cert.as_dict()}
    else:
        hs, cert = excluded_hyperplanes(C), None
        sections = {"hyperplanes": hs.as_dict()}
    lines = [f"{list(v)}\tfrom {', '.join(hs.provenance[v])}" for v in hs]
    lines.insert(0, f"{len(hs)} excluded hyperplane(s) xi(v) = 0")
    if cert is not None:
        lines.append("xi certified generic" if cert.certified
                     else f"xi not certified: vanishes on {list(cert.excluded_by)}")
    return digest, sections, lines, EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="morseasym",
                                 description="Asymptotic Morse-number invariants of free "
                                             "chain complexes over Z[Z^m].")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, path=True):
        p = sub.add_parser(name, help=help_)
        if path:
            p.add_argument("path")
        p.add_argument("--json", action="store_true", help="machine-readable report")
        p.set_defaults(func=fn)
        return p

    add("validate", cmd_validate, "check shapes and d o d = 0")
    p = add("invariants", cmd_invariants, "B, Q, Fitting ladders and the bound B+2Q")
    p.add_argument("--xi", help='cohomology class, e.g. "1,-1"')
    p = add("mu", cmd_mu, "Morse numbers of truncations and their fitted slope")
    p.add_argument("--xi")
    p.add_argument("--kmax", type=int, default=10)
    p.add_argument("--burnin", type=int, default=2, help="leading terms left out of the fit")
    p.add_argument("--augment", action="store_true", help="send kernel variables to 1")
    p.add_argument("--table", action="store_true", help="plain k, mu_k, prediction table")
    p = add("cover", cmd_cover, "Morse numbers of cyclic covers or finite quotients")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--k", type=int)
    g.add_argument("--quotient", type=int, metavar="K")
    p.add_argument("--table", action="store_true", help="all k = 1..K")
    p = add("make", cmd_make, "print a model complex document", path=False)
    p.add_argument("model", choices=["tau", "tau-basic", "free", "principal"])
    p.add_argument("--rho")
    p.add_argument("--dim", type=int, default=0)
    p.add_argument("--rank", type=int, default=1)
    p.add_argument("--m", type=int, default=1, help="lattice rank")
    p.add_argument("--b", help='free ranks per degree, e.g. "1,0"')
    for i in range(10):
        p.add_argument(f"--a{i}", help=f"torsion coefficients in degree {i}" if i < 2 else
                       argparse.SUPPRESS)
    add("snf", cmd_snf, "Smith normal form of an integer matrix (JSON list of rows)")
    p = add("hyperplanes", cmd_hyperplanes, "hyperplanes excluded for genericity")
    p.add_argument("--xi")
    return ap


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    flags = {}
    try:
        digest, sections, lines, status = args.func(args)
    except (OracleRefused, Refused, ZeroClass, LatticeRankError) as exc:
        status, flags["oracle_refused"] = EXIT_PRECONDITION, isinstance(exc, OracleRefused)
        digest, sections, lines = None, {"error": str(exc)}, [f"error: {exc}"]
    except (MorseError, ValueError, OSError, UnicodeDecodeError) as exc:
        status = EXIT_INPUT
        digest, sections, lines = None, {"error": str(exc)}, [f"error: {exc}"]
    if "invariants" in sections:
        flags.update(sections["invariants"]["flags"])
    if "genericity" in sections:
        flags["generic_certified"] = sections["genericity"]["certified"]
    if args.json:
        report = {"command": ["morseasym"] + argv, "input_sha256": digest, **sections,
                  "flags": flags, "exit_status": status}
        print(json.dumps(report, indent=2, sort_keys=False))
    elif args.command == "make" and status == EXIT_OK:
        print(lines[0])
    else:
        stream = sys.stdout if status == EXIT_OK else sys.stderr
        print("\n".join(lines), file=stream)
    return status


if __name__ == "__main__":
    sys.exit(main())
