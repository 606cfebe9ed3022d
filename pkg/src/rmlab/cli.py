"""
Command line front end: ``rmlab <command> [options]``.

Every command prints one document

    {"command": ..., "config": ..., "result": ..., "metadata": ...}

as JSON (default) or as a flat ``key: value`` table (``--table``).  Exact
field elements are written as ``"a b d /q"`` strings, floats as shortest
round-trip decimals and complex numbers as ``{"re": .., "im": ..}``.  No
timing information enters the document, so repeated runs with the same flags
produce identical bytes.

Exit status: 0 on success, 1 on numeric failure (non-convergence, a check
whose residual exceeds ``--tol``, a failing selftest criterion), 2 on invalid
input.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction

import numpy as np

from . import __version__

EXIT_OK, EXIT_NUMERIC, EXIT_INPUT = 0, 1, 2

COMMANDS = (
    "reduce", "unit", "dual", "delta", "stab", "theta-rm", "theta-lattice", "hecke-avg", "fe-check",
    "zeta", "stark", "probe", "qtheta", "qtheta-fe", "boca-proj", "bimodule-check", "morita",
    "pentagon", "rogers", "dilog-asym", "selftest",
)

WORKED_LATTICE = "basis=(5 0, 0 5) d=3"


class NumericFailure(RuntimeError):
    """A computation finished but its self-check failed."""

    def __init__(self, message, doc=None):
        super().__init__(message)
        self.doc = doc


class InputRejected(ValueError):
    """Well formed input violating a mathematical precondition; the diagnosis is still printed."""

    def __init__(self, message, doc=None):
        super().__init__(message)
        self.doc = doc


# ---------------------------------------------------------------------------
# serialization


def jsonable(x):
    from .pseudolattice import CFExpansion, GL2ZMatrix, Pseudolattice, format_pseudolattice
    from .quadfield import QuadElem, format_elem

    if isinstance(x, QuadElem):
        return format_elem(x)
    if isinstance(x, Pseudolattice):
        return format_pseudolattice(x)
    if isinstance(x, (GL2ZMatrix, CFExpansion)):
        return str(x)
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else str(x)
    if isinstance(x, (complex, np.complexfloating)):
        return {"re": jsonable(x.real), "im": jsonable(x.imag)}
    if isinstance(x, dict):
        return {(k if isinstance(k, str) else _key(k)): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, np.ndarray)):
        return [jsonable(v) for v in x]
    if x is None or isinstance(x, str):
        return x
    return str(x)


def _key(k) -> str:
    if isinstance(k, tuple):
        return ",".join(str(int(v)) for v in k)
    return str(k)


def _flatten(prefix, x, out):
    if isinstance(x, dict):
        for k, v in x.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, out)
    elif isinstance(x, list) and x and all(isinstance(v, (dict, list)) for v in x):
        for i, v in enumerate(x):
            _flatten(f"{prefix}[{i}]", v, out)
    else:
        out.append((prefix, json.dumps(x, ensure_ascii=False)))


def render(doc: dict, fmt: str) -> str:
    doc = jsonable(doc)
    if fmt == "table":
        rows = []
        _flatten("", doc, rows)
        w = max(len(k) for k, _ in rows)
        return "\n".join(f"{k.ljust(w)}  {v}" for k, v in rows)
    return json.dumps(doc, indent=2, ensure_ascii=False)


# ---------------------------------------------------------------------------
# argument parsing helpers


def _complex(text: str) -> complex:
    """``"re,im"`` or a Python complex literal such as ``"1j"``."""
    s = text.strip()
    if "," in s:
        re_, im_ = s.split(",", 1)
        return complex(float(re_), float(im_))
    return complex(s.replace("i", "j"))


def _ints(text: str) -> tuple[int, ...]:
    return tuple(int(v) for v in text.replace("(", "").replace(")", "").split(","))


def _matrix(text: str):
    from .pseudolattice import GL2ZMatrix

    vals = [int(v) for v in text.replace("[", " ").replace("]", " ").replace(",", " ").split()]
    if len(vals) != 4:
        raise ValueError(f"expected four integers for a 2x2 matrix, got {text!r}")
    return GL2ZMatrix(*vals)


def _elem(text: str, d: int | None = None):
    from .quadfield import QuadElem, parse_elem

    parts = text.split()
    if d is not None and len(parts) == 1:
        return QuadElem(Fraction(parts[0]), 0, d)
    x = parse_elem(text)
    if d is not None and x.d != d:
        raise ValueError(f"element {text!r} is not in Q(sqrt {d})")
    return x


def _real_or_elem(text: str) -> float:
    t = text.strip()
    if len(t.split()) >= 3:
        return float(_elem(t))
    return float(eval_real(t))


def eval_real(text: str) -> float:
    """A float, or ``sqrt(k)`` arithmetic such as ``sqrt(2)-1``."""
    allowed = {"sqrt": math.sqrt, "pi": math.pi, "e": math.e}
    try:
        return float(eval(text, {"__builtins__": {}}, allowed))  # noqa: S307 - restricted namespace
    except Exception as exc:
        raise ValueError(f"cannot read a real number from {text!r}") from exc


def _T(text: str):
    from .qtorus import SiegelPoint

    diag = [_complex(p) for p in text.split(";")]
    return SiegelPoint(np.diag(diag))


def _lattice(args):
    from .pseudolattice import parse_pseudolattice

    return parse_pseudolattice(args.lattice)


def _tol(args, default):
    return args.tol if args.tol is not None else default


def _trunc(args, default):
    return args.trunc if args.trunc is not None else default


# ---------------------------------------------------------------------------
# commands


def cmd_reduce(args):
    from .pseudolattice import cf_expand

    if args.lattice:
        L = _lattice(args)
        theta = L.theta
        nf, g = L.normal_form()
        extra = {"lattice": L, "normal_form_theta": nf, "normal_form_matrix": g}
    else:
        theta = _elem(args.theta)
        extra = {}
    cf = cf_expand(theta)
    return {"theta": theta, "cf": str(cf), "preperiod": list(cf.preperiod), "period": list(cf.period), **extra}, {}


def cmd_unit(args):
    from .quadfield import fundamental_unit, pretty_elem, totally_positive_unit

    e, tp = fundamental_unit(args.d), totally_positive_unit(args.d)
    return {"unit": pretty_elem(e), "unit_exact": e, "norm": int(e.norm()),
            "totally_positive": pretty_elem(tp), "totally_positive_exact": tp}, {}


def cmd_dual(args):
    from .pseudolattice import delta, dual_pseudolattice

    L = _lattice(args)
    M = dual_pseudolattice(L)
    return {"lattice": L, "dual": M, "delta_product": delta(L) * delta(M)}, {}


def cmd_delta(args):
    from .pseudolattice import delta, endomorphism_ring

    L = _lattice(args)
    return {"lattice": L, "delta": delta(L), "delta_float": float(delta(L)),
            "conductor": endomorphism_ring(L).f}, {}


def cmd_stab(args):
    from .pseudolattice import stabilizer_matrix

    theta = _elem(args.theta)
    g, eps, g2 = stabilizer_matrix(theta)
    return {"theta": theta, "g": g, "eigenvalue": eps, "g_sl2": g2,
            "eigenvalue_sl2": g2.cocycle(theta), "det": g.det()}, {}


def _theta_spec(args):
    from .rmtheta import ThetaSpec, unit_group_for

    L = _lattice(args)
    l0, m0 = _elem(args.l0, L.d), _elem(args.m0, L.d)
    eps = _elem(args.eps, L.d) if args.eps else unit_group_for(L, l0, m0)
    return ThetaSpec(L, l0, m0, _complex(args.eta), eps)


def _spec_config(spec):
    return {"lattice": spec.L, "l0": spec.l0, "m0": spec.m0, "eta": complex(spec.eta), "eps": spec.eps}


def cmd_theta_rm(args):
    from .rmtheta import theta_rm

    spec = _theta_spec(args)
    bound = Fraction(args.trunc) if args.trunc is not None else None
    val, info = theta_rm(spec, _complex(args.v), _tol(args, 1e-12), bound=bound, return_info=True)
    return {"value": val, **_spec_config(spec)}, {"truncation": {"norm_bound": info["bound"], "terms": info["terms"]},
                                                  "tail_estimate": info["tail"]}


def cmd_theta_lattice(args):
    from .rmtheta import lattice_spec_at, theta_lattice

    L = _lattice(args)
    l0, m0 = _elem(args.l0, L.d), _elem(args.m0, L.d)
    spec = lattice_spec_at(L, l0, m0, _complex(args.eta), args.t)
    val, info = theta_lattice(spec, _complex(args.v), _tol(args, 1e-13), return_info=True)
    return ({"value": val, "omega": [spec.omega1, spec.omega2], "lambda0": spec.lam0, "mu0": spec.mu0},
            {"truncation": info})


def cmd_hecke_avg(args):
    from .rmtheta import hecke_average, theta_rm

    spec = _theta_spec(args)
    v = _complex(args.v)
    val, info = hecke_average(spec, v, _tol(args, 1e-9), return_info=True)
    direct = theta_rm(spec, v)
    return {"hecke_average": val, "theta_rm": direct, "difference": abs(val - direct), **_spec_config(spec)}, {
        "quadrature": info}


def cmd_fe_check(args):
    from .rmtheta import fe_lattice_residual, fe_rm_residual

    v = _complex(args.v)
    tol = _tol(args, 1e-8)
    if args.kind == "rm":
        spec = _theta_spec(args)
        res, lhs, rhs = fe_rm_residual(spec, v)
        cfg = _spec_config(spec)
    else:
        L = _lattice(args)
        l0, m0 = _elem(args.l0, L.d), _elem(args.m0, L.d)
        res, lhs, rhs = fe_lattice_residual(L, l0, m0, _complex(args.eta), args.t, v)
        cfg = {"lattice": L, "l0": l0, "m0": m0, "t": args.t}
    out = {"kind": args.kind, "lhs": lhs, "rhs": rhs, "residual": res, "pass": res < tol, **cfg}
    if res >= tol:
        raise NumericFailure(f"functional equation residual {res:.3e} exceeds tol {tol:g}", (out, {}))
    return out, {"residuals": {"fe": res}}


def _stark_input(args):
    from .starkzeta import StarkInput

    L = _lattice(args)
    return StarkInput(L, _elem(args.l0, L.d))


def cmd_zeta(args):
    from .starkzeta import zeta_direct, zeta_mellin

    inp = _stark_input(args)
    s = _complex(args.s)
    if args.direct:
        z = zeta_direct(inp, s, Fraction(_trunc(args, 10**6)))
    else:
        z = zeta_mellin(inp, s, _tol(args, 1e-12), y0=args.y0)
    return {"s": z.s, "value": z.value, "method": z.method, "unit_generator": inp.eps}, {"truncation": z.metadata}


def cmd_stark(args):
    from .starkzeta import stark_conditions_check, stark_number

    inp = _stark_input(args)
    chk = stark_conditions_check(inp.L, inp.l0)
    out = {"conditions": {k: v for k, v in chk.items()}}
    if not chk["pass"]:
        out["pass"] = False
        raise InputRejected("Stark admissibility conditions fail", (out, {}))
    zp, S0, meta = stark_number(inp, _tol(args, 1e-12), check=False)
    out.update({"zeta_0": 0.0, "zeta_prime_0": zp, "S0": S0, "pass": True})
    return out, {"truncation": meta}


def cmd_probe(args):
    from .starkzeta import algebraicity_probe, stark_number, worked_example

    if args.x is None:
        _, x, _ = stark_number(worked_example())
        source = "stark number of the worked example"
    else:
        x, source = eval_real(args.x), "argument"
    hit = algebraicity_probe(x, args.deg, args.height, _tol(args, 1e-9))
    res = {"x": x, "source": source, "found": hit is not None}
    if hit is not None:
        res.update({"polynomial": hit[0], "residual": hit[1]})
    return res, {"note": "exploratory search; a hit is numerical evidence only"}


def _qtorus_fixture(args):
    from .qtorus import EmbeddedLattice, dual_lattice

    T = _T(args.T)
    if T.N == 1:
        th = _real_or_elem(args.theta)
        D = EmbeddedLattice(np.diag([th, 1.0]))
    else:
        D = EmbeddedLattice(np.eye(2 * T.N))
        th = 1.0
    if getattr(args, "dual", False):
        D = dual_lattice(D)
    return th, D, T


def cmd_qtheta(args):
    from .qtorus import heisenberg_inner, qtheta_coeffs

    th, D, T = _qtorus_fixture(args)
    s = qtheta_coeffs(D, T, _trunc(args, 3.0))
    coeffs = {_key(tuple(g)): c.real for g, c in zip(s.g, s.coeffs)}
    res = {"coefficients": coeffs, "lattice": "dual" if args.dual else "D", "covolume": D.covolume}
    meta = {"truncation": {"R": s.R, "points": len(s.g)}}
    if args.oracle:
        if T.N > 2:
            raise ValueError("the quadrature oracle supports N <= 2")
        worst = max(abs(c - heisenberg_inner(T, v)[1]) for v, c in zip(s.v, s.coeffs))
        res["oracle_residual"] = worst
        meta["residuals"] = {"oracle": worst}
    return res, meta


def cmd_qtheta_fe(args):
    from .qtorus import qtheta_coeffs, qtheta_fe_residual

    th, D, T = _qtorus_fixture(args)
    s = qtheta_coeffs(D, T, _trunc(args, 8.0))
    g = _ints(args.g)
    r = qtheta_fe_residual(s, g, literal=args.literal)
    tol = _tol(args, 1e-12)
    out = {"g": list(g), "residual": r, "multiplier": "literal" if args.literal else "derived", "pass": r < tol}
    if r >= tol:
        raise NumericFailure(f"functional equation residual {r:.3e} exceeds tol {tol:g}", (out, {}))
    return out, {"truncation": {"R": s.R}, "residuals": {"fe": r}}


def cmd_boca_proj(args):
    from .qtorus import boca_projection

    th, D, T = _qtorus_fixture(args)
    b = boca_projection(D, T, _trunc(args, 10.0), _tol(args, 1e-15))
    res = {"trace": b.trace.real, "theta": th, "idempotency": b.idempotency, "selfadjointness": b.selfadjointness,
           "min_eigenvalue_theta_dual": b.min_eigenvalue}
    if args.coefficients:
        res["coefficients"] = b.as_dict()
    return res, {"truncation": {"R": b.algebra.R, "points": b.algebra.n}, "iterations": b.iterations,
                 "residuals": {"inverse_sqrt": b.inv_sqrt_residual},
                 "positivity": "heuristic certificate on the truncated regular representation"}


def cmd_bimodule_check(args):
    from .qtorus import bimodule_action_residual

    th = _real_or_elem(args.theta)
    r = bimodule_action_residual(th, _matrix(args.g), X=args.X, npts=args.npts)
    tol = _tol(args, 1e-12)
    r["pass"] = r["max_residual"] < tol and r["left_phase_error"] < tol
    if not r["pass"]:
        raise NumericFailure("bimodule relation residual exceeds tolerance", (r, {}))
    return r, {"grid": {"X": args.X, "npts": args.npts}}


def cmd_morita(args):
    from .qtorus import morita_act, morita_compose

    theta = _elem(args.theta)
    g = _matrix(args.g)
    if args.action == "act":
        t, j = morita_act(g, theta)
        return {"theta": theta, "target": t, "cocycle": j}, {}
    if not args.h:
        raise ValueError("morita compose needs --h")
    r = morita_compose(g, _matrix(args.h), theta)
    if not r["multiplicative"]:
        raise NumericFailure("cocycle is not multiplicative", (r, {}))
    return r, {}


def cmd_pentagon(args):
    from .qexp import QSeriesParams, parse_mu, pentagon_check

    P = QSeriesParams(args.ndeg, args.qdeg, parse_mu(args.mu))
    r = pentagon_check(P)
    res = {"residual": "0" if r.is_zero() else "nonzero", "mu": args.mu,
           "nonzero_monomials": {f"v^{b}u^{a}": c for (b, a), c in
                                 sorted((k, r.coefficient(*k)) for k in r.coeffs)}}
    return res, {"truncation": {"Ndeg": args.ndeg, "Qdeg": args.qdeg}}


def cmd_rogers(args):
    from .qexp import rogers_numeric

    r = rogers_numeric(args.x, args.y)
    return {"x": args.x, "y": args.y, "residual": r}, {}


def cmd_dilog_asym(args):
    from .qexp import dilog_asymptotic, halving_ratio

    r = dilog_asymptotic(args.t, args.y, args.literal)
    return {"t": args.t, "y": args.y, "remainder": r, "halving_ratio": halving_ratio(args.t, args.y, args.literal),
            "form": "literal" if args.literal else "midpoint"}, {}


def cmd_selftest(args):
    from .acceptance import run_all

    only = [int(k) for k in args.only.split(",")] if args.only else None
    results = run_all(args.seed, only)
    for c in results:
        print(c.line(), file=sys.stderr)
    out = {"criteria": {str(c.number): {"title": c.title, "pass": c.passed, "details": c.details} for c in results},
           "all_pass": all(c.passed for c in results)}
    if not out["all_pass"]:
        raise NumericFailure("selftest criteria failed", (out, {}))
    return out, {}


HANDLERS = {name: globals()["cmd_" + name.replace("-", "_")] for name in COMMANDS}


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None, help="tolerance (meaning depends on the command)")
    common.add_argument("--trunc", type=float, default=None,
                        help="truncation: norm bound for RM sums, radius R for quantum tori")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json", help="JSON output (default)")
    fmt.add_argument("--table", dest="fmt", action="store_const", const="table", help="flat key/value table")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized property suites")

    p = argparse.ArgumentParser(prog="rmlab", description="Real multiplication laboratory")
    p.add_argument("--version", action="version", version=f"rmlab {__version__}")
    sub = p.add_subparsers(dest="command", metavar="command")
    sub.required = True

    def add(name, help_):
        return sub.add_parser(name, help=help_, parents=[common])

    def lattice_opts(q, default=WORKED_LATTICE, l0="1", m0="0"):
        q.add_argument("--lattice", default=default, help='"basis=(a1 b1, a2 b2) d=<d>"')
        q.add_argument("--l0", default=l0, help='shift, "a b d" or a rational')
        q.add_argument("--m0", default=m0, help='character shift, "a b d" or a rational')
        q.add_argument("--eta", default="1,0", help="eta as re,im")

    q = add("reduce", "continued fraction of theta or of a pseudolattice invariant")
    g = q.add_mutually_exclusive_group(required=True)
    g.add_argument("--theta", help='quadratic irrational "a b d [/q]"')
    g.add_argument("--lattice")

    q = add("unit", "fundamental and totally positive unit")
    q.add_argument("-d", type=int, required=True)

    for name, h in (("dual", "dual pseudolattice"), ("delta", "Delta(L) and conductor")):
        add(name, h).add_argument("--lattice", required=True)

    add("stab", "stabilizer matrix of theta").add_argument("--theta", required=True)

    q = add("theta-rm", "RM theta function")
    lattice_opts(q)
    q.add_argument("--eps", help="unit generator (default: smallest admissible power)")
    q.add_argument("--v", default="0,1")

    q = add("theta-lattice", "lattice theta of the Hecke lift at t")
    lattice_opts(q, "basis=(1 0, 1/2 1/2) d=5", "1/3", "1/4 1/4 5")
    q.add_argument("--t", type=float, default=0.0)
    q.add_argument("--v", default="0,1")

    q = add("hecke-avg", "Hecke average along the closed geodesic vs direct RM theta")
    lattice_opts(q)
    q.add_argument("--eps")
    q.add_argument("--v", default="0,1")

    q = add("fe-check", "functional equation residual (rm or lattice)")
    q.add_argument("--kind", choices=("rm", "lattice"), default="rm")
    lattice_opts(q)
    q.add_argument("--eps")
    q.add_argument("--t", type=float, default=0.0)
    q.add_argument("--v", default="0,1")

    q = add("zeta", "partial zeta value")
    q.add_argument("--lattice", default=WORKED_LATTICE)
    q.add_argument("--l0", default="1")
    q.add_argument("--s", default="2,0")
    m = q.add_mutually_exclusive_group()
    m.add_argument("--direct", action="store_true", help="truncated Dirichlet series (Re s > 1)")
    m.add_argument("--mellin", action="store_true", help="Mellin continuation (default)")
    q.add_argument("--y0", type=float, default=1.0)

    q = add("stark", "admissibility conditions, zeta'(0) and the Stark number")
    q.add_argument("--lattice", default=WORKED_LATTICE)
    q.add_argument("--l0", default="1")

    q = add("probe", "integer polynomial search (exploratory)")
    q.add_argument("--x", help="real number (default: the worked Stark number)")
    q.add_argument("--deg", type=int, default=2)
    q.add_argument("--height", type=int, default=10)

    def qt_opts(q, with_dual=True):
        q.add_argument("--theta", default="sqrt(2)-1", help="theta for D = diag(theta, 1) (N = 1)")
        q.add_argument("--T", default="0,1", help='diagonal of T, entries "re,im" separated by ";"')
        if with_dual:
            q.add_argument("--dual", action="store_true", help="use the dual lattice D^!")

    q = add("qtheta", "quantum theta coefficients")
    qt_opts(q)
    q.add_argument("--oracle", action="store_true", help="compare with Gaussian integrals")

    q = add("qtheta-fe", "quantum theta functional equation residual")
    qt_opts(q)
    q.add_argument("--g", default="1,0")
    q.add_argument("--literal", action="store_true", help="use the 3 pi/2 multiplier")

    q = add("boca-proj", "Boca projection")
    qt_opts(q, with_dual=False)
    q.add_argument("--coefficients", action="store_true")

    q = add("bimodule-check", "bimodule relations for g")
    q.add_argument("--theta", default="sqrt(2)-1")
    q.add_argument("--g", default="[[0,1],[1,-1]]")
    q.add_argument("--X", type=float, default=5.0)
    q.add_argument("--npts", type=int, default=64)

    q = add("morita", "Morita action and composition")
    q.add_argument("action", choices=("act", "compose"))
    q.add_argument("--theta", default="0 1 2")
    q.add_argument("--g", default="[[0,1],[1,0]]")
    q.add_argument("--h")

    q = add("pentagon", "pentagon identity residual")
    q.add_argument("--ndeg", type=int, default=6)
    q.add_argument("--qdeg", type=int, default=40)
    q.add_argument("--mu", default="q", help="q or 1 (or q^k)")

    q = add("rogers", "Rogers five term identity residual")
    q.add_argument("--x", type=float, default=0.5)
    q.add_argument("--y", type=float, default=0.5)

    q = add("dilog-asym", "remainder of the q -> 1 asymptotic of log e_q(t)")
    q.add_argument("--t", type=float, default=1.0)
    q.add_argument("--y", type=float, default=0.01)
    q.add_argument("--literal", action="store_true", help="include the (1/2) log(1+qt) term")

    q = add("selftest", "run the acceptance suite")
    q.add_argument("--only", help="comma separated criterion numbers")
    return p


def _config(args) -> dict:
    skip = {"command", "fmt"}
    cfg = {k: v for k, v in sorted(vars(args).items()) if k not in skip}
    cfg["precision"] = os.environ.get("RMLAB_PRECISION", "double")
    cfg["format"] = args.fmt or "json"
    return cfg


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse: 0 for --help, 2 for bad usage
        return int(exc.code or 0)
    fmt = args.fmt or "json"
    doc = {"command": args.command, "config": _config(args)}
    try:
        result, meta = HANDLERS[args.command](args)
        status = EXIT_OK
    except NumericFailure as exc:
        result, meta = exc.doc if exc.doc else ({}, {})
        meta = {**meta, "error": str(exc)}
        status = EXIT_NUMERIC
    except InputRejected as exc:
        result, meta = exc.doc
        doc["result"], doc["metadata"] = result, {**meta, "error": str(exc)}
        print(render(doc, fmt))
        print(f"rmlab {args.command}: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, ArithmeticError, KeyError) as exc:
        print(f"rmlab {args.command}: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except RuntimeError as exc:
        result, meta, status = {}, {"error": str(exc)}, EXIT_NUMERIC
    doc["result"], doc["metadata"] = result, meta
    print(render(doc, fmt))
    if status == EXIT_NUMERIC:
        print(f"rmlab {args.command}: numeric failure: {meta['error']}", file=sys.stderr)
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
