"""Command-line front end.

    qcluster gamma {e,c} [options]
    qcluster matrices {lambda-e,lambda-c,g-infinity,b-e,b-c} [options]
    qcluster check {compat,convergence,qq,baxter,oscillator,bruhat,bz,braid-vs-mutation,iso,translation} [options]

The window [rlo, rhi] is the range of levels that is printed or checked; the
computation itself runs on that range widened by the margin on both sides.
Exit codes: 0 success, 1 an identity failed, 2 bad configuration, 3 the
window cannot support the request.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from .errors import ConfigError, QClusterError, WindowError
from .gvectors import g_stabilized, g_stabilized_braid
from .lie import CoxeterWord, DynkinDatum, coxeter_word, make_datum
from .oscillator import (
    build_oscillator_seed,
    bruhat_relations,
    bz_comparison,
    compatibility,
    exchange_check,
    oscillator_relations,
)
from .quantization import (
    check_compatible,
    check_convergence,
    check_convergence_finite,
    check_translation_covariance,
    lambda_c,
    lambda_e,
)
from .quiver import Window, build_gamma_e, default_margin, ghl_surgery, order_key
from .relations import a1_setup, iso_G, verify_baxter, verify_qq
from .report import PresentationReport, Report, vertex_label

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_WINDOW = 0, 1, 2, 3

MATRICES = ("lambda-e", "lambda-c", "g-infinity", "b-e", "b-c")
CHECKS = (
    "compat", "convergence", "qq", "baxter", "oscillator", "bruhat", "bz",
    "braid-vs-mutation", "iso", "translation",
)


@dataclass(frozen=True)
class RunConfig:
    datum: DynkinDatum
    cox: CoxeterWord
    r_lo: int
    r_hi: int
    margin: int
    fmt: str

    @property
    def window(self) -> Window:
        return Window(self.r_lo - self.margin, self.r_hi + self.margin, self.margin)

    def describe(self) -> dict:
        return {
            "type": self.datum.name,
            "word": list(self.cox.word),
            "window": {"lo": self.r_lo, "hi": self.r_hi, "margin": self.margin},
        }


def parse_word(text: str | None, datum: DynkinDatum) -> tuple[int, ...]:
    if text is None:
        return tuple(datum.nodes)
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x)
    except ValueError:
        raise ConfigError(f"cannot parse Coxeter word {text!r}") from None


def resolve_margin(text: str, datum: DynkinDatum) -> int:
    if text == "auto":
        env = os.environ.get("QCS_MARGIN")
        text = env if env is not None else str(default_margin(datum))
    try:
        m = int(text)
    except ValueError:
        raise ConfigError(f"margin must be an integer or 'auto', got {text!r}") from None
    if m < 0:
        raise ConfigError("margin must be non-negative")
    return m


def make_config(args: argparse.Namespace) -> RunConfig:
    datum = make_datum(args.family, args.rank)
    cox = coxeter_word(datum, parse_word(args.word, datum))
    if args.rhi < args.rlo:
        raise ConfigError("--rhi must not be below --rlo")
    return RunConfig(datum, cox, args.rlo, args.rhi, resolve_margin(args.margin, datum), args.format)


# ---------------------------------------------------------------- payloads

def _sorted(cfg: RunConfig, verts) -> list:
    return sorted(verts, key=lambda v: order_key(cfg.cox, v))


def gamma_payload(kind: str, cfg: RunConfig) -> dict:
    if kind == "e":
        q = build_gamma_e(cfg.datum, cfg.cox, cfg.window)
    else:
        q = ghl_surgery(cfg.datum, cfg.cox, cfg.window)
    verts = _sorted(cfg, q.core_vertices())
    pos = {v: n for n, v in enumerate(verts)}
    pairs = []
    for v, w, m in q.arrows():
        if v in pos and w in pos:
            pairs.extend([(v, w)] * m)
    pairs.sort(key=lambda vw: (pos[vw[0]], pos[vw[1]]))
    arrows = [[vertex_label(v), vertex_label(w)] for v, w in pairs]
    out = {
        "kind": f"gamma-{kind}",
        **cfg.describe(),
        "vertices": [{"vertex": vertex_label(v), "mark": q.mark(v)} for v in verts],
        "arrows": arrows,
    }
    if kind == "c":
        out["green_word"] = list(q.green_word)
        out["greens"] = [vertex_label(v) for v in q.greens]
        out["reds"] = [vertex_label(v) for v in q.reds]
    return out


def matrix_payload(which: str, cfg: RunConfig) -> dict:
    w = cfg.window
    if which in ("lambda-e", "b-e"):
        if which == "lambda-e":
            mat = lambda_e(cfg.datum, cfg.cox, w).matrix
        else:
            mat = build_gamma_e(cfg.datum, cfg.cox, w).b
        labels = [v for v in _sorted(cfg, lambda_e(cfg.datum, cfg.cox, w).vertices) if w.in_core(v[1])]
    else:
        q = ghl_surgery(cfg.datum, cfg.cox, w)
        labels = _sorted(cfg, q.core_vertices())
        if which == "b-c":
            mat = q.b
        elif which == "g-infinity":
            mat = g_stabilized(q).matrix
        else:
            mat = lambda_c(q).matrix
    return {
        "kind": which,
        **cfg.describe(),
        "labels": [vertex_label(v) for v in labels],
        "rows": [[mat[v, x] for x in labels] for v in labels],
    }


def _report_json(rep) -> dict:
    if isinstance(rep, PresentationReport):
        return {
            "identity": rep.name,
            "status": "pass" if rep.passed else "fail",
            "relations": rep.to_json(),
            "notes": rep.notes,
        }
    return rep.to_json()


def run_check(which: str, cfg: RunConfig, args: argparse.Namespace) -> list:
    """Reports for one check; every entry is a Report or PresentationReport."""
    if which in ("qq", "baxter"):
        if cfg.datum.name != "A1":
            raise ConfigError(f"the {which} check is implemented in type A1 only")
        setup = a1_setup(cfg.window)
        verify = verify_qq if which == "qq" else verify_baxter
        if args.r is not None:
            return [verify(setup, args.r)]
        reports = []
        first = 2 if which == "baxter" else cfg.r_lo + (cfg.r_lo % 2)
        for r in range(first, cfg.r_hi + 1, 2):
            try:
                reports.append(verify(setup, r))
            except WindowError:
                continue  # too close to the window edge
        if not reports:
            raise WindowError(f"no admissible level for the {which} check in this window")
        return reports
    if which == "oscillator":
        osc = build_oscillator_seed()
        return [compatibility(osc), exchange_check(osc), oscillator_relations(osc)]
    if which == "bruhat":
        return [bruhat_relations()]
    if which == "bz":
        if cfg.datum.family != "A" or cfg.datum.rank not in (1, 2):
            raise ConfigError("the BZ comparison exists for A1 and A2 only")
        return [bz_comparison(cfg.datum.rank)]

    w = cfg.window
    if which == "compat":
        out = []
        if args.which in ("e", "both"):
            q = build_gamma_e(cfg.datum, cfg.cox, w)
            lam = lambda_e(cfg.datum, cfg.cox, w)
            rows = [v for v in lam.vertices if w.in_core(v[1])]
            out.append(check_compatible(q.b, lam, lam.vertices, rows=rows, name="compatibility (B_e, Lambda_e)"))
        if args.which in ("c", "both"):
            q = ghl_surgery(cfg.datum, cfg.cox, w)
            lam = lambda_c(q)
            out.append(check_compatible(q.b, lam, lam.vertices, name="compatibility (B_c, Lambda_c)"))
        return out
    q = ghl_surgery(cfg.datum, cfg.cox, w)
    if which == "convergence":
        out = [check_convergence(q)]
        out += [check_convergence_finite(q, k) for k in args.k]
        return out
    if which == "braid-vs-mutation":
        stab = g_stabilized(q)
        braid = g_stabilized_braid(q)
        rep = Report("braid-vs-mutation", info={"stabilized_at_round": stab.rounds})
        core = q.core_vertices()
        for v in core:
            for x in set(stab.column(v)) | {r for (r, c), _ in braid.items() if c == v}:
                if stab.matrix[x, v] != braid[x, v]:
                    rep.fail(row=vertex_label(x), col=vertex_label(v), value=stab.matrix[x, v], expected=braid[x, v])
        return [rep]
    if which == "iso":
        return [iso_G(q)]
    if which == "translation":
        return [check_translation_covariance(q, lambda_c(q))]
    raise ConfigError(f"unknown check {which!r}")


# ---------------------------------------------------------------- rendering

def _table(labels: list, rows: list, sep: str) -> str:
    if sep == "\t":
        lines = ["\t" + "\t".join(labels)]
        lines += [lab + "\t" + "\t".join(str(x) for x in row) for lab, row in zip(labels, rows)]
        return "\n".join(lines)
    width = max([len(x) for x in labels] + [len(str(x)) for row in rows for x in row] + [1])
    lines = [" " * width + " " + " ".join(x.rjust(width) for x in labels)]
    lines += [lab.rjust(width) + " " + " ".join(str(x).rjust(width) for x in row) for lab, row in zip(labels, rows)]
    return "\n".join(lines)


def render(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, sort_keys=True, indent=2)
    sep = "\t" if fmt == "tsv" else " "
    kind = payload.get("kind", "")
    if "rows" in payload:
        return _table(payload["labels"], payload["rows"], sep)
    if kind.startswith("gamma"):
        lines = [sep.join(("vertex", v["vertex"], v["mark"])) for v in payload["vertices"]]
        lines += [sep.join(("arrow", a, b)) for a, b in payload["arrows"]]
        return "\n".join(lines)
    lines = []
    for rep in payload["reports"]:
        lines.append(sep.join((rep["status"], rep["identity"])))
        for rel in rep.get("relations", []):
            lines.append(sep.join(("", rel["status"], rel["form"], rel["relation"])))
        if rep.get("violations"):
            lines.append(sep.join(("", f"{len(rep['violations'])} violation(s)")))
    lines.append(sep.join(("overall", payload["status"])))
    return "\n".join(lines)


# ---------------------------------------------------------------- entry point

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", default="A", help="A, D or E")
    common.add_argument("--rank", type=int, default=1)
    common.add_argument("--word", help="Coxeter word, comma separated (default 1,2,...,n)")
    common.add_argument("--rlo", type=int, default=-20)
    common.add_argument("--rhi", type=int, default=10)
    common.add_argument("--margin", default="auto", help="integer or 'auto' (2h, or $QCS_MARGIN)")
    common.add_argument("--format", choices=("json", "tsv", "pretty"), default="json")
    common.add_argument("--seed", type=int, default=0, help="randomness seed (recorded, checks are exact)")

    parser = argparse.ArgumentParser(prog="qcluster", description="Quantum cluster structures on shifted quantum affine Grothendieck rings")
    sub = parser.add_subparsers(dest="command", required=True)
    g = sub.add_parser("gamma", parents=[common], help="print Gamma_e or Gamma_c")
    g.add_argument("kind", choices=("e", "c"))
    m = sub.add_parser("matrices", parents=[common], help="print a matrix on the window")
    m.add_argument("which", choices=MATRICES)
    c = sub.add_parser("check", parents=[common], help="run a verifier")
    c.add_argument("name", choices=CHECKS)
    c.add_argument("--which", choices=("e", "c", "both"), default="both", help="quiver for the compat check")
    c.add_argument("--r", type=int, help="single level for qq / baxter")
    c.add_argument("--k", type=int, nargs="*", default=[1, 2], help="finite rounds for convergence")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        cfg = make_config(args)
        if args.command == "gamma":
            payload = gamma_payload(args.kind, cfg)
            code = EXIT_OK
        elif args.command == "matrices":
            payload = matrix_payload(args.which, cfg)
            code = EXIT_OK
        else:
            reports = run_check(args.name, cfg, args)
            ok = all(r.passed for r in reports)
            payload = {
                "kind": "check",
                "check": args.name,
                **cfg.describe(),
                "status": "pass" if ok else "fail",
                "reports": [_report_json(r) for r in reports],
            }
            code = EXIT_OK if ok else EXIT_FAIL
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except WindowError as exc:
        print(f"window error: {exc}", file=sys.stderr)
        return EXIT_WINDOW
    except QClusterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    print(render(payload, cfg.fmt))
    return code


if __name__ == "__main__":
    sys.exit(main())
