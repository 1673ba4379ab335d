"""Batch front end: ``frobroot <cmd> [options] FILE``.

Job files are line oriented ``key: value`` records.  Generator lists are
separated by ``;`` and may continue on following lines.  ``/`` also ends a
record, so a whole job fits on one line::

    p: 2 / vars: x y z / J: x^3+y^3+z^3 / omega: gorenstein

Exit codes: 0 ok, 1 internal error, 2 input error, 3 cover incomplete,
4 chain bound hit.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass, field

from .frobenius import ie_operator
from .hslstrat import (
    CAVEAT_CM,
    CAVEAT_OVERRIDE,
    DEFAULT_MAX_E,
    CoverIncomplete,
    PresentedAlgebra,
    UNotInModule,
    frobenius_module_generators,
    hsl_chain,
    local_hsl,
    strata_ideals,
    stratify,
)
from .idealops import Ideal, ideal_colon, ideal_intersection
from .ringcore import PolynomialSyntaxError, RingContext

EXIT_OK, EXIT_INTERNAL, EXIT_INPUT, EXIT_COVER, EXIT_BOUND = 0, 1, 2, 3, 4

COMMANDS = ("gb", "ie", "colon", "intersect", "hsl", "stratify", "finjective", "localhsl")
KEYS = ("p", "vars", "order", "J", "omega", "u", "max_e")

_KEY_RE = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*)\s*:")


class JobError(ValueError):
    def __init__(self, message, line=0, col=0, source="<job>"):
        self.line, self.col, self.source = line, col, source
        super().__init__(f"{source}:{line}:{col}: {message}")


@dataclass
class _Value:
    text: str
    pieces: list = field(default_factory=list)  # (text, line, col)


@dataclass
class JobSpec:
    p: int
    vars: tuple
    order: str
    J: list
    omega: object  # list of expression strings or "gorenstein"
    u: str | None = None
    max_e: int | None = None
    ctx: RingContext | None = None
    J_polys: list = field(default_factory=list)
    omega_polys: list | None = None
    u_poly: object = None

    def algebra(self) -> PresentedAlgebra:
        ctx = self.ctx
        J = Ideal(ctx, self.J_polys)
        if self.omega_polys is None:
            return PresentedAlgebra(ctx, J, Ideal.unit(ctx), True, self.u_poly)
        return PresentedAlgebra(ctx, J, Ideal(ctx, self.omega_polys), False, self.u_poly)


def _records(text):
    """Yield (segment, line, col) for every '/'- or newline-delimited record."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        col = 0
        for seg in line.split("/"):
            yield seg, lineno, col + 1
            col += len(seg) + 1


def _split_list(value: _Value):
    """Split a (possibly multi-line) value on ';'.

    Returns (text, positions) pairs where positions[k] is the (line, col)
    of text[k] in the job file.
    """
    chars, where = [], []
    for text, line, col in value.pieces:
        if chars:
            chars.append(" ")
            where.append(where[-1])
        for k, ch in enumerate(text):
            chars.append(ch)
            where.append((line, col + k))
    items = []
    start = 0
    for part in "".join(chars).split(";"):
        lead = len(part) - len(part.lstrip())
        body = part.strip()
        if body:
            items.append((body, where[start + lead:start + lead + len(body)]))
        start += len(part) + 1
    return items


def load_jobspec(source: str, *, inline: bool | None = None, name: str | None = None) -> JobSpec:
    """Parse a job from a file path or from inline text.

    ``inline=None`` treats ``source`` as a path when such a file exists.
    """
    if inline is None:
        inline = not os.path.isfile(source)
    if inline:
        text, name = source, name or "<inline>"
    else:
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
        name = name or source

    values = {}
    current = None
    for seg, line, col in _records(text):
        if not seg.strip():
            continue
        m = _KEY_RE.match(seg)
        if m:
            key = m.group(1)
            if key not in KEYS:
                raise JobError(f"unknown key {key!r}", line, col + m.start(1), name)
            if key in values:
                raise JobError(f"duplicate key {key!r}", line, col + m.start(1), name)
            rest = seg[m.end():]
            values[key] = _Value(rest.strip(), [(rest, line, col + m.end())])
            current = key
        elif current in ("J", "omega"):
            v = values[current]
            v.text += " " + seg.strip()
            v.pieces.append((seg, line, col))
        else:
            lead = len(seg) - len(seg.lstrip())
            raise JobError("expected 'key: value'", line, col + lead, name)

    def need(key):
        if key not in values:
            raise JobError(f"missing required key {key!r}", 0, 0, name)
        return values[key]

    def where(key):
        text, line, col = values[key].pieces[0]
        return line, col + len(text) - len(text.lstrip())

    pv = need("p")
    try:
        p = int(pv.text)
    except ValueError:
        raise JobError(f"p must be an integer, got {pv.text!r}", *where("p"), name) from None
    names = tuple(v for v in re.split(r"[\s,]+", need("vars").text) if v)
    order = values["order"].text if "order" in values else "grevlex"
    try:
        ctx = RingContext(p, names, order)
    except ValueError as exc:
        key = "p" if "p must" in str(exc) else ("order" if "order" in str(exc) or "block" in str(exc) else "vars")
        line, col = where(key) if key in values else (0, 0)
        raise JobError(str(exc), line, col, name) from None

    def parse(item):
        text, positions = item
        try:
            return ctx.parse(text)
        except PolynomialSyntaxError as exc:
            if exc.pos < len(positions):
                line, col = positions[exc.pos]
            else:
                line, col = positions[-1][0], positions[-1][1] + 1
            raise JobError(str(exc).rsplit(" at position", 1)[0], line, col, name) from None

    J_items = _split_list(need("J"))
    if not J_items:
        raise JobError("J needs at least one generator", *where("J"), name)
    J_polys = [parse(it) for it in J_items]

    omega_polys = None
    omega = "gorenstein"
    if "omega" in values and values["omega"].text != "gorenstein":
        items = _split_list(values["omega"])
        if not items:
            raise JobError("omega needs generators or 'gorenstein'", *where("omega"), name)
        omega = [it[0] for it in items]
        omega_polys = [parse(it) for it in items]

    u = u_poly = None
    if "u" in values:
        u = values["u"].text
        items = _split_list(values["u"])
        if len(items) != 1:
            raise JobError("u must be a single expression", *where("u"), name)
        u_poly = parse(items[0])

    max_e = None
    if "max_e" in values:
        try:
            max_e = int(values["max_e"].text)
        except ValueError:
            max_e = 0
        if max_e < 1:
            raise JobError("max_e must be a positive integer", *where("max_e"), name)

    return JobSpec(p, names, ctx.order_name(), [it[0] for it in J_items], omega, u, max_e,
                   ctx, J_polys, omega_polys, u_poly)


# -- reports --------------------------------------------------------------------

def _ideal(I: Ideal) -> list:
    return [str(g) for g in I.gb()]


def _header(cmd, spec: JobSpec) -> dict:
    return {
        "status": "ok",
        "command": cmd,
        "p": spec.p,
        "vars": list(spec.vars),
        "order": spec.order,
        "J": _ideal(Ideal(spec.ctx, spec.J_polys)),
        "omega": "gorenstein" if spec.omega_polys is None else _ideal(Ideal(spec.ctx, spec.omega_polys)),
    }


def _chain_dict(chain, K=None):
    d = {
        "u": str(chain.u),
        "nu": list(chain.nu),
        "L": [_ideal(L) for L in chain.L],
        "stab": chain.stab,
    }
    if K is not None:
        d["K"] = [_ideal(k) for k in K]
    return d


def _strat_dict(report, strat):
    report["status"] = strat.status
    report["charts"] = [
        {"g": str(c.g), "m": _ideal(c.m), "L": [_ideal(L) for L in c.chain.L],
         "K": [_ideal(K) for K in c.K], "stab": c.chain.stab}
        for c in strat.charts
    ]
    report["merged"] = [_ideal(Z) for Z in strat.merged]
    report["global_bound"] = strat.global_bound
    report["caveats"] = list(strat.caveats)


def run_command(cmd: str, spec: JobSpec, *, e: int = 1, prime: str | None = None,
                u: str | None = None, max_e: int | None = None, threads: int = 1):
    """Execute one subcommand; returns (report dict, exit code)."""
    if cmd not in COMMANDS:
        raise ValueError(f"unknown command {cmd!r}")
    ctx = spec.ctx
    report = _header(cmd, spec)
    bound = max_e or spec.max_e or DEFAULT_MAX_E
    J = Ideal(ctx, spec.J_polys)

    if cmd == "gb":
        report["result"] = _ideal(J)
        return report, EXIT_OK
    if cmd == "ie":
        if e < 0:
            raise JobError("--e must be nonnegative")
        report["e"] = e
        report["result"] = _ideal(ie_operator(J, e))
        return report, EXIT_OK
    if cmd in ("colon", "intersect"):
        omega = Ideal.unit(ctx) if spec.omega_polys is None else Ideal(ctx, spec.omega_polys)
        op = ideal_colon if cmd == "colon" else ideal_intersection
        report["result"] = _ideal(op(J, omega))
        return report, EXIT_OK

    if u is not None:
        spec.u = u
        try:
            spec.u_poly = ctx.parse(u)
        except PolynomialSyntaxError as exc:
            raise JobError(f"--u: {exc}") from None
    try:
        alg = spec.algebra()
    except UNotInModule as exc:
        raise JobError(str(exc)) from None
    except ValueError as exc:
        raise JobError(str(exc)) from None

    try:
        if cmd == "hsl":
            caveats = [CAVEAT_CM]
            if alg.u_override is not None:
                uu = alg.u_override
                caveats.append(CAVEAT_OVERRIDE)
            else:
                gens = frobenius_module_generators(alg, 1)
                if not gens:
                    raise CoverIncomplete([], [])
                uu = gens[0]
                if len(gens) > 1:
                    caveats.append("U_(1) needs several generators; the chain uses the first "
                                   "and is valid only on its chart")
            chain = hsl_chain(alg, uu, bound, check_u=False)
            report["chain"] = _chain_dict(chain, strata_ideals(chain))
            report["caveats"] = caveats
            if chain.stab is None:
                report["status"] = "no_stabilization"
                return report, EXIT_BOUND
            return report, EXIT_OK

        strat = stratify(alg, bound, threads=threads)
        _strat_dict(report, strat)
        code = EXIT_OK if strat.status == "ok" else EXIT_BOUND
        if cmd == "finjective":
            Z0 = strat.merged[0] if strat.merged else Ideal.unit(ctx)
            report["result"] = _ideal(Z0)
        elif cmd == "localhsl":
            if not prime:
                raise JobError("localhsl requires --prime")
            try:
                P = Ideal(ctx, [ctx.parse(t) for t in prime.split(",") if t.strip()])
            except PolynomialSyntaxError as exc:
                raise JobError(f"--prime: {exc}") from None
            if P.is_unit():
                raise JobError("--prime must be a proper ideal")
            report["prime"] = _ideal(P)
            report["result"] = local_hsl(strat, P)
        return report, code
    except CoverIncomplete as exc:
        report["status"] = "cover_incomplete"
        report["generators"] = [str(g) for g in exc.generators]
        report["cover"] = [{"g": str(g), "m": _ideal(m)} for g, m in exc.cover]
        report["caveats"] = [CAVEAT_CM]
        return report, EXIT_COVER


def _fmt(ideal_list):
    return "(" + ", ".join(ideal_list) + ")"


def render_text(report: dict) -> str:
    out = [f"frobroot {report['command']}", f"status: {report['status']}"]
    out.append(f"ring: F_{report['p']}[{', '.join(report['vars'])}] ({report['order']})")
    out.append(f"J: {_fmt(report['J'])}")
    omega = report["omega"]
    out.append(f"omega: {omega if omega == 'gorenstein' else _fmt(omega)}")
    cmd = report["command"]
    if cmd == "gb":
        out.append(f"GB(J): {_fmt(report['result'])}")
    elif cmd == "ie":
        out.append(f"I_{report['e']}(J): {_fmt(report['result'])}")
    elif cmd == "colon":
        out.append(f"(J : omega): {_fmt(report['result'])}")
    elif cmd == "intersect":
        out.append(f"J cap omega: {_fmt(report['result'])}")
    if "chain" in report:
        ch = report["chain"]
        out.append(f"u: {ch['u']}")
        out.append(f"stab: {ch['stab'] if ch['stab'] is not None else 'none'}")
        for e, L in enumerate(ch["L"]):
            out.append(f"L_{e}: {_fmt(L)}")
        for e, K in enumerate(ch["K"]):
            out.append(f"K_{e}: {_fmt(K)}")
    if "generators" in report:
        out.append("Frobenius module generators: " + ", ".join(report["generators"]))
        for i, c in enumerate(report["cover"], start=1):
            out.append(f"m_{i}: {_fmt(c['m'])}")
    if "charts" in report:
        for i, c in enumerate(report["charts"], start=1):
            out.append(f"chart {i}:")
            out.append(f"  g: {c['g']}")
            out.append(f"  m: {_fmt(c['m'])}")
            out.append(f"  stab: {c['stab'] if c['stab'] is not None else 'none'}")
            for e, L in enumerate(c["L"]):
                out.append(f"  L_{e}: {_fmt(L)}")
            for e, K in enumerate(c["K"]):
                out.append(f"  K_{e}: {_fmt(K)}")
        out.append("merged:")
        for e, Z in enumerate(report["merged"]):
            out.append(f"  Z_{e}: {_fmt(Z)}")
        gb = report["global_bound"]
        out.append(f"global_bound: {gb if gb is not None else 'none'}")
    if cmd == "finjective" and "result" in report:
        Z = report["result"]
        if Z == ["1"]:
            out.append("F-injective everywhere")
        else:
            out.append(f"non-F-injective locus: V{_fmt(Z)}")
    if cmd == "localhsl" and "result" in report:
        out.append(f"prime: {_fmt(report['prime'])}")
        r = report["result"]
        out.append(f"HSL = {r if r is not None else 'unknown (bound hit)'}")
    if report.get("caveats"):
        out.append("caveats:")
        out.extend(f"  - {c}" for c in report["caveats"])
    return "\n".join(out) + "\n"


def render_json(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


def _threads():
    try:
        return max(1, int(os.environ.get("FROBROOT_THREADS", "1")))
    except ValueError:
        return 1


def build_parser():
    ap = argparse.ArgumentParser(prog="frobroot", description="HSL numbers and F-injective loci over F_p")
    ap.add_argument("cmd", choices=COMMANDS)
    ap.add_argument("file", help="job file ('-' reads standard input)")
    ap.add_argument("--json", action="store_true", help="emit JSON instead of text")
    ap.add_argument("--max-e", type=int, default=None, dest="max_e")
    ap.add_argument("--e", type=int, default=1)
    ap.add_argument("--prime", default=None, help='generators of a prime, e.g. "x,y,z"')
    ap.add_argument("--u", default=None, help="explicit Frobenius generator u")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.file == "-":
            spec = load_jobspec(sys.stdin.read(), inline=True, name="<stdin>")
        else:
            if not os.path.isfile(args.file):
                raise JobError("cannot read job file", 0, 0, args.file)
            spec = load_jobspec(args.file, inline=False)
        if args.max_e is not None and args.max_e < 1:
            raise JobError("--max-e must be >= 1")
        report, code = run_command(args.cmd, spec, e=args.e, prime=args.prime, u=args.u,
                                   max_e=args.max_e, threads=_threads())
    except JobError as exc:
        print(f"frobroot: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (AssertionError, RecursionError) as exc:
        print(f"frobroot: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    sys.stdout.write(render_json(report) if args.json else render_text(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
