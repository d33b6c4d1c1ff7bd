"""Command-line entry point and the plain-text ideal file format.

An ideal file looks like::

    # comment
    ring 32003 3
    ideal x0^2, x1^2, x2^6

The generator list may continue over several lines.  Coefficients are
integers, monomials are ``*``-separated or juxtaposed powers.
"""

import argparse
import bisect
import json
import re
import sys
from fractions import Fraction

from .ring import DEFAULT_PRIME, Ring, is_prime

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_DEGENERATE = 0, 1, 2, 3
SCHEMA = 1
_JSON_SAFE = 2 ** 53


class ParseError(ValueError):
    def __init__(self, message, line=None, col=None):
        self.message, self.line, self.col = message, line, col
        where = "line %d, column %d: " % (line, col) if line is not None else ""
        super().__init__(where + message)


# ---------------------------------------------------------------------------
# polynomial syntax

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_]*\d*)|(\^)|(\*)|(\+)|(-)|(,)|(\S))")


def _tokens(text, start=0, end=None):
    """Yield (kind, value, offset); kinds: int, name, ^, *, +, -, ",", bad."""
    end = len(text) if end is None else end
    pos = start
    kinds = ("int", "name", "^", "*", "+", "-", ",", "bad")
    while pos < end:
        m = _TOKEN.match(text, pos, end)
        if not m or m.end() == pos:
            break
        for kind, val in zip(kinds, m.groups()):
            if val is not None:
                yield kind, val, m.start(m.lastindex)
                break
        pos = m.end()


class _Locator:
    def __init__(self, text, line_offset=0, col_offset=0):
        self.starts = [0] + [i + 1 for i, ch in enumerate(text) if ch == "\n"]
        self.line_offset, self.col_offset = line_offset, col_offset

    def __call__(self, offset):
        row = bisect.bisect_right(self.starts, offset) - 1
        col = offset - self.starts[row] + 1
        if row == 0:
            col += self.col_offset
        return row + 1 + self.line_offset, col


class _Parser:
    def __init__(self, text, ring, locate, start=0):
        self.toks = list(_tokens(text, start))
        self.i = 0
        self.ring = ring
        self.locate = locate
        self.index = {name: k for k, name in enumerate(ring.names)}
        self.end = len(text)

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None, self.end)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def fail(self, message, offset):
        raise ParseError(message, *self.locate(offset))

    def polynomial(self):
        """sum := [sign] term ((+|-) term)*, stopping at ',' or end."""
        ring = self.ring
        p = ring.prime
        coeffs = {}
        kind, val, off = self.peek()
        if kind in (None, ","):
            self.fail("expected a polynomial", off)
        sign = 1
        if kind in ("+", "-"):
            self.take()
            sign = -1 if kind == "-" else 1
        while True:
            c, exp = self.term()
            c = (sign * c) % p
            if c:
                v = (coeffs.get(exp, 0) + c) % p
                if v:
                    coeffs[exp] = v
                else:
                    coeffs.pop(exp, None)
            kind, val, off = self.peek()
            if kind in ("+", "-"):
                self.take()
                sign = -1 if kind == "-" else 1
                continue
            if kind in (None, ","):
                return ring.from_dict(coeffs), off
            self.fail("unexpected %r" % val, off)

    def term(self):
        coeff = 1
        exp = [0] * self.ring.nvars
        seen = False
        while True:
            kind, val, off = self.peek()
            if kind == "int":
                self.take()
                coeff *= int(val)
            elif kind == "name":
                self.take()
                if val not in self.index:
                    self.fail("unknown variable %r" % val, off)
                power = 1
                if self.peek()[0] == "^":
                    self.take()
                    k2, v2, o2 = self.take()
                    if k2 != "int":
                        self.fail("expected an exponent after '^'", o2)
                    power = int(v2)
                exp[self.index[val]] += power
            elif kind == "bad":
                self.fail("unexpected character %r" % val, off)
            else:
                if not seen:
                    self.fail("expected a term", off)
                return coeff, tuple(exp)
            seen = True
            if self.peek()[0] == "*":
                self.take()
                if self.peek()[0] not in ("int", "name"):
                    self.fail("expected a factor after '*'", self.peek()[2])


def parse_polynomial(text, ring):
    """Parse one polynomial in the ring's variable names."""
    parser = _Parser(text, ring, _Locator(text))
    f, off = parser.polynomial()
    if parser.peek()[0] is not None:
        parser.fail("unexpected ','", off)
    return f


def parse_ideal_file(text):
    """Parse an ideal file into (prime, nvars, generators)."""
    # blank out comments but keep every column in place
    clean = re.sub(r"#[^\n]*", lambda m: " " * len(m.group()), text)
    locate = _Locator(clean)
    ring = None
    for m in re.finditer(r"^[ \t]*(\S+)([^\n]*)$", clean, re.M):
        word, rest = m.group(1), m.group(2)
        line, col = locate(m.start(1))
        if ring is None:
            if word != "ring":
                raise ParseError("expected 'ring <prime> <nvars>'", line, col)
            fields = rest.split()
            if len(fields) != 2 or not all(f.isdigit() for f in fields):
                raise ParseError("expected 'ring <prime> <nvars>'", line, col)
            p, n = int(fields[0]), int(fields[1])
            pcol = locate(m.start(2) + rest.index(fields[0]))
            if not is_prime(p):
                raise ParseError("%d is not prime" % p, *pcol)
            if n < 1:
                raise ParseError("need at least one variable", line, col)
            ring = Ring(n, p)
            continue
        if word != "ideal":
            raise ParseError("expected 'ideal <generators>'", line, col)
        parser = _Parser(clean, ring, locate, start=m.end(1))
        gens = []
        while True:
            kind, _, off = parser.peek()
            f, end = parser.polynomial()
            if not f.is_homogeneous():
                raise ParseError("generator %s is not homogeneous" % f, *locate(off))
            gens.append(f)
            if parser.peek()[0] is None:
                break
            parser.take()
        return ring.prime, ring.nvars, gens
    if ring is None:
        raise ParseError("empty input: expected 'ring <prime> <nvars>'", 1, 1)
    raise ParseError("missing 'ideal' line", len(locate.starts), 1)


# ---------------------------------------------------------------------------
# Betti tables


def render_betti(diagram):
    """Header of column totals, then one row per r = j - i with '--' for zeros."""
    totals = diagram.totals()
    width = len(totals)
    lines = [" ".join(str(t) for t in totals)]
    strata = diagram.strata()
    if not strata:
        return lines[0]
    rows = [r for r, _ in strata]
    for r in range(min(0, min(rows)), max(rows) + 1):
        lines.append(" ".join(str(strata.get((r, i), "--")) for i in range(width)))
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# output helpers


def _safe(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, float)):
        return obj
    if isinstance(obj, int):
        return str(obj) if abs(obj) > _JSON_SAFE else obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_safe(v) for v in obj]
    if hasattr(obj, "to_dict"):
        return _safe(obj.to_dict())
    return str(obj)


class _Out:
    def __init__(self, as_json, command):
        self.as_json = as_json
        self.payload = {"schema": SCHEMA, "command": command}
        self.lines = []

    def text(self, line=""):
        self.lines.append(line)

    def put(self, key, value):
        self.payload[key] = value

    def emit(self, stream, status):
        if self.as_json:
            self.payload["exit_status"] = status
            stream.write(json.dumps(_safe(self.payload), indent=2) + "\n")
        elif self.lines:
            stream.write("\n".join(self.lines) + "\n")
        return status


def _load_ideal(path):
    from .groebner import Ideal

    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    prime, nvars, gens = parse_ideal_file(text)
    ring = gens[0].ring if gens else Ring(nvars, prime)
    return Ideal(gens, ring)


def _range(text):
    m = re.fullmatch(r"\s*(\d+)\s*(?:\.\.\s*(\d+))?\s*", text)
    if not m:
        raise argparse.ArgumentTypeError("expected A..B or A, got %r" % text)
    a = int(m.group(1))
    b = int(m.group(2)) if m.group(2) else a
    if b < a:
        raise argparse.ArgumentTypeError("empty range %r" % text)
    return a, b


def _degrees(text):
    try:
        out = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma-separated integers, got %r" % text)
    return out


# ---------------------------------------------------------------------------
# commands


def cmd_gb(args, out):
    I = _load_ideal(args.file)
    G = I.gb()
    out.put("ring", {"prime": I.ring.prime, "nvars": I.nvars})
    out.put("gb", [str(g) for g in G])
    for g in G:
        out.text(str(g))
    return EXIT_OK


def _resolution(I, minimal=True):
    from .resolution import free_resolution, minimalize

    res = free_resolution(I)
    return minimalize(res) if minimal else res


def _describe_modules(res):
    parts = []
    for i in range(res.length + 1):
        shifts = res.shifts(i)
        counts = {}
        for s in shifts:
            counts[s] = counts.get(s, 0) + 1
        body = " + ".join(
            ("R(-%d)" % s if s else "R") + ("^%d" % k if k > 1 else "")
            for s, k in sorted(counts.items())
        )
        parts.append(body or "0")
    return " <- ".join(parts)


def cmd_res(args, out):
    from .resolution import betti

    I = _load_ideal(args.file)
    res = _resolution(I, minimal=not args.nonminimal)
    diag = betti(res)
    out.put("minimal", not args.nonminimal)
    out.put("modules", [res.shifts(i) for i in range(res.length + 1)])
    out.put("betti", diag.to_json())
    out.put("is_complex", res.is_complex())
    out.text(_describe_modules(res))
    out.text(render_betti(diag))
    return EXIT_OK


def cmd_betti(args, out):
    from .resolution import betti

    I = _load_ideal(args.file)
    diag = betti(_resolution(I))
    out.put("betti", diag.to_json())
    out.text(render_betti(diag))
    return EXIT_OK


def cmd_degree(args, out):
    I = _load_ideal(args.file)
    h = I.hilbert()
    out.put("codim", h.codim)
    out.put("dimension", h.dimension)
    out.put("degree", h.degree)
    out.put("hilbert_numerator", h.numerator)
    out.text("codim %d" % h.codim)
    out.text("dimension %d" % h.dimension)
    out.text("degree %d" % h.degree)
    return EXIT_OK


def cmd_link(args, out):
    from .bounds import branch_checks, conjecture_verdict
    from .linkage import CIType, LinkSpec, profiles, realize
    from .resolution import betti

    ci = CIType(args.ci)
    if args.collinear_t is not None:
        spec = LinkSpec(ci, "collinear", t=args.collinear_t)
    elif args.three_points:
        spec = LinkSpec(ci, "three-points")
    else:
        spec = LinkSpec(ci, "custom", sub=args.sub_ci)
    inst = realize(spec, args.prime, args.seed)
    n = ci.n
    cone = betti(inst.cone_resolution())
    minimal = betti(inst.minimal_resolution())
    predicted = inst.predicted_diagram()
    degree = inst.degree()
    cands = profiles(spec)
    matched = [pr.scenario for pr in cands if pr.matches(minimal)]
    verdict = conjecture_verdict(minimal, degree, p=n)
    branches = [r for r in branch_checks(spec) if r.applicable]
    failed = [r for r in branches if not r.holds]

    problems = []
    if degree != spec.degree:
        problems.append("degree %d differs from predicted %d" % (degree, spec.degree))
    if cone != predicted:
        problems.append("mapping-cone diagram differs from prediction")
    if spec.kind != "custom" and not matched:
        problems.append("minimal shifts match no scenario")
    if not verdict.holds:
        problems.append("degree bound violated")
    problems += ["branch %s fails: %d > %d" % (r.label, r.lhs, r.rhs) for r in failed]

    out.put("spec", {"ci": list(ci.degrees), "kind": spec.kind, "t": spec.t,
                     "sub": list(spec.sub) if spec.sub else None})
    out.put("prime", args.prime)
    out.put("seed", args.seed)
    out.put("attempts", inst.attempts)
    out.put("I_X", [str(g) for g in inst.I_X.gens])
    out.put("I_Z", [str(g) for g in inst.I_Z.gens])
    out.put("I_Y", [str(g) for g in inst.I_Y.minimal_generators()])
    out.put("degree", degree)
    out.put("predicted_degree", spec.degree)
    out.put("nonminimal", cone.to_json())
    out.put("minimal", minimal.to_json())
    out.put("minimal_cone", inst.is_minimal_cone())
    out.put("profiles", [{"scenario": pr.scenario, "m": pr.m, "M": pr.M} for pr in cands])
    out.put("matched_scenarios", matched)
    out.put("verdict", verdict)
    out.put("branches", branches)
    out.put("problems", problems)

    out.text("X: complete intersection of type %s, Z: %s" % (ci, spec.kind))
    out.text("I_X = (%s)" % ", ".join(str(g) for g in inst.I_X.gens))
    out.text("I_Z = (%s)" % ", ".join(str(g) for g in inst.I_Z.gens))
    out.text("I_Y = (%s)" % ", ".join(out.payload["I_Y"]))
    out.text("degree %d (predicted %d)" % (degree, spec.degree))
    out.text("")
    out.text("mapping-cone resolution:")
    out.text(render_betti(cone))
    out.text("")
    out.text("minimal resolution:")
    out.text(render_betti(minimal))
    out.text("")
    out.text("m = %s, M = %s" % (minimal.mins(n), minimal.maxs(n)))
    for pr in cands:
        mark = "*" if pr.scenario in matched else " "
        out.text(" %s %-22s m = %s, M = %s" % (mark, pr.scenario, pr.m, pr.M))
    out.text("")
    out.text("bounds: %s <= %d <= %s  (%s)" % (
        verdict.lower_value, degree, verdict.upper_value, "hold" if verdict.holds else "VIOLATED"))
    out.text("case-analysis inequalities: %d applicable, %d failing" % (len(branches), len(failed)))
    for msg in problems:
        out.text("problem: " + msg)
    return EXIT_VIOLATION if problems else EXIT_OK


def _sweep_text(out, report):
    grid = report.grid
    out.text("%s: n = %d..%d, %d <= d_i <= %d" % (
        report.family, grid["n"][0], grid["n"][1], grid["dmin"], grid["dmax"]))
    out.text("tuples %d, instances %d, verdicts %d, applicable inequalities %d" % (
        report.checked, report.instances, report.verdicts, report.branches_applicable))
    if report.min_lower_slack is not None:
        s = report.min_lower_slack
        out.text("tightest lower bound: slack %s at %s t=%s (%s)" % (s[0], s[1], s[2], s[3]))
        s = report.min_upper_slack
        out.text("tightest upper bound: slack %s at %s t=%s (%s)" % (s[0], s[1], s[2], s[3]))
    for w in report.equality_witnesses[:5]:
        out.text("equality: %s at %s, %d = %d" % (w["label"], tuple(w["degrees"]), w["lhs"], w["rhs"]))
    if report.oracle:
        o = report.oracle
        out.text("oracle: %d sampled, %d agreed, %d mismatched, %d degenerate" % (
            o["sampled"], o["agreed"], o["mismatched"], len(o["degenerate"])))
    out.text("violations: %d" % len(report.violations))
    for v in report.violations:
        out.text("  %s t=%s [%s] %s" % (v.degrees, v.t, v.scenario, v.detail))
    out.text("time %.2fs" % report.wall_time)


def cmd_verify(args, out):
    from .bounds import sweep

    dmax = args.dmax if args.dmax is not None else (10 if args.family == "lemmas" else 9)
    report = sweep(args.family, args.n, dmax, oracle_density=args.oracle_density,
                   prime=args.prime, seed=args.seed)
    out.put("report", report)
    _sweep_text(out, report)
    return EXIT_OK if report.clean else EXIT_VIOLATION


def cmd_crosscheck(args, out):
    from .bounds import crosscheck

    report = crosscheck(args.family, args.n, args.dmax, density=args.density,
                        prime=args.prime, seed=args.seed)
    out.put("report", report)
    _sweep_text(out, report)
    if report.violations:
        return EXIT_VIOLATION
    if report.oracle.get("degenerate"):
        return EXIT_DEGENERATE
    return EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")

    parser = argparse.ArgumentParser(
        prog="liaison", parents=[common],
        description="Groebner bases, free resolutions and degree bounds for linked zero-schemes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name, helptext in (
        ("gb", "reduced Groebner basis (grevlex)"),
        ("betti", "minimal Betti diagram of R/I"),
        ("degree", "codimension and degree of R/I"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("file")
    p = sub.add_parser("res", parents=[common], help="free resolution of R/I")
    p.add_argument("file")
    p.add_argument("--nonminimal", action="store_true", help="keep the Schreyer resolution as computed")

    p = sub.add_parser("link", parents=[common], help="realize a link and compare with predictions")
    p.add_argument("--ci", type=_degrees, required=True, help="degrees d1,..,dn of X")
    kind = p.add_mutually_exclusive_group(required=True)
    kind.add_argument("--collinear-t", type=int, help="collinear residual of degree T")
    kind.add_argument("--three-points", action="store_true", help="three non-collinear points")
    kind.add_argument("--sub-ci", type=_degrees, help="residual complete intersection e1,..,en")
    p.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("verify", parents=[common], help="exhaustive arithmetic sweep")
    p.add_argument("family", choices=("collinear", "three-points", "lemmas", "one-point"))
    p.add_argument("--n", type=_range, default=(3, 5), help="range A..B of n")
    p.add_argument("--dmax", type=int, default=None)
    p.add_argument("--oracle-density", type=float, default=0.0,
                   help="fraction of instances also realized and resolved")
    p.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("crosscheck", parents=[common], help="oracle-only sweep on small instances")
    p.add_argument("family", choices=("collinear", "three-points", "one-point"))
    p.add_argument("--n", type=_range, default=(3, 3))
    p.add_argument("--dmax", type=int, default=3)
    p.add_argument("--density", type=float, default=1.0)
    p.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    p.add_argument("--seed", type=int, default=0)
    return parser


COMMANDS = {
    "gb": cmd_gb,
    "res": cmd_res,
    "betti": cmd_betti,
    "degree": cmd_degree,
    "link": cmd_link,
    "verify": cmd_verify,
    "crosscheck": cmd_crosscheck,
}


def run_command(argv=None, stdout=None, stderr=None):
    """Run one command; returns the exit status."""
    from .linkage import DegenerateRealization

    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    out = _Out(args.json, args.command)
    out.put("argv", list(argv) if argv is not None else sys.argv[1:])
    if getattr(args, "prime", DEFAULT_PRIME) and not is_prime(getattr(args, "prime", DEFAULT_PRIME)):
        stderr.write("error: %d is not prime\n" % args.prime)
        return EXIT_USAGE
    try:
        status = COMMANDS[args.command](args, out)
    except ParseError as exc:
        stderr.write("%s: %s\n" % (getattr(args, "file", "input"), exc))
        return EXIT_USAGE
    except DegenerateRealization as exc:
        stderr.write("error: %s\n" % exc)
        out.put("error", str(exc))
        out.put("seeds", [list(s) for s in exc.seeds])
        if args.json:
            out.emit(stdout, EXIT_DEGENERATE)
        return EXIT_DEGENERATE
    except (ValueError, OSError) as exc:
        stderr.write("error: %s\n" % exc)
        return EXIT_USAGE
    return out.emit(stdout, status)


def main():
    sys.exit(run_command())


if __name__ == "__main__":
    main()
