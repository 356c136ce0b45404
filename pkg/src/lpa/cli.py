"""``lpa`` command line: one subcommand per library operation, JSON on stdout.

Exit status: 0 ok, 2 bad input (syntax, unknown names, malformed files),
3 precondition violated, 4 internal consistency check failed.
"""

from __future__ import annotations

import argparse
import json
import sys

from .algebra import LeavittPathAlgebra
from .division import (
    ann_U_membership,
    cstar_nilpotence_index,
    divide,
    g_representation,
    in_ideal_power,
)
from .errors import (
    FieldMismatchError,
    LpaError,
    NoSolutionError,
    NotInvertibleError,
    ParseError,
    PreconditionError,
)
from .fields import field_from_spec
from .graph import enumerate_Ac, load_graph
from .morita import reduce_to_source_loop
from .parser import parse_path
from .prufer import classify_injectivity, prufer_module, shift_iso
from .series import TruncatedPowerSeries

PRECONDITION = (PreconditionError, NoSolutionError, NotInvertibleError, FieldMismatchError)


class Request:
    """Parsed arguments plus the lazily built graph, field, algebra and cycle."""

    def __init__(self, args):
        self.args = args
        self.graph = load_graph(args.graph)
        self.field = field_from_spec(args.field)
        self.algebra = LeavittPathAlgebra(self.graph, self.field, parse_special(args.special_edges))

    @property
    def cycle(self):
        if not self.args.cycle:
            raise PreconditionError("this command needs --cycle")
        return parse_path(self.graph, self.args.cycle)

    def exprs(self, count=None):
        texts = self.args.expr or []
        if count is not None and len(texts) != count:
            raise PreconditionError(f"expected {count} --expr argument(s), got {len(texts)}")
        return [self.algebra.parse(t) for t in texts]

    def expr(self):
        return self.exprs(1)[0]

    def level(self):
        if self.args.level is None:
            raise PreconditionError("this command needs --level")
        return self.args.level

    def prufer(self):
        return prufer_module(self.algebra, self.cycle)

    def element(self):
        """The Pruefer element from --element (coefficient list) or --alpha."""
        P = self.prufer()
        if self.args.alpha is not None:
            return P.alpha(self.args.alpha)
        if self.args.element is None:
            raise PreconditionError("this command needs --element or --alpha")
        coeffs = _json_list(self.args.element, "--element")
        if not coeffs:
            raise PreconditionError("--element needs at least one coefficient")
        return P.from_coefficients([self.algebra.parse(str(g)) for g in coeffs])

    def series(self):
        if self.args.series is None:
            raise PreconditionError("this command needs --series")
        coeffs = [self.field.parse(str(h)) for h in _json_list(self.args.series, "--series")]
        order = self.args.level if self.args.level is not None else None
        return TruncatedPowerSeries(coeffs, order, self.field)


def _json_list(text, flag):
    try:
        value = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{flag}: {exc.msg}", exc.pos) from None
    if not isinstance(value, list):
        raise ParseError(f"{flag} must be a JSON list", 0)
    return value


def parse_special(text):
    """``"v=d,w=h"`` -> ``{"v": "d", "w": "h"}``."""
    if not text:
        return None
    out = {}
    for item in text.split(","):
        v, sep, e = item.partition("=")
        if not sep or not v.strip() or not e.strip():
            raise ParseError(f"bad --special-edges item {item!r}", text.find(item))
        out[v.strip()] = e.strip()
    return out


# -- commands ---------------------------------------------------------------

def cmd_normalize(req):
    return str(req.expr())


def cmd_mul(req):
    xs = req.exprs()
    if not xs:
        raise PreconditionError("mul needs at least one --expr")
    out = xs[0]
    for x in xs[1:]:
        out = out * x
    return str(out)


def cmd_star(req):
    return str(req.expr().star())


def cmd_divide(req):
    x, c = req.expr(), req.cycle
    res = divide(x, c)
    return {"quotient": str(res.quotient), "remainder": str(res.remainder), "check": "ok"}


def cmd_grep(req):
    return [str(g) for g in g_representation(req.expr(), req.cycle, req.level())]


def cmd_ideal_member(req):
    return in_ideal_power(req.expr(), req.cycle, req.level())


def cmd_ann_member(req):
    return ann_U_membership(req.expr(), req.cycle)


def cmd_cstar_index(req):
    return cstar_nilpotence_index(req.expr(), req.cycle)


def cmd_ac(req):
    max_len = req.args.max_len if req.args.max_len is not None else 3
    return [str(p) for p in enumerate_Ac(req.graph, req.cycle, max_len)]


def cmd_classify(req):
    return classify_injectivity(req.graph, req.cycle)


def cmd_prufer_act(req):
    P = req.prufer()
    return P.act(req.expr(), req.element()).to_json()


def cmd_prufer_level(req):
    return req.element().level


def cmd_prufer_endo(req):
    P = req.prufer()
    return P.endo_apply(req.series(), req.element()).to_json()


def cmd_prufer_solve(req):
    P = req.prufer()
    return P.solve_divisibility(req.expr(), req.element()).to_json()


def cmd_shift_iso(req):
    a = req.args
    if a.shift is None:
        raise PreconditionError("shift-iso needs --shift")
    m = req.level()
    phi = shift_iso(req.algebra, req.cycle, a.shift, m, a.direction)
    out = {
        "source_cycle": str(phi.source.c),
        "target_cycle": str(phi.target.c),
        "image_of_one": str(phi.image),
    }
    if a.element is not None:
        coeffs = [req.algebra.parse(str(g)) for g in _json_list(a.element, "--element")]
        u = phi.source.make_element(
            sum((x * phi.source._divider.c_minus_one ** t for t, x in enumerate(coeffs)), req.algebra.zero()),
            m,
        )
        out["element"] = u.to_json()
        out["image"] = phi(u).to_json()
    return out


def cmd_reduce(req):
    c = req.cycle
    red = reduce_to_source_loop(req.graph, c, req.field, parse_special(req.args.special_edges))
    theta = red.theta(req.algebra)
    return {
        "steps": red.steps,
        "final_graph": red.graph.to_dict(),
        "loop": str(red.loop),
        "generator_map": theta.to_json(),
    }


COMMANDS = {
    "normalize": (cmd_normalize, "normal form of --expr"),
    "mul": (cmd_mul, "product of the --expr arguments, left to right"),
    "star": (cmd_star, "involution of --expr"),
    "divide": (cmd_divide, "quotient and remainder of --expr by c - 1"),
    "grep": (cmd_grep, "G-representation of --expr at --level"),
    "ideal-member": (cmd_ideal_member, "is --expr in L(c-1)^level"),
    "ann-member": (cmd_ann_member, "does --expr annihilate U (source loop)"),
    "cstar-index": (cmd_cstar_index, "least n with (c*)^n x = 0 (source loop)"),
    "ac": (cmd_ac, "the paths A_c up to --max-len"),
    "classify": (cmd_classify, "injectivity verdict for U"),
    "prufer-act": (cmd_prufer_act, "act by --expr on a Pruefer element"),
    "prufer-level": (cmd_prufer_level, "submodule level of a Pruefer element"),
    "prufer-endo": (cmd_prufer_endo, "apply the endomorphism given by --series"),
    "prufer-solve": (cmd_prufer_solve, "solve --expr . X = element"),
    "shift-iso": (cmd_shift_iso, "isomorphism between M_m for two rotations of c"),
    "reduce": (cmd_reduce, "Morita reduction of c to a source loop"),
}

PRUFER_ACTIONS = {"act": "prufer-act", "level": "prufer-level", "endo": "prufer-endo",
                  "solve": "prufer-solve", "classify": "classify"}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--graph", required=True, help="graph JSON file or fixture name")
    common.add_argument("--field", default="QQ", help="QQ or gf:p")
    common.add_argument("--cycle", help="closed path, e.g. e1.e2")
    common.add_argument("--expr", action="append", help="element expression (repeatable)")
    common.add_argument("--level", type=int)
    common.add_argument("--max-len", type=int)
    common.add_argument("--special-edges", help="v=e,... overrides")
    common.add_argument("--element", help="JSON list of G-coefficients")
    common.add_argument("--alpha", type=int, help="use the generator alpha_i")
    common.add_argument("--series", help="JSON list of series coefficients")
    common.add_argument("--shift", type=int, help="rotation index l")
    common.add_argument("--direction", default="forward", choices=["forward", "backward"])

    parser = argparse.ArgumentParser(prog="lpa", description="Leavitt path algebra calculator")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=help_text)
    return parser


def run(argv=None, out=sys.stdout, err=sys.stderr) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if len(argv) >= 2 and argv[0] == "prufer" and argv[1] in PRUFER_ACTIONS:
        argv = [PRUFER_ACTIONS[argv[1]]] + argv[2:]
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    handler = COMMANDS[args.command][0]
    try:
        result = handler(Request(args))
    except PRECONDITION as exc:
        print(f"lpa: {exc}", file=err)
        return 3
    except LpaError as exc:
        print(f"lpa: {exc}", file=err)
        return 2
    except AssertionError as exc:
        print(f"lpa: internal check failed: {exc}", file=err)
        return 4
    print(json.dumps(result, ensure_ascii=False), file=out)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
