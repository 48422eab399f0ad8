import logging

from rich.console import Console

from . import config, constants, render
from .errors import ParseError
from .kpoly import FAMILY_METHODS, Family, GrothendieckSpec, G_bialternant, Method, build
from .pieri import expand_sG, expand_sg, pieri_e_g, pieri_h_g
from .symfunc import Basis, evaluate, to_basis
from .utils import parse_shape
from .verify import collect_checks, run_checks

logger = logging.getLogger(__name__)

POLY = "poly"
BASIS_CHOICES = [b.value for b in Basis] + [POLY]
EXPAND_OPERATIONS = ("sG", "sg", "pieri-e", "pieri-h")


def _emit(console: Console, text: str):
    console.out(text, highlight=False)


def cmd_compute(args, console: Console) -> int:
    """Builds G_lam or g_lam by one route and prints it."""
    family = Family(args.family)
    shape = parse_shape(args.shape)
    method = Method(args.method) if args.method else FAMILY_METHODS[family][0]
    caps = config.resolve_caps(shape, args.vars, args.degree)
    spec = GrothendieckSpec(shape, method, caps, family, rows=args.rows)
    basis = args.basis or (POLY if method is Method.BIALTERNANT else Basis.COMPLETE_H.value)

    if basis == POLY and args.format != "json":
        if method is Method.BIALTERNANT:
            poly = G_bialternant(shape, caps.n_vars, caps.max_degree)
        else:
            poly = evaluate(build(spec))
        _emit(console, render.poly_text(poly, latex=args.format == "latex"))
        return constants.EXIT_OK

    element = build(spec)
    element = to_basis(element, Basis.MONOMIAL if basis == POLY else Basis(basis))
    if args.format == "json":
        doc = render.element_document(element, family.value, shape, method.value)
        _emit(console, render.render_json(doc))
    else:
        _emit(console, render.element_text(element, latex=args.format == "latex"))
    return constants.EXIT_OK


def cmd_expand(args, console: Console) -> int:
    """Runs one of the operator expansions and prints the partition combination."""
    if args.operation in ("sG", "sg"):
        lam, mu = parse_shape(args.s), parse_shape(args.mu)
        if args.operation == "sG":
            rows = args.rows if args.rows is not None else max(lam.length, mu.length, 1)
            value, family = expand_sG(lam, mu, rows), "G"
            arguments = {"s": list(lam), "mu": list(mu), "rows": rows}
        else:
            rows = args.rows if args.rows is not None else max(mu.length, 1)
            extra = args.extra if args.extra is not None else max(lam.length, 1)
            value, family = expand_sg(lam, mu, rows, extra), "g"
            arguments = {"s": list(lam), "mu": list(mu), "rows": rows, "extra": extra}
    else:
        if args.i is None or args.i < 0:
            raise ParseError("--i must be a non-negative integer")
        lam = parse_shape(args.shape)
        series = (pieri_e_g if args.operation == "pieri-e" else pieri_h_g)(args.i, lam)
        value, family = (series if args.series else series[args.i]), "g"
        arguments = {"i": args.i, "shape": list(lam)}

    latex = args.format == "latex"
    if args.format == "json":
        _emit(console, render.render_json(render.combo_document(value, family, args.operation, arguments)))
    elif isinstance(value, list):
        _emit(console, render.series_text(value, family, latex))
    else:
        _emit(console, render.combo_text(value, family, latex))
    return constants.EXIT_OK


def cmd_verify(args, console: Console) -> int:
    """Runs a verification suite; exit code 0 only if every check passes."""
    checks = collect_checks(args.suite, args.max_weight, args.seed)
    logger.debug("running %d checks on %d workers", len(checks), args.workers)
    results = run_checks(checks, args.workers)
    for line in render.report_lines(results):
        _emit(console, line)
    console.print(render.report_summary(results))
    return constants.EXIT_OK if all(r.passed for r in results) else constants.EXIT_FAILURE


def cmd_defaults(args, console: Console) -> int:
    """Shows, saves or clears the default truncation caps."""
    if args.reset:
        if config.reset_conf():
            console.print("[bold green]✅ Saved defaults removed.[/]")
        else:
            console.print("[yellow]⚠️ No saved defaults to remove.[/]")
        return constants.EXIT_OK
    if args.set:
        caps = config.parse_caps(args.set)
        config.save_conf(caps)
        console.print(f"[bold green]✅ Saved default caps {caps}.[/]")
        return constants.EXIT_OK

    override = config.caps_override()
    saved = config.load_conf()
    if override:
        console.print(f"[cyan]Default caps {override}[/] (from {constants.CAPS_ENV_VAR})")
    elif saved:
        console.print(f"[cyan]Default caps {saved}[/] (from {constants.CONF_FILE})")
    else:
        console.print(
            f"[cyan]Default caps follow the shape:[/] n = max({constants.MIN_DEFAULT_VARS}, |lam| + {constants.VAR_SLACK}), "
            f"D = |lam| + {constants.DEGREE_SLACK}"
        )
    return constants.EXIT_OK
