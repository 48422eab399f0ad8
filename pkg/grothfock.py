#!/usr/bin/env python3
"""grothfock – Grothendieck polynomials and their duals, exactly, from the terminal
"""
import argparse
import logging
import sys

from rich.console import Console
from rich.text import Text

from grothfock_lib import commands, constants, render, verify
from grothfock_lib.constants import VERSION
from grothfock_lib.errors import GrothError
from grothfock_lib.kpoly import Method
from grothfock_lib.utils import setup_logging

console = Console()
logger = logging.getLogger("grothfock")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="grothfock – Grothendieck polynomials G_lam and dual polynomials g_lam.",
        formatter_class=argparse.RawTextHelpFormatter
    )
    parser.add_argument('--verbose', '-v', action='store_true', help='Log engine decisions to stderr.')

    subparsers = parser.add_subparsers(dest='command', help='Available commands')

    compute_parser = subparsers.add_parser('compute', help='Build G_lam or g_lam by one route.')
    compute_parser.add_argument('family', choices=['G', 'g'], help='G for Grothendieck, g for the dual family.')
    compute_parser.add_argument('--shape', default='', help='Partition as "2,1"; "" is the empty partition.')
    compute_parser.add_argument('--method', choices=[m.value for m in Method],
                                help='Construction route (default: bialternant for G, determinant for g).')
    compute_parser.add_argument('--rows', type=int, help='Determinant size / number of fermions.')
    compute_parser.add_argument('--vars', type=int, help='Number of variables n.')
    compute_parser.add_argument('--degree', type=int, help='Degree cap D.')
    compute_parser.add_argument('--basis', choices=commands.BASIS_CHOICES,
                                help='Output basis; "poly" prints the n-variable polynomial.')
    compute_parser.add_argument('--format', choices=render.FORMATS, default='text')

    expand_parser = subparsers.add_parser('expand', help='Expand products in the G or g basis.')
    expand_parser.add_argument('operation', choices=commands.EXPAND_OPERATIONS,
                               help='sG: s_lam G_mu\nsg: s_lam(-b, ..., x) g_mu\npieri-e: e_i g_lam\npieri-h: h_i g_lam')
    expand_parser.add_argument('--s', default='', help='Schur shape lam for sG and sg.')
    expand_parser.add_argument('--mu', default='', help='Shape mu for sG and sg.')
    expand_parser.add_argument('--rows', type=int, help='Rank r (sG: variables, sg: rows of mu).')
    expand_parser.add_argument('--extra', type=int, help='Rank s for sg.')
    expand_parser.add_argument('--i', type=int, default=1, help='Degree i for pieri-e and pieri-h.')
    expand_parser.add_argument('--shape', default='', help='Shape lam for pieri-e and pieri-h.')
    expand_parser.add_argument('--series', action='store_true', help='Print every power of t up to i.')
    expand_parser.add_argument('--format', choices=render.FORMATS, default='text')

    verify_parser = subparsers.add_parser('verify', help='Run verification suites.')
    verify_parser.add_argument('--suite', default='all', help=f"One of: {', '.join(verify.suite_names())}.")
    verify_parser.add_argument('--max-weight', type=int, help='Override the suite weight bound.')
    verify_parser.add_argument('--seed', type=int, default=constants.DEFAULT_SEED)
    verify_parser.add_argument('--workers', type=int, default=constants.DEFAULT_WORKERS)

    defaults_parser = subparsers.add_parser('defaults', help='Show, save or clear the default caps.')
    group = defaults_parser.add_mutually_exclusive_group()
    group.add_argument('--set', metavar='n,D', help='Save default caps.')
    group.add_argument('--reset', action='store_true', help='Remove saved default caps.')

    subparsers.add_parser('version', help='Show version info.')
    return parser


def main(argv=None) -> int:
    """Main entry point: parses arguments and runs the chosen command."""
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.verbose)

    if args.command == 'version':
        console.print(f"[cyan]grothfock v{VERSION}[/]")
        return constants.EXIT_OK

    if args.command is None:
        parser.print_help()
        return constants.EXIT_PARSE

    handlers = {
        'compute': commands.cmd_compute,
        'expand': commands.cmd_expand,
        'verify': commands.cmd_verify,
        'defaults': commands.cmd_defaults,
    }
    try:
        return handlers[args.command](args, console)
    except GrothError as e:
        logger.debug("command failed", exc_info=True)
        Console(stderr=True).print(Text.assemble(("Error: ", "bold red"), str(e)))
        return e.exit_code


if __name__ == "__main__":
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        console.print("\n[yellow]Interrupted.[/]")
        sys.exit(constants.EXIT_FAILURE)
