"""Command line entry point: ``qfano <subcommand> ...``."""
from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction

from .ledger import LedgerError, LinkLedger, parse_chain, verify_paper_chain
from .orbifold_rr import (InconsistentCandidate, NumericalFano, chi, genus, hilbert_coeffs)
from .search import SearchConfig, SearchInconsistency, search
from .singularities import parse_basket
from .wps import (format_fano_invariants, format_series, gorenstein_symmetry_check,
                  parse_format, poly_str, series_coeffs, wps_invariants)

log = logging.getLogger("qfano")

EXAMPLE_FORMAT = "pfm:1,1,2,2/1,2,2/2,2/3@1,1,1,1,2,2,3"


def _weights(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace("(", "").replace(")", "").split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad weight list {text!r}")


def cmd_search(args) -> int:
    config = SearchConfig(q=args.q, emit_series_to=args.terms, genus_min=args.genus_min,
                          partitions=args.partitions)
    records = search(config)
    out = open(args.out, "w") if args.out else sys.stdout
    try:
        for rec in records:
            out.write(rec.to_json() + "\n")
    finally:
        if args.out:
            out.close()
    log.info("q = %d: %d records", args.q, len(records))
    return 0


def cmd_hilbert(args) -> int:
    nf = NumericalFano(args.q, Fraction(args.A3), parse_basket(args.basket))
    print(hilbert_coeffs(nf, args.terms))
    return 0


def cmd_wps(args) -> int:
    q, A3, basket = wps_invariants(args.weights)
    print(f"q = {q}")
    print(f"A3 = {A3}")
    print(f"basket = {basket}")
    print(f"KC2 = {24 - basket.contribution_sum}")
    return 0


def cmd_format(args) -> int:
    f = parse_format(args.spec)
    s = format_series(f)
    print(f"format = {f}")
    print(f"numerator = {poly_str(s.numerator)}")
    print(f"weights = {list(s.denominator_weights)}")
    print(f"k_adj = {f.k_adj}, codim = {f.codim}")
    sym = gorenstein_symmetry_check(s, f.k_adj, f.codim)
    print(f"gorenstein_symmetry = {'pass' if sym else 'FAIL'}")
    if f.dimension == 3:
        q, A3 = format_fano_invariants(f)
        print(f"q = {q}, A3 = {A3}")
    print("coefficients = " + str(series_coeffs(s, args.terms)))
    return 0


def cmd_ledger(args) -> int:
    ledger = LinkLedger(Fraction(args.start), parse_chain(args.chain))
    print(", ".join(map(str, ledger.degrees)))
    return 0


def verify_example(out=None) -> bool:
    out = out or sys.stdout
    ok = True

    def report(name, passed):
        nonlocal ok
        ok &= passed
        print(f"{'PASS' if passed else 'FAIL'}  {name}", file=out)

    chain = verify_paper_chain()
    print("trace: " + ", ".join(map(str, chain.trace)), file=out)
    for name, passed in chain.checks:
        report(name, passed)

    X = NumericalFano(2, Fraction(10, 3), parse_basket("3,1,1"))
    g = genus(X)
    print(f"g = {g}", file=out)
    report("h0(A) = 5", chi(X, 1) == 5)
    report("chi(-A) = 0", chi(X, -1) == 0)
    report("genus 14", g == 14)

    f = parse_format(EXAMPLE_FORMAT)
    s = format_series(f)
    print(f"Pfaffian numerator: {poly_str(s.numerator)}", file=out)
    report("Pfaffian numerator is Gorenstein symmetric", gorenstein_symmetry_check(s, f.k_adj, f.codim))
    q, A3 = format_fano_invariants(f)
    report("Pfaffian format has q = 2, A^3 = 7/3", (q, A3) == (2, Fraction(7, 3)))
    Y = NumericalFano(q, A3, parse_basket("1*1/3(1,2,2)"))
    report("Pfaffian series = RR series to order 40",
           series_coeffs(s, 40) == hilbert_coeffs(Y, 40))
    return ok


def cmd_verify(args) -> int:
    return 0 if verify_example() else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qfano", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("search", help="candidate search for one Fano index, JSONL output")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--genus-min", type=int, default=None, help="keep records with genus >= this")
    s.add_argument("--terms", type=int, default=10, help="emit h0(mA) for m = 0..terms")
    s.add_argument("--out", default=None, help="output path (default stdout)")
    s.add_argument("--partitions", type=int, default=1,
                   help="split the basket stream; workers capped by QFANO_THREADS")
    s.set_defaults(func=cmd_search)

    h = sub.add_parser("hilbert", help="h0(mA) by orbifold Riemann-Roch")
    h.add_argument("--q", type=int, required=True)
    h.add_argument("--A3", required=True, help="rational, e.g. 10/3")
    h.add_argument("--basket", default="", help='e.g. "3,1,1" or "1*1/3(1,2,1)"')
    h.add_argument("--terms", type=int, default=10)
    h.set_defaults(func=cmd_hilbert)

    w = sub.add_parser("wps", help="invariants of a weighted projective 3-space")
    w.add_argument("weights", type=_weights, help="e.g. 3,4,5,7")
    w.set_defaults(func=cmd_wps)

    f = sub.add_parser("format", help="Hilbert series of a graded format")
    f.add_argument("spec", help="wps:..., hyp:d@..., ci:d1,d2@..., pf:b1,..,b5@..., pfm:rows@...")
    f.add_argument("--terms", type=int, default=10)
    f.set_defaults(func=cmd_format)

    l = sub.add_parser("ledger", help="(-K)^3 along a chain of birational steps")
    l.add_argument("chain", help='e.g. "blowpt, blowcurve(g=0,kdeg=9), flop"')
    l.add_argument("--start", required=True, help="starting (-K)^3")
    l.set_defaults(func=cmd_ledger)

    v = sub.add_parser("verify-example", help="regression for the index 2 example family")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (SearchInconsistency, InconsistentCandidate, LedgerError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except ValueError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
