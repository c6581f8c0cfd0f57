"""Command-line driver: ``cspec <verb> ...``."""

from __future__ import annotations

import argparse
import logging
import sys

from .algebra import AlgebraError, FiniteAlgebra
from .classify import classification_report
from .commutator import HypothesisError, commutator_table, hypothesis_flags
from .extensions import extension_report, make_extension
from .fixtures import FIXTURES, fixture
from .io import AlgebraFileError, bundled, emit_report, export_dot, load_algebra, parse_algebra_file
from .partitions import Congruence, EnumerationCapExceeded, cg
from .spectra import TopologyError, spectrum, stone_topology

EXIT_OK, EXIT_INPUT, EXIT_VIOLATION = 0, 1, 2


class InputError(Exception):
    pass


def read_algebra(spec: str) -> FiniteAlgebra:
    """A path, ``@fixture`` (built in) or ``@@name`` (bundled .alg file)."""
    if spec.startswith("@@"):
        try:
            return parse_algebra_file(bundled(spec[2:]))
        except FileNotFoundError:
            raise InputError(f"no bundled algebra {spec[2:]!r}") from None
    if spec.startswith("@"):
        try:
            return fixture(spec[1:])
        except KeyError as exc:
            raise InputError(exc.args[0]) from None
    try:
        return load_algebra(spec)
    except OSError as exc:
        raise InputError(f"{spec}: {exc.strerror}") from None
    except AlgebraFileError as exc:
        raise InputError(f"{spec}: {exc}") from None


def _element(alg: FiniteAlgebra, tok: str) -> int:
    if alg.element_names and tok in alg.element_names:
        return alg.element_names.index(tok)
    if tok.isdigit() and int(tok) < alg.size:
        return int(tok)
    raise InputError(f"unknown element {tok!r}")


def parse_pairs(alg: FiniteAlgebra, text: str) -> list[tuple[int, int]]:
    """``0-2,1-3`` -> [(0, 2), (1, 3)]; an empty string is the empty set."""
    pairs = []
    for item in filter(None, (s.strip() for s in text.split(","))):
        a, sep, b = item.partition("-")
        if not sep:
            raise InputError(f"pair {item!r} is not of the form a-b")
        pairs.append((_element(alg, a), _element(alg, b)))
    return pairs


def _cong(alg, text) -> Congruence:
    return cg(alg, parse_pairs(alg, text))


def _write(data: bytes | str):
    if isinstance(data, str):
        data = data.encode("utf-8")
    sys.stdout.buffer.write(data)
    sys.stdout.flush()


def cmd_con(args) -> int:
    alg = read_algebra(args.algebra)
    lat = commutator_table(alg).lattice
    report = {
        "command": "con",
        "algebra": alg.name,
        "size": alg.size,
        "congruences": list(lat),
        "principal": [lat[i] for i in lat.principal],
        "covers": [{"lower": lo, "upper": hi} for lo, hi in sorted(lat.covers())],
    }
    _write(emit_report(report, args.format))
    return EXIT_OK


def cmd_commutator(args) -> int:
    alg = read_algebra(args.algebra)
    alpha, beta = _cong(alg, args.alpha), _cong(alg, args.beta)
    ct = commutator_table(alg)
    report = {
        "command": "commutator",
        "algebra": alg.name,
        "alpha": alpha,
        "beta": beta,
        "commutator": ct.of(alpha, beta),
        "meet": alpha & beta,
        "flags": hypothesis_flags(alg),
    }
    _write(emit_report(report, args.format))
    return EXIT_OK


def cmd_spectrum(args) -> int:
    alg = read_algebra(args.algebra)
    rep = spectrum(alg)
    report = {"command": "spectrum", "algebra": alg.name, "spectrum": rep, "max_in_spec": rep.max_in_spec}
    _write(emit_report(report, args.format))
    return EXIT_OK


def cmd_classify(args) -> int:
    alg = read_algebra(args.algebra)
    report = {"command": "classify", "algebra": alg.name, "classification": classification_report(alg)}
    _write(emit_report(report, args.format))
    return EXIT_OK


def cmd_extension(args) -> int:
    big = read_algebra(args.algebra)
    sub = [_element(big, s.strip()) for s in args.sub.split(",") if s.strip()]
    try:
        ext = make_extension(big, sub)
    except AlgebraError as exc:
        raise InputError(str(exc)) from None
    rep = extension_report(ext)
    report = {"command": "extension", "algebra": big.name, "sub": list(ext.sub), "extension": rep}
    _write(emit_report(report, args.format))
    return EXIT_VIOLATION if any(v.status.value == "VIOLATION" for v in rep.verdicts) else EXIT_OK


def cmd_verify(args) -> int:
    from .verify import run_verify

    report = run_verify(seed=args.seed, max_size=args.max_size, random_count=args.random)
    _write(emit_report(report, args.format))
    return EXIT_VIOLATION if report["violations"] else EXIT_OK


def cmd_export_dot(args) -> int:
    alg = read_algebra(args.algebra)
    if args.points == "con":
        _write(export_dot(commutator_table(alg).lattice))
    else:
        _write(export_dot(stone_topology(alg, args.points)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="cspec",
        description="Congruences, commutators and prime spectra of finite algebras.",
        epilog=f"ALGEBRA is a .alg path, @fixture ({', '.join(sorted(FIXTURES))}) or @@bundled-file.",
    )
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name, fn, help_, with_algebra=True):
        sp = sub.add_parser(name, help=help_)
        if with_algebra:
            sp.add_argument("algebra", metavar="ALGEBRA")
        sp.add_argument("--format", choices=("json", "text"), default="json")
        sp.set_defaults(func=fn)
        return sp

    verb("con", cmd_con, "congruence lattice")
    sp = verb("commutator", cmd_commutator, "commutator of two congruences given by generating pairs")
    sp.add_argument("--alpha", required=True, help="generating pairs, e.g. 0-2,1-3")
    sp.add_argument("--beta", required=True)
    verb("spectrum", cmd_spectrum, "Spec, Min, Max and the radical of Delta")
    verb("classify", cmd_classify, "abelian / semiprime / Baer / hyperarchimedean report")
    sp = verb("extension", cmd_extension, "analyse the subalgebra extension given by --sub")
    sp.add_argument("--sub", required=True, help="elements of the subuniverse, e.g. 0,3")
    sp = verb("verify", cmd_verify, "run every executable statement on the catalogue", with_algebra=False)
    sp.add_argument("--seed", type=int, default=42)
    sp.add_argument("--max-size", type=int, default=5)
    sp.add_argument("--random", type=int, default=100, help="number of seeded random algebras")
    sp = verb("export-dot", cmd_export_dot, "DOT of Con(A) or of a Stone topology")
    sp.add_argument("--points", choices=("con", "spec", "min", "max"), default="con")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr)
    try:
        return args.func(args)
    except (InputError, AlgebraError, TopologyError, EnumerationCapExceeded, HypothesisError) as exc:
        print(f"cspec: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
