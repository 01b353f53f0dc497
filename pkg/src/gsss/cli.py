"""Command-line front end.

Exit codes: 0 success, 2 invalid input or malformed file, 3 prime generation
failed, 4 duplicate participant share, 5 monotone closure too large.
Data goes to stdout, diagnostics to stderr.
"""

import argparse
import json
import os
import re
import secrets
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .access import (
    DEFAULT_CLOSURE_CAP,
    AccessStructure,
    ClosureTooLarge,
    StructureFormatError,
    StructureInvalid,
    closure_growth_report,
    monotone_closure,
)
from .attack import NoFeasibleShift, hardening_report
from .polyarith import InsufficientPrimes, InvalidBitLength
from .rng import seed_bytes, seed_fingerprint
from .scheme import (
    DuplicateShare,
    PrimeShare,
    PublicPolynomial,
    Secret,
    ShareFormatError,
    UnknownParticipant,
    coalition_product,
    deal,
    reconstruct,
)
from .shamir import (
    MERSENNE_61,
    DuplicateX,
    InvalidParams,
    NotEnoughShares,
    ThresholdParams,
    ThresholdShare,
    shamir_reconstruct,
    shamir_split,
)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_PRIMES = 3
EXIT_DUPLICATE = 4
EXIT_CLOSURE = 5

SEED_ENV = "GSSS_SEED"
DEFAULT_BITS = 128

_SAFE_NAME = re.compile(r"^[A-Za-z0-9_.-]+$")


class CliError(Exception):
    def __init__(self, message, code=EXIT_INVALID):
        super().__init__(message)
        self.code = code


def dump_json(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def write_json(path: Path, data):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dump_json(data), encoding="utf-8")


def read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise CliError(f"{path} is not valid JSON: {exc}") from None


def parse_seed(text):
    """Seed from the environment, else ``--seed``; ``0x`` prefix means hex bytes."""
    text = os.environ.get(SEED_ENV, text)
    if text is None:
        return None
    if text.lower().startswith("0x"):
        try:
            return bytes.fromhex(text[2:])
        except ValueError:
            raise CliError(f"seed {text!r} is not valid hex") from None
    return seed_bytes(text)


def share_filename(participant: str) -> str:
    if _SAFE_NAME.match(participant):
        return f"{participant}.json"
    return "p_" + participant.encode("utf-8").hex() + ".json"


def load_structure(path) -> AccessStructure:
    try:
        return AccessStructure.from_json(read_json(path))
    except StructureFormatError as exc:
        raise CliError(f"{path}: {exc}") from None


def _parse_primes(text):
    if not text:
        return None
    out = {}
    for item in text.split(","):
        name, sep, value = item.partition("=")
        if not sep:
            raise CliError(f"--primes entry {item!r} is not NAME=PRIME")
        try:
            out[name.strip()] = int(value)
        except ValueError:
            raise CliError(f"--primes value {value!r} is not an integer") from None
    return out


# --- commands ------------------------------------------------------------------

def cmd_deal(args):
    structure = load_structure(args.structure)
    report = structure.validate()
    if not report:
        raise CliError("invalid access structure: " + "; ".join(report.issues))
    try:
        secret = Secret.parse(args.secret)
    except ValueError as exc:
        raise CliError(f"invalid secret: {exc}") from None
    seed = parse_seed(args.seed)
    if seed is None:
        seed = secrets.token_bytes(32)
        print("no seed given; using a fresh random seed", file=sys.stderr)
    try:
        dealing = deal(structure, secret, args.bits, seed, primes=_parse_primes(args.primes))
    except (InsufficientPrimes, InvalidBitLength) as exc:
        raise CliError(f"prime generation failed: {exc}", EXIT_PRIMES) from None
    except (StructureInvalid, UnknownParticipant) as exc:
        raise CliError(str(exc)) from None

    out = Path(args.out_dir)
    canon = dealing.structure
    write_json(out / "structure.json", canon.to_json())
    write_json(out / "public.json", dealing.public.to_json())
    share_files = {}
    for name, share in dealing.shares.items():
        fname = share_filename(name)
        share_files[name] = f"shares/{fname}"
        write_json(out / "shares" / fname, share.to_json())
    write_json(
        out / "metadata.json",
        {
            "bit_length": dealing.bit_length,
            "seed_fingerprint": seed_fingerprint(seed),
            "k": dealing.public.k,
            "n": canon.n,
            "participants": list(canon.participants),
            "structure": "structure.json",
            "public": "public.json",
            "shares": share_files,
        },
    )
    print(str(out / "public.json"))
    return EXIT_OK


def load_public(path) -> PublicPolynomial:
    try:
        return PublicPolynomial.from_json(read_json(path))
    except ShareFormatError as exc:
        raise CliError(f"{path}: {exc}") from None


def cmd_reconstruct(args):
    public = load_public(args.public)
    shares = []
    for path in args.shares:
        try:
            shares.append(PrimeShare.from_json(read_json(path)))
        except ShareFormatError as exc:
            raise CliError(f"{path}: {exc}") from None
    try:
        r = coalition_product(None, shares)
    except DuplicateShare as exc:
        raise CliError(str(exc), EXIT_DUPLICATE) from None
    value = reconstruct(public, r)
    print(value)
    if args.expect is not None:
        verdict = "matches" if value == int(args.expect) else "does not match"
        print(f"test mode: output {verdict} the expected secret", file=sys.stderr)
    return EXIT_OK


def cmd_closure(args):
    structure = load_structure(args.structure)
    report = structure.validate()
    if not report:
        raise CliError("invalid access structure: " + "; ".join(report.issues))
    try:
        closed = monotone_closure(structure, args.cap)
        growth = closure_growth_report(structure, args.cap)
    except ClosureTooLarge as exc:
        raise CliError(f"closure too large: {exc}", EXIT_CLOSURE) from None
    if args.out:
        write_json(Path(args.out), closed.to_json())
        sys.stdout.write(dump_json(growth.to_json()))
    else:
        sys.stdout.write(dump_json(closed.to_json()))
        sys.stderr.write(dump_json(growth.to_json()))
    return EXIT_OK


def _parse_precision(text):
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise CliError(f"invalid precision {text!r}") from None
    if value <= 0:
        raise CliError("precision must be positive")
    return value


def cmd_analyze(args):
    public = load_public(args.public)
    precision = _parse_precision(args.precision)
    meta = {"k": public.k, "n": 0, "bit_length": 0}
    if args.metadata:
        loaded = read_json(args.metadata)
        if not isinstance(loaded, dict):
            raise CliError(f"{args.metadata}: metadata must be a JSON object")
        meta.update({key: loaded[key] for key in ("k", "n", "bit_length") if key in loaded})
    try:
        report = hardening_report(public, meta, precision)
    except NoFeasibleShift as exc:
        raise CliError(str(exc)) from None
    sys.stdout.write(dump_json(report.to_json()))
    if args.plot:
        from .plotting import render_delta_figure

        secret = int(args.secret) if args.secret is not None else None
        render_delta_figure(public.poly, report.interval, args.plot, secret=secret)
        print(f"figure written to {args.plot}", file=sys.stderr)
    return EXIT_OK


def cmd_shamir_split(args):
    try:
        params = ThresholdParams(args.n, args.t, args.q)
        secret = Secret.parse(args.secret).value
        seed = parse_seed(args.seed)
        if seed is None:
            seed = secrets.token_bytes(32)
        shares = shamir_split(secret, params, seed)
    except (InvalidParams, ValueError) as exc:
        raise CliError(str(exc)) from None
    out = Path(args.out_dir)
    for share in shares:
        write_json(out / f"share_{share.x}.json", share.to_json(params))
    print(str(out))
    return EXIT_OK


def cmd_shamir_combine(args):
    loaded = []
    for path in args.shares:
        try:
            loaded.append(ThresholdShare.from_json(read_json(path)))
        except ValueError as exc:
            raise CliError(f"{path}: {exc}") from None
    if {(q, t) for _, q, t in loaded} != {(loaded[0][1], loaded[0][2])}:
        raise CliError("shares disagree on q or t")
    _, q, t = loaded[0]
    try:
        params = ThresholdParams(max(t, len(loaded)), t, q)
        print(shamir_reconstruct([s for s, _, _ in loaded], params))
    except DuplicateX as exc:
        raise CliError(str(exc), EXIT_DUPLICATE) from None
    except (InvalidParams, NotEnoughShares) as exc:
        raise CliError(str(exc)) from None
    return EXIT_OK


def cmd_bench(args):
    from .bench import run_bench

    try:
        k_list = [int(x) for x in args.k_list.split(",") if x.strip()]
    except ValueError:
        raise CliError(f"invalid --k-list {args.k_list!r}") from None
    if not k_list or any(k < 1 for k in k_list):
        raise CliError("--k-list needs at least one positive integer")
    rows = run_bench(k_list, args.coeff_bits, args.repeat)
    print("k,nanoseconds")
    for k, ns in rows:
        print(f"{k},{ns}")
    if args.plot:
        from .plotting import render_bench_figure

        render_bench_figure(rows, args.plot)
        print(f"figure written to {args.plot}", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gsss", description="Generalized secret sharing with prime shares.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("deal", help="deal shares and the public polynomial")
    p.add_argument("structure", help="access structure JSON")
    p.add_argument("secret", help="decimal integer or 0x-prefixed hex bytes")
    p.add_argument("--bits", type=int, default=DEFAULT_BITS, help="prime size in bits (default %(default)s)")
    p.add_argument("--seed", help=f"deterministic seed; ${SEED_ENV} overrides")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--primes", help="pin primes, e.g. A=2,B=3,C=5 (worked examples only)")
    p.set_defaults(func=cmd_deal)

    p = sub.add_parser("reconstruct", help="evaluate the public polynomial at the coalition product")
    p.add_argument("public")
    p.add_argument("shares", nargs="+")
    p.add_argument("--expect", help="test mode: compare the output with a known secret (stderr)")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("closure", help="monotone closure of an access structure")
    p.add_argument("structure")
    p.add_argument("--out")
    p.add_argument("--cap", type=int, default=DEFAULT_CLOSURE_CAP)
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("analyze", help="bound the secret from the public polynomial")
    p.add_argument("public")
    p.add_argument("--precision", default="1/1000000")
    p.add_argument("--metadata", help="metadata.json from deal, for the parameter checks")
    p.add_argument("--plot", help="write a figure of the extreme shifts to this file")
    p.add_argument("--secret", help="known secret to overlay on the figure (test mode)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("shamir", help="threshold baseline")
    ssub = p.add_subparsers(dest="shamir_command", required=True)
    s = ssub.add_parser("split")
    s.add_argument("secret")
    s.add_argument("-n", type=int, required=True)
    s.add_argument("-t", type=int, required=True)
    s.add_argument("--q", type=int, default=MERSENNE_61)
    s.add_argument("--seed")
    s.add_argument("--out-dir", required=True)
    s.set_defaults(func=cmd_shamir_split)
    s = ssub.add_parser("combine")
    s.add_argument("shares", nargs="+")
    s.set_defaults(func=cmd_shamir_combine)

    p = sub.add_parser("bench", help="time reconstruct against k")
    p.add_argument("--k-list", required=True, help="comma-separated degrees, e.g. 100,1000,10000")
    p.add_argument("--coeff-bits", type=int, default=64)
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--plot", help="write a figure of per-k cost to this file")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"gsss: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
