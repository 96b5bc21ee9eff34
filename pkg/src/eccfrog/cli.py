"""``frog`` command-line entry point."""

from __future__ import annotations

import argparse
import logging
import os
import sys
from typing import List, Optional

from . import __version__
from .bench import bench_run, write_bench_csv
from .derivation import (
    DEFAULT_CONFIG,
    DerivationConfig,
    Transcript,
    derive_b_candidate,
    derive_gx_candidate,
    mini_generate,
)
from .hippo import (
    HippoError,
    decrypt_file,
    dump_public_key,
    dump_secret_key,
    encrypt_file,
    keygen,
    load_public_key,
    load_secret_key,
)
from .registry import UnknownCurveError, curve_names, registry_get
from .verification import emit_facts_csv, format_report, run_full_verification

log = logging.getLogger("eccfrog")


def _int(text: str) -> int:
    return int(text.replace("_", "").replace(",", ""), 0)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="frog", description="Re-derive, verify and use the ECCFROG522PP curve."
    )
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("-q", "--quiet", action="store_true", help="only log warnings")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run the full verification battery")
    v.add_argument("--curve", required=True)
    v.add_argument("--facts-csv", metavar="PATH")
    v.add_argument("--anti-mov-max", type=int, default=200, metavar="K")
    v.add_argument("--cm-bound", type=int, default=100_000, metavar="B")
    v.add_argument("--twist-factor", type=_int, help="externally published twist prime factor")
    v.add_argument("--j-invariant", type=_int, help="reference j-invariant (hex with 0x, or decimal)")

    d = sub.add_parser("derive", help="print a seed-derived b or Gx candidate")
    d.add_argument("--what", choices=("b", "gx"), required=True)
    d.add_argument("--index", type=_int, required=True)
    d.add_argument("--curve", default="eccfrog522pp")

    m = sub.add_parser("minigen", help="run the seed-to-curve search at a small field size")
    m.add_argument("--bits", type=int, required=True)
    m.add_argument("--seed", default=DEFAULT_CONFIG.seed.decode())
    m.add_argument("--transcript", metavar="PATH")
    m.add_argument("--facts-csv", metavar="PATH")

    k = sub.add_parser("keygen", help="generate a key pair (writes FILE and FILE.pub)")
    k.add_argument("--curve", required=True)
    k.add_argument("--out", required=True, metavar="FILE")

    e = sub.add_parser("encrypt", help="encrypt a file to a public key")
    e.add_argument("--curve", required=True)
    e.add_argument("--pk", required=True, metavar="FILE")
    e.add_argument("--in", dest="infile", required=True, metavar="F")
    e.add_argument("--out", required=True, metavar="F")

    x = sub.add_parser("decrypt", help="decrypt a file with a secret key")
    x.add_argument("--sk", required=True, metavar="FILE")
    x.add_argument("--in", dest="infile", required=True, metavar="F")
    x.add_argument("--out", required=True, metavar="F")

    b = sub.add_parser("bench", help="time scalar multiplication and ECDH")
    b.add_argument("--curves", default=",".join(curve_names()))
    b.add_argument("--iters", type=int, default=50)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--out", default="-", metavar="CSV")
    return ap


def _read(path: str) -> bytes:
    with open(path, "rb") as fh:
        return fh.read()


def _write_atomic(path: str, data: bytes, mode: int = 0o644) -> None:
    tmp = f"{path}.tmp{os.getpid()}"
    fd = os.open(tmp, os.O_WRONLY | os.O_CREAT | os.O_TRUNC, mode)
    with os.fdopen(fd, "wb") as fh:
        fh.write(data)
    os.replace(tmp, path)


def cmd_verify(args) -> int:
    C = registry_get(args.curve)
    report = run_full_verification(
        C,
        anti_mov_k=args.anti_mov_max,
        cm_bound=args.cm_bound,
        twist_factor=args.twist_factor,
        expected_j=args.j_invariant,
    )
    print(format_report(report))
    if args.facts_csv:
        emit_facts_csv(report, args.facts_csv)
    return 0 if report.overall else 1


def cmd_derive(args) -> int:
    C = registry_get(args.curve)
    cfg = DEFAULT_CONFIG
    if args.what == "b":
        value = derive_b_candidate(cfg, args.index, C.p)
        published, pub_index = C.b, C.provenance.b_index if C.provenance else None
    else:
        value = derive_gx_candidate(cfg, args.index, C.p)
        published, pub_index = C.gx, C.provenance.g_index if C.provenance else None
    print(f"{args.what}[{args.index}] = {value}")
    print(f"encoding: {cfg.describe()}")
    if pub_index is None:
        print("published: no provenance for this curve")
    elif args.index == pub_index:
        print(f"matches published: {'yes' if value == published else 'no'}")
    else:
        print(f"matches published: n/a (published index is {pub_index})")
    return 0


def cmd_minigen(args) -> int:
    cfg = DerivationConfig(seed=args.seed.encode("ascii"))
    transcript = Transcript()
    C = mini_generate(args.bits, cfg, transcript=transcript)
    if args.transcript:
        transcript.write(args.transcript)
    print(f"name = {C.name}")
    for field in ("p", "a", "b", "gx", "gy", "n", "h"):
        print(f"{field} = {getattr(C, field)}")
    print(f"b_index = {C.provenance.b_index}, g_index = {C.provenance.g_index}")
    report = run_full_verification(C)
    print(format_report(report))
    if args.facts_csv:
        emit_facts_csv(report, args.facts_csv)
    return 0 if report.overall else 1


def cmd_keygen(args) -> int:
    C = registry_get(args.curve)
    kp = keygen(C)
    _write_atomic(args.out, dump_secret_key(C, kp.sk).encode(), 0o600)
    _write_atomic(args.out + ".pub", dump_public_key(C, kp.pk).encode())
    print(f"wrote {args.out} and {args.out}.pub ({C.name})")
    return 0


def cmd_encrypt(args) -> int:
    C = registry_get(args.curve)
    key_curve, pk = load_public_key(_read(args.pk).decode("ascii"))
    if key_curve.name != C.name:
        raise ValueError(f"public key is for {key_curve.name}, not {C.name}")
    _write_atomic(args.out, encrypt_file(_read(args.infile), C, pk))
    return 0


def cmd_decrypt(args) -> int:
    C, sk = load_secret_key(_read(args.sk).decode("ascii"))
    plaintext = decrypt_file(_read(args.infile), C, sk)
    _write_atomic(args.out, plaintext)
    return 0


def cmd_bench(args) -> int:
    curves = [c for c in args.curves.split(",") if c]
    for c in curves:
        registry_get(c)
    log.info("bench seed=%d iters=%d", args.seed, args.iters)
    write_bench_csv(bench_run(curves, args.iters, seed=args.seed), args.out)
    return 0


COMMANDS = {
    "verify": cmd_verify,
    "derive": cmd_derive,
    "minigen": cmd_minigen,
    "keygen": cmd_keygen,
    "encrypt": cmd_encrypt,
    "decrypt": cmd_decrypt,
    "bench": cmd_bench,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING if args.quiet else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return COMMANDS[args.command](args)
    except UnknownCurveError as exc:
        parser.print_usage(sys.stderr)
        print(f"frog: error: {exc.args[0]}", file=sys.stderr)
        return 2
    except (HippoError, ValueError, OSError) as exc:
        print(f"frog: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
