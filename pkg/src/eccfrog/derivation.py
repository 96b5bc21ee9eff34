"""Deterministic BLAKE3 parameter pipeline.

    b  = (BLAKE3(seed | "b" | i) mod (p - 3)) + 2
    Gx =  BLAKE3(seed | "G" | j) mod p

with 64-byte digests. The byte framing of the hash input is not fixed by the
published rule, so :func:`resolve_encoding` tries a closed set of framings and
keeps the one that reproduces a known b.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field, replace
from typing import Iterable, List, Optional, Sequence, Tuple

import blake3

from .counting import curve_order
from .curve import CurveParams, Point, Provenance, lift_x, scalar_mul
from .field import DIGEST_LEN, int_from_digest
from .primes import is_probable_prime, next_prime_3mod4
from .security import first_embedding_degree, square_factors

log = logging.getLogger(__name__)

INDEX_ENCODINGS = ("ascii-decimal-index", "u64-big-endian-index", "u64-little-endian-index")
DIGEST_ORDERS = ("big", "little")
SEED_CASINGS = (b"ECCFrog522PP|v1", b"ECCFROG522PP|v1")


class AmbiguousEncodingError(ValueError):
    def __init__(self, matches: Sequence["DerivationConfig"]) -> None:
        self.matches = list(matches)
        names = "; ".join(m.describe() for m in matches)
        super().__init__(f"{len(matches)} encodings reproduce the target: {names}")


class SearchExhaustedError(RuntimeError):
    pass


@dataclass(frozen=True)
class DerivationConfig:
    seed: bytes = SEED_CASINGS[0]
    index_encoding: str = "ascii-decimal-index"
    digest_order: str = "big"
    digest_len: int = DIGEST_LEN
    b_tag: bytes = b"b"
    g_tag: bytes = b"G"
    separator: bytes = b"|"
    y_parity: str = "even"

    def __post_init__(self) -> None:
        if self.digest_len != DIGEST_LEN:
            raise ValueError("digest length is fixed at 64 bytes")
        if self.index_encoding not in INDEX_ENCODINGS:
            raise ValueError(f"unknown index encoding {self.index_encoding!r}")
        if self.digest_order not in DIGEST_ORDERS:
            raise ValueError(f"unknown digest byte order {self.digest_order!r}")
        if self.y_parity not in ("even", "odd"):
            raise ValueError("y_parity must be 'even' or 'odd'")

    def encode_index(self, index: int) -> bytes:
        if index < 0:
            raise ValueError("index must be non-negative")
        if self.index_encoding == "ascii-decimal-index":
            return str(index).encode("ascii")
        order = "big" if self.index_encoding == "u64-big-endian-index" else "little"
        return index.to_bytes(8, order)

    def message(self, tag: bytes, index: int) -> bytes:
        sep = self.separator
        return self.seed + sep + tag + sep + self.encode_index(index)

    def digest(self, tag: bytes, index: int) -> bytes:
        return blake3.blake3(self.message(tag, index)).digest(length=self.digest_len)

    @property
    def variant(self) -> str:
        return f"{self.index_encoding}/{self.digest_order}-endian-digest"

    def describe(self) -> str:
        return f"seed={self.seed.decode('ascii', 'replace')!r} {self.variant} y={self.y_parity}"


# Frozen default: the framing that reproduces the published ECCFROG522PP b and Gx.
DEFAULT_CONFIG = DerivationConfig()


def encoding_space(seeds: Iterable[bytes] = SEED_CASINGS) -> List[DerivationConfig]:
    return [
        DerivationConfig(seed=s, index_encoding=ie, digest_order=do)
        for s, ie, do in itertools.product(seeds, INDEX_ENCODINGS, DIGEST_ORDERS)
    ]


@dataclass(frozen=True)
class SearchResult:
    index: int
    value: int
    attempts: int
    accepted: bool
    reason: str = ""


@dataclass
class Transcript:
    """Per-index log of a search, written as ``index,status,reason`` lines."""

    rows: List[Tuple[int, str, str]] = field(default_factory=list)

    def record(self, index: int, status: str, reason: str) -> None:
        self.rows.append((index, status, reason.replace(",", ";")))

    def lines(self) -> List[str]:
        return [f"{i},{s},{r}" for i, s, r in self.rows]

    def write(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("index,status,reason\n")
            for line in self.lines():
                fh.write(line + "\n")


def derive_b_candidate(cfg: DerivationConfig, i: int, p: int) -> int:
    """Candidate b in [2, p - 2] for search index ``i``."""
    d = cfg.digest(cfg.b_tag, i)
    return int_from_digest(d, p - 3, cfg.digest_order) + 2


def derive_gx_candidate(cfg: DerivationConfig, j: int, p: int) -> int:
    d = cfg.digest(cfg.g_tag, j)
    return int_from_digest(d, p, cfg.digest_order)


def resolve_encoding(
    published_b: int, i: int, cfg_space: Sequence[DerivationConfig], p: int
) -> Optional[DerivationConfig]:
    """The unique framing whose ``derive_b_candidate(i)`` equals ``published_b``.

    Returns None when nothing matches (callers then fall back to the published
    constants). Several matches raise :class:`AmbiguousEncodingError`.
    """
    if not cfg_space:
        raise ValueError("empty encoding space")
    matches = [c for c in cfg_space if derive_b_candidate(c, i, p) == published_b]
    if len(matches) > 1:
        raise AmbiguousEncodingError(matches)
    if not matches:
        log.info("derivation unresolved: no framing reproduces b at index %d", i)
        return None
    log.info("derivation reproduced: %s", matches[0].describe())
    return matches[0]


def select_y(roots: Tuple[int, int], parity: str) -> int:
    want = 0 if parity == "even" else 1
    return roots[0] if roots[0] & 1 == want else roots[1]


def evaluate_g_index(C: CurveParams, cfg: DerivationConfig, j: int) -> SearchResult:
    """Apply the base-point acceptance predicate to candidate ``j``.

    On acceptance ``value`` is the y coordinate chosen by the parity rule.
    """
    x = derive_gx_candidate(cfg, j, C.p)
    roots = lift_x(C, x)
    if roots is None:
        return SearchResult(j, x, j + 1, False, "x^3+ax+b is a non-residue")
    y = select_y(roots, cfg.y_parity)
    if y == 0:
        return SearchResult(j, x, j + 1, False, "2-torsion point")
    # n prime: [n]P == O for P != O certifies ord(P) == n
    if not scalar_mul(C.n, C.point(x, y), C).is_identity:
        return SearchResult(j, x, j + 1, False, "order does not divide n")
    return SearchResult(j, y, j + 1, True, "full order")


def find_base_point(
    C: CurveParams,
    cfg: DerivationConfig,
    max_tries: int = 10_000,
    transcript: Optional[Transcript] = None,
) -> Tuple[Point, int]:
    """First j whose derived x lifts to a point of order n."""
    if not is_probable_prime(C.n):
        raise ValueError("base-point search needs a prime group order")
    for j in range(max_tries):
        res = evaluate_g_index(C, cfg, j)
        if transcript is not None:
            transcript.record(j, "accept" if res.accepted else "reject", res.reason)
        if res.accepted:
            return C.point(derive_gx_candidate(cfg, j, C.p), res.value), j
    raise SearchExhaustedError(f"no base point found in {max_tries} candidates")


def mini_prime(bits: int) -> int:
    """Smallest prime >= 2**(bits-1) that is 3 mod 4."""
    return next_prime_3mod4(1 << (bits - 1))


def evaluate_b_index(
    cfg: DerivationConfig,
    i: int,
    p: int,
    a: int = -9,
    anti_mov_k: int = 200,
    cm_bound: int = 100_000,
) -> SearchResult:
    """Apply the mini-search acceptance predicate to b-candidate ``i``.

    On acceptance ``value`` is b; the order is in ``reason``.
    """
    a %= p
    b = derive_b_candidate(cfg, i, p)
    if (4 * pow(a, 3, p) + 27 * b * b) % p == 0:
        return SearchResult(i, b, i + 1, False, "singular")
    n = curve_order(p, a, b)
    if not is_probable_prime(n):
        return SearchResult(i, b, i + 1, False, f"order {n} not prime")
    k = first_embedding_degree(p, n, anti_mov_k)
    if k is not None:
        return SearchResult(i, b, i + 1, False, f"embedding degree {k}")
    t = p + 1 - n
    sq = square_factors(t * t - 4 * p, cm_bound) if cm_bound else {}
    if sq:
        return SearchResult(i, b, i + 1, False, f"CM discriminant divisible by {min(sq)}^2")
    return SearchResult(i, b, i + 1, True, f"prime order {n}")


def mini_generate(
    bits: int,
    cfg: DerivationConfig = DEFAULT_CONFIG,
    max_index: int = 100_000,
    transcript: Optional[Transcript] = None,
    a: int = -9,
    anti_mov_k: int = 200,
    cm_bound: int = 100_000,
) -> CurveParams:
    """Run the full seed-to-curve search at a toy field size.

    Accepts the first index whose curve is non-singular with prime order
    (cofactor 1), no embedding degree k <= ``anti_mov_k`` and a CM
    discriminant free of prime squares q^2, q <= ``cm_bound``; then searches
    for the base point. Pass 0 for either bound to drop that condition.
    """
    if not 16 <= bits <= 48:
        raise ValueError("mini generation supports 16 <= bits <= 48")
    p = mini_prime(bits)
    a %= p
    for i in range(max_index):
        res = evaluate_b_index(cfg, i, p, a, anti_mov_k, cm_bound)
        if transcript is not None:
            transcript.record(i, "accept" if res.accepted else "reject", res.reason)
        if not res.accepted:
            continue
        b = res.value
        n = curve_order(p, a, b)
        name = f"minifrog{bits}"
        # placeholder generator until the base-point search runs
        C = CurveParams(name, p, a, b, 0, 0, n, 1)
        G, j = find_base_point(C, cfg)
        prov = Provenance(cfg.seed.decode("ascii", "replace"), i, j)
        return CurveParams(name, p, a, b, G.x.value, G.y.value, n, 1, prov)
    raise SearchExhaustedError(f"no acceptable curve among the first {max_index} indices")


@dataclass(frozen=True)
class Rederivation:
    config: Optional[DerivationConfig]
    b: Optional[int]
    gx: Optional[int]
    gy: Optional[int]

    @property
    def resolved(self) -> bool:
        return self.config is not None


def rederive(C: CurveParams, cfg_space: Optional[Sequence[DerivationConfig]] = None) -> Rederivation:
    """Re-derive (b, Gx, Gy) from the curve's recorded seed indices."""
    if C.provenance is None:
        raise ValueError(f"{C.name} carries no derivation provenance")
    prov = C.provenance
    seeds = {prov.seed.encode("ascii"), *SEED_CASINGS}
    space = cfg_space if cfg_space is not None else encoding_space(sorted(seeds))
    cfg = resolve_encoding(C.b, prov.b_index, space, C.p)
    if cfg is None:
        return Rederivation(None, None, None, None)
    b = derive_b_candidate(cfg, prov.b_index, C.p)
    gx = derive_gx_candidate(cfg, prov.g_index, C.p)
    trial = CurveParams(C.name, C.p, C.a, b, C.gx, C.gy, C.n, C.h, prov)
    roots = lift_x(trial, gx)
    gy = None
    if roots is not None:
        gy = select_y(roots, cfg.y_parity)
        if gy != C.gy:
            # the other parity rule; frozen into the returned config
            alt = "odd" if cfg.y_parity == "even" else "even"
            if select_y(roots, alt) == C.gy:
                cfg = replace(cfg, y_parity=alt)
                gy = C.gy
    return Rederivation(cfg, b, gx, gy)
