"""Security-check battery for a curve, with text report and CSV facts output."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from . import __version__
from .curve import (
    CurveParams,
    Point,
    check_hasse,
    is_on_curve,
    j_invariant,
    scalar_mul,
)
from .derivation import DerivationConfig, rederive
from .primes import DEFAULT_ROUNDS, is_probable_prime, trial_factor
from .registry import PublishedFacts, UnknownCurveError, published_facts, registry_get
from .security import first_embedding_degree, small_prime_factors

PASS, FAIL, SKIP, INFO = "pass", "fail", "skip", "info"

PRIMALITY_LABEL = f"probable prime (Baillie-PSW + {DEFAULT_ROUNDS} Miller-Rabin rounds; ECPP out of scope)"
TWIST_TRIAL_BOUND = 10**6

# Fixed reporting order.
CHECK_ORDER = (
    "derivation",
    "j_invariant",
    "p_prime",
    "n_prime",
    "cofactor",
    "bit_lengths",
    "base_point",
    "nonsingular",
    "trace",
    "cm_discriminant",
    "twist_order",
    "hasse",
    "anti_mov",
    "cm_squarefree",
    "twist",
)


@dataclass
class CheckResult:
    name: str
    status: str
    detail: str = ""
    values: Dict[str, str] = field(default_factory=dict)
    warnings: List[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.status not in (PASS, FAIL, SKIP, INFO):
            raise ValueError(f"bad status {self.status!r}")
        if self.status == FAIL and not self.detail:
            raise ValueError("a failed check must say why")

    @property
    def passed(self) -> bool:
        return self.status == PASS

    @property
    def failed(self) -> bool:
        return self.status == FAIL


@dataclass
class VerificationReport:
    curve: str
    params: CurveParams
    checks: List[CheckResult]
    environment: Dict[str, str]

    @property
    def overall(self) -> bool:
        # skipped / informational rows never count as passes, but never fail either
        return not any(c.failed for c in self.checks)

    def get(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


@dataclass(frozen=True)
class TwistEvidence:
    twist_order: int
    claimed_factor: Optional[int] = None
    cofactor: Optional[int] = None

    def __post_init__(self) -> None:
        if self.claimed_factor is not None and self.cofactor is not None:
            if self.claimed_factor * self.cofactor != self.twist_order:
                raise ValueError("twist evidence inconsistent: factor * cofactor != twist order")

    @property
    def factor_bits(self) -> int:
        return self.claimed_factor.bit_length() if self.claimed_factor else 0


def _ok(flag: bool) -> str:
    return PASS if flag else FAIL


def _bool(flag: bool) -> str:
    return "true" if flag else "false"


def trace_of(C: CurveParams) -> int:
    return C.p + 1 - C.n * C.h


def twist_order_of(C: CurveParams) -> int:
    return 2 * (C.p + 1) - C.n * C.h


# ---------------------------------------------------------------------------
# individual checks


def check_primes(C: CurveParams, facts: Optional[PublishedFacts] = None) -> List[CheckResult]:
    p_ok = is_probable_prime(C.p)
    n_ok = is_probable_prime(C.n)
    out = [
        CheckResult(
            "p_prime",
            _ok(p_ok),
            PRIMALITY_LABEL if p_ok else "p is composite",
            {"p_is_probable_prime": _bool(p_ok)},
        ),
        CheckResult(
            "n_prime",
            _ok(n_ok),
            PRIMALITY_LABEL if n_ok else "group order n is composite",
            {"n_is_probable_prime": _bool(n_ok)},
        ),
        CheckResult(
            "cofactor",
            _ok(C.h == 1),
            "cofactor 1" if C.h == 1 else f"cofactor is {C.h}, not 1",
            {"cofactor": str(C.h)},
        ),
    ]
    pb, nb = C.p.bit_length(), C.n.bit_length()
    warnings = []
    if facts is not None:
        if facts.claimed_p_bits is not None and pb != facts.claimed_p_bits:
            warnings.append(f"p has {pb} bits, claimed {facts.claimed_p_bits}")
        if facts.claimed_n_bits is not None and nb != facts.claimed_n_bits:
            warnings.append(f"n has {nb} bits, claimed {facts.claimed_n_bits}")
    detail = f"p: {pb} bits, n: {nb} bits"
    if facts is not None and not warnings:
        detail += " (matches claimed widths)"
    out.append(
        CheckResult(
            "bit_lengths", PASS, detail, {"p_bits": str(pb), "n_bits": str(nb)}, warnings
        )
    )
    return out


def check_base_point(C: CurveParams, G: Optional[Point] = None) -> CheckResult:
    """G on the curve, not the identity, and [n]G == O."""
    G = C.G if G is None else G
    if G.is_identity:
        return CheckResult("base_point", FAIL, "base point is the identity")
    if not is_on_curve(G, C):
        return CheckResult("base_point", FAIL, "base point is not on the curve")
    if not scalar_mul(C.n, G, C).is_identity:
        return CheckResult("base_point", FAIL, "[n]G != O")
    return CheckResult(
        "base_point",
        PASS,
        "G on curve, [n]G == O; with n prime, ord(G) == n",
        {"gx": str(G.x.value), "gy": str(G.y.value)},
    )


def check_consistency(C: CurveParams, published: Optional[PublishedFacts]) -> List[CheckResult]:
    t = trace_of(C)
    D = t * t - 4 * C.p
    tw = twist_order_of(C)
    out = [
        CheckResult(
            "nonsingular",
            _ok(C.discriminant_term() != 0),
            "4a^3 + 27b^2 != 0 mod p",
        )
    ]
    derived = {"trace": ("t", t), "cm_discriminant": ("d", D), "twist_order": ("twist_order", tw)}
    if published is None:
        for name, (key, val) in derived.items():
            out.append(
                CheckResult(name, SKIP, "no published value to compare; derived only", {key: str(val)})
            )
    else:
        claims = {
            "trace": (published.trace, "t == p + 1 - n"),
            "cm_discriminant": (published.cm_discriminant, "D == t^2 - 4p"),
            "twist_order": (published.twist_order, "twist order == 2(p + 1) - n"),
        }
        for name, (key, val) in derived.items():
            claim, identity = claims[name]
            # D and the twist order are checked against the published t as well
            if name == "cm_discriminant":
                ok = claim == published.trace**2 - 4 * C.p and claim == D
            elif name == "twist_order":
                ok = claim == 2 * (C.p + 1) - C.n and claim == C.p + 1 + published.trace and claim == tw
            else:
                ok = claim == val
            detail = identity if ok else f"{identity} fails: published {claim}, computed {val}"
            out.append(CheckResult(name, _ok(ok), detail, {key: str(val)}))
    lo, hi = C.hasse_bounds()
    hasse_ok = check_hasse(C) and t * t <= 4 * C.p
    out.append(
        CheckResult(
            "hasse",
            _ok(hasse_ok),
            "|t| <= 2 sqrt(p)" if hasse_ok else f"n*h = {C.n * C.h} outside [{lo}, {hi}]",
            {"hasse_lower": str(lo), "hasse_upper": str(hi)},
        )
    )
    return out


def check_anti_mov(
    C: CurveParams, k_max: int = 200, facts: Optional[PublishedFacts] = None
) -> CheckResult:
    values = {"anti_mov_max_k": str(k_max)}
    warnings = []
    if facts is not None and facts.claimed_embedding_degree_lower_bound is not None:
        values["embedding_degree_claimed_lower_bound"] = str(facts.claimed_embedding_degree_lower_bound)
    if k_max <= 0:
        warnings.append("empty range k <= 0: check is vacuous")
        return CheckResult("anti_mov", PASS, "vacuous (k_max = 0)", values, warnings)
    k = first_embedding_degree(C.p, C.n, k_max)
    if k is not None:
        values["embedding_degree"] = str(k)
        return CheckResult("anti_mov", FAIL, f"p^{k} == 1 mod n: embedding degree {k}", values)
    values["embedding_degree_exceeds"] = str(k_max)
    detail = f"p^k != 1 mod n for all 1 <= k <= {k_max}; embedding degree > {k_max}"
    claimed = facts.claimed_embedding_degree_lower_bound if facts else None
    if claimed is not None and claimed < k_max:
        detail += f" (stronger than the stated lower bound {claimed})"
    return CheckResult("anti_mov", PASS, detail, values, warnings)


def _format_factors(factors: Dict[int, int]) -> str:
    return "*".join(f"{q}^{e}" for q, e in sorted(factors.items())) or "1"


def cm_squarefree_result(D: int, bound: int = 100_000) -> CheckResult:
    """No prime q <= bound with q^2 | |D|."""
    factors = small_prime_factors(D, bound)
    squares = sorted(q for q, e in factors.items() if e >= 2)
    values = {
        "d": str(D),
        "cm_bound": str(bound),
        "d_small_factors": _format_factors(factors),
    }
    if squares:
        return CheckResult(
            "cm_squarefree", FAIL, f"{squares[0]}^2 divides |D|", {**values, "cm_square_prime": str(squares[0])}
        )
    return CheckResult("cm_squarefree", PASS, f"no q^2 | |D| for prime q <= {bound}", values)


def check_cm_squarefree(C: CurveParams, bound: int = 100_000) -> CheckResult:
    t = trace_of(C)
    D = t * t - 4 * C.p
    if D >= 0:
        return CheckResult("cm_squarefree", FAIL, f"D = t^2 - 4p = {D} is not negative")
    return cm_squarefree_result(D, bound)


def derive_twist_factor(twist_order: int, bound: int = TWIST_TRIAL_BOUND) -> Tuple[Dict[int, int], int]:
    """Strip primes < bound; returns (small factors, remaining cofactor)."""
    return trial_factor(twist_order, bound)


def check_twist(
    C: CurveParams,
    evidence: TwistEvidence,
    bits_range: Optional[Tuple[int, int]] = None,
    trial_bound: int = TWIST_TRIAL_BOUND,
) -> CheckResult:
    """Largest-prime-factor evidence for the quadratic twist order.

    Without ``bits_range`` the result is informational only.
    """
    tw = evidence.twist_order
    if tw != twist_order_of(C):
        return CheckResult("twist", FAIL, "evidence twist order != 2(p + 1) - n")
    small, rest = derive_twist_factor(tw, trial_bound)
    values = {
        "twist_order": str(tw),
        "twist_small_factors": _format_factors(small),
        "twist_trial_bound": str(trial_bound),
    }
    problems = []
    if rest > 1:
        factor = rest
        factor_prime = is_probable_prime(rest)
        if not factor_prime:
            problems.append(f"cofactor after trial division below {trial_bound} is composite")
    else:
        factor = max(small) if small else 1
        factor_prime = factor > 1
    values["twist_factor"] = str(factor)
    values["twist_factor_bits"] = str(factor.bit_length())
    values["twist_cofactor"] = str(tw // factor if factor else 0)

    if evidence.claimed_factor is not None:
        q = evidence.claimed_factor
        values["twist_claimed_factor"] = str(q)
        if q <= 1 or tw % q:
            problems.append("claimed factor does not divide the twist order")
        if not is_probable_prime(q):
            problems.append("claimed factor is not prime")
        elif q != factor:
            problems.append("claimed factor differs from the trial-division residue")
        if bits_range and not bits_range[0] <= q.bit_length() <= bits_range[1]:
            problems.append(f"claimed factor has {q.bit_length()} bits, outside {bits_range}")

    if bits_range and not bits_range[0] <= factor.bit_length() <= bits_range[1]:
        problems.append(f"largest factor has {factor.bit_length()} bits, outside {list(bits_range)}")

    desc = f"largest prime factor {factor.bit_length()} bits ({'probable prime' if factor_prime else 'not prime'})"
    if bits_range is None and evidence.claimed_factor is None:
        return CheckResult("twist", INFO, desc + "; report only (no published claim)", values)
    if problems:
        return CheckResult("twist", FAIL, "; ".join(problems), values)
    return CheckResult("twist", PASS, desc, values)


def check_derivation(
    C: CurveParams, cfg_space: Optional[Sequence[DerivationConfig]] = None
) -> Tuple[CheckResult, Optional[CurveParams], Optional[DerivationConfig]]:
    """Re-derive b and G from the seed; returns the re-derived params when they match."""
    if C.provenance is None:
        return CheckResult("derivation", SKIP, "no seed provenance; published constants only"), None, None
    prov = C.provenance
    r = rederive(C, cfg_space)
    values = {"seed": prov.seed, "b_index": str(prov.b_index), "g_index": str(prov.g_index)}
    if not r.resolved:
        values["encoding_variant"] = "unresolved"
        return (
            CheckResult("derivation", SKIP, "unresolved: verification-only mode using published constants", values),
            None,
            None,
        )
    cfg = r.config
    values.update(
        {
            "encoding_variant": cfg.variant,
            "encoding_seed": cfg.seed.decode("ascii", "replace"),
            "y_parity": cfg.y_parity,
            "b_derived": str(r.b),
            "gx_derived": str(r.gx),
            "gy_derived": "" if r.gy is None else str(r.gy),
        }
    )
    mismatches = [
        name
        for name, got, want in (("b", r.b, C.b), ("Gx", r.gx, C.gx), ("Gy", r.gy, C.gy))
        if got != want
    ]
    if mismatches:
        return (
            CheckResult("derivation", FAIL, "re-derived " + ", ".join(mismatches) + " differ from published", values),
            None,
            cfg,
        )
    rederived = CurveParams(C.name, C.p, C.a, r.b, r.gx, r.gy, C.n, C.h, C.provenance)
    return CheckResult("derivation", PASS, "derivation reproduced b, Gx, Gy", values), rederived, cfg


def check_j_invariant(C: CurveParams, expected: Optional[int] = None) -> CheckResult:
    j = j_invariant(C).value
    values = {"j_invariant": str(j), "j_invariant_hex": hex(j)}
    if expected is None:
        return CheckResult("j_invariant", INFO, f"j = {hex(j)} (recorded; no reference supplied)", values)
    values["j_invariant_expected_hex"] = hex(expected)
    if j != expected:
        return CheckResult("j_invariant", FAIL, f"j = {hex(j)} != expected {hex(expected)}", values)
    return CheckResult("j_invariant", PASS, "j-invariant matches the reference", values)


# ---------------------------------------------------------------------------


def _registry_facts(C: CurveParams) -> Optional[PublishedFacts]:
    try:
        reg = registry_get(C.name)
    except UnknownCurveError:
        return None
    if (reg.p, reg.a, reg.b, reg.n) != (C.p, C.a, C.b, C.n):
        return None
    return published_facts(C.name)


def run_full_verification(
    C: CurveParams,
    *,
    facts: Optional[PublishedFacts] = None,
    anti_mov_k: int = 200,
    cm_bound: int = 100_000,
    twist_factor: Optional[int] = None,
    expected_j: Optional[int] = None,
    cfg_space: Optional[Sequence[DerivationConfig]] = None,
) -> VerificationReport:
    facts = facts if facts is not None else _registry_facts(C)
    checks: List[CheckResult] = []

    deriv, rederived, cfg = check_derivation(C, cfg_space)
    checks.append(deriv)
    # when the seed reproduces the constants, everything below runs on the re-derived set
    work = rederived if rederived is not None else C

    checks.append(check_j_invariant(work, expected_j))
    checks.extend(check_primes(work, facts))
    checks.append(check_base_point(work))
    checks.extend(check_consistency(work, facts))
    checks.append(check_anti_mov(work, anti_mov_k, facts))
    checks.append(check_cm_squarefree(work, cm_bound))
    evidence = TwistEvidence(twist_order_of(work), twist_factor)
    checks.append(check_twist(work, evidence, facts.twist_factor_bits_range if facts else None))

    assert [c.name for c in checks] == list(CHECK_ORDER)
    env = {
        "tool_version": __version__,
        "encoding_variant": cfg.variant if cfg else "unresolved" if C.provenance else "none",
        "primality": PRIMALITY_LABEL,
        "params_source": "re-derived" if rederived is not None else "published",
    }
    return VerificationReport(C.name, work, checks, env)


def facts_rows(report: VerificationReport) -> List[Tuple[str, str]]:
    C = report.params
    rows: Dict[str, str] = {
        "curve": report.curve,
        "p": str(C.p),
        "a": str(C.a),
        "a_signed": str(C.a - C.p if C.a > C.p // 2 else C.a),
        "b": str(C.b),
        "gx": str(C.gx),
        "gy": str(C.gy),
        "n": str(C.n),
        "cofactor": str(C.h),
        "overall": PASS if report.overall else FAIL,
        "tool_version": report.environment["tool_version"],
        "encoding_variant": report.environment["encoding_variant"],
        "params_source": report.environment["params_source"],
    }
    for check in report.checks:
        rows[f"check.{check.name}"] = check.status
        for k, v in check.values.items():
            if k in rows and rows[k] != v:
                raise ValueError(f"conflicting fact {k}: {rows[k]} vs {v}")
            rows[k] = v
        if check.warnings:
            rows[f"warning.{check.name}"] = " | ".join(check.warnings)
    return sorted(rows.items())


def emit_facts_csv(report: VerificationReport, path) -> None:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["key", "value"])
    w.writerows(facts_rows(report))
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(buf.getvalue())


def format_report(report: VerificationReport) -> str:
    lines = [f"Verification report: {report.curve}"]
    for k in sorted(report.environment):
        lines.append(f"  {k}: {report.environment[k]}")
    width = max(len(c.name) for c in report.checks)
    for c in report.checks:
        lines.append(f"[{c.status.upper():4}] {c.name:<{width}}  {c.detail}")
        for w in c.warnings:
            lines.append(f"       {'':<{width}}  warning: {w}")
    lines.append(f"OVERALL: {'PASS' if report.overall else 'FAIL'}")
    return "\n".join(lines)
