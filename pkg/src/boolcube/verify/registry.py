"""Registry of named checks, one per verified identity or inequality.

Check kinds and their contracts:

* ``identity``    exact integer arithmetic, zero tolerance; any residue
                  fails and indicates an implementation bug or a false
                  statement.
* ``inequality``  floating evaluation with additive slack
                  1e-9 * (1 + |rhs|).
* ``statistical`` never fails; either warn-level sampling checks or
                  report-only conjecture observables whose extremal
                  values are recorded with witnesses.

Statements quantified over an unspecified constant are handled as
constant estimation: the check passes and records the instance-wise
extremal constant in ``observed_constant`` for the sweep aggregator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Union

import numpy as np

from .. import families
from ..calculus import restricted_scaled_tables
from ..core import PseudoBooleanFunction, TruthTable, serialize
from . import _exact

DEFAULT_RHO_GRID = tuple(i / 10 for i in range(11))
DEFAULT_EPS_GRID = tuple(i / 20 for i in range(1, 10))
DEFAULT_FRIEDGUT_EPS = (Fraction(1, 8), Fraction(1, 4), Fraction(1, 2))
DEFAULT_SCALAR_STEP = 0.05

# Cost guards for checks that enumerate subsets of coordinates; callers
# may pass explicit subset lists to go beyond them.
SUBSET_ENUM_CAP = 10
RESTRICTION_ENUM_CAP = 8

LN2 = math.log(2.0)


def _tol(rhs: float) -> float:
    return 1e-9 * (1.0 + abs(rhs))


def ctx_entropy_bits(ctx: "BoolCtx") -> float:
    """Base-2 spectral entropy straight from the exact squared weights."""
    den = float(4 ** ctx.n)
    return -sum((w / den) * math.log2(w / den) for w in ctx.sq if w)


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one check on one function (or one scalar sweep)."""

    id: str
    status: str  # pass | fail | skipped | warn
    slack: Optional[float] = None
    observed_constant: Optional[float] = None
    witness: Optional[dict] = None
    detail: Optional[str] = None

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "status": self.status,
            "slack": self.slack,
            "observed_constant": self.observed_constant,
            "witness": self.witness,
            "detail": self.detail,
        }


class BoolCtx:
    """Lazy per-function cache of the exact quantities checks share."""

    __slots__ = ("n", "size", "bits", "_signs", "_scaled", "_sq", "_zeta",
                 "_piv", "_sizes", "_bins", "_mono")

    def __init__(self, n: int, bits: int):
        self.n = n
        self.size = 1 << n
        self.bits = bits
        self._signs = None
        self._scaled = None
        self._sq = None
        self._zeta = None
        self._piv = None
        self._sizes = None
        self._bins = None
        self._mono = None

    @classmethod
    def from_table(cls, t: TruthTable) -> "BoolCtx":
        return cls(t.n, t.bits)

    def table(self) -> TruthTable:
        return TruthTable(self.n, self.bits)

    @property
    def signs(self) -> list:
        if self._signs is None:
            self._signs = _exact.signs_from_bits(self.bits, self.n)
        return self._signs

    @property
    def scaled(self) -> list:
        if self._scaled is None:
            self._scaled = _exact.fwht(self.signs)
        return self._scaled

    @property
    def sq(self) -> list:
        if self._sq is None:
            self._sq = [c * c for c in self.scaled]
        return self._sq

    @property
    def zeta(self) -> list:
        if self._zeta is None:
            self._zeta = _exact.zeta_superset(self.sq)
        return self._zeta

    @property
    def piv_masks(self) -> list:
        if self._piv is None:
            self._piv = _exact.pivotal_masks(self.signs, self.n)
        return self._piv

    @property
    def piv_sizes(self) -> list:
        if self._sizes is None:
            self._sizes = [m.bit_count() for m in self.piv_masks]
        return self._sizes

    @property
    def bins(self) -> list:
        """4^n-scaled spectral mass per subset size."""
        if self._bins is None:
            bins = [0] * (self.n + 1)
            pc = _exact.popcounts(self.n)
            sq = self.sq
            for s in range(self.size):
                bins[pc[s]] += sq[s]
            self._bins = bins
        return self._bins

    @property
    def total_influence_num(self) -> int:
        return sum(t * w for t, w in enumerate(self.bins))

    @property
    def second_moment_num(self) -> int:
        return sum(t * t * w for t, w in enumerate(self.bins))

    def per_bit_num(self, k: int) -> int:
        return self.zeta[1 << k]

    @property
    def is_constant(self) -> bool:
        return self.sq[0] == 4 ** self.n

    @property
    def mean_zero(self) -> bool:
        return self.scaled[0] == 0

    @property
    def monotone(self) -> bool:
        if self._mono is None:
            self._mono = _exact.is_monotone_signs(self.signs, self.n)
        return self._mono

    @property
    def degree(self) -> int:
        pc = _exact.popcounts(self.n)
        scaled = self.scaled
        return max((pc[s] for s in range(self.size) if scaled[s]), default=0)

    @property
    def max_coef_num(self) -> int:
        return max(abs(c) for c in self.scaled)

    def bfn1(self) -> str:
        return serialize(self.table()).decode("ascii")


class RealCtx:
    """Real-valued function wrapper; only tolerance checks apply."""

    __slots__ = ("n", "size", "values")

    def __init__(self, f: PseudoBooleanFunction):
        self.n = f.n
        self.size = f.size
        self.values = f.values


AnyCtx = Union[BoolCtx, RealCtx]


def _witness(ctx: AnyCtx, params_desc: Optional[dict] = None) -> dict:
    w: dict = {}
    if isinstance(ctx, BoolCtx):
        w["bfn1"] = ctx.bfn1()
    elif isinstance(ctx, RealCtx):
        w["values"] = [float(v) for v in ctx.values]
        w["n"] = ctx.n
    if params_desc:
        w["params"] = params_desc
    return w


def _identity(cid: str, ctx: AnyCtx, residues: list,
              detail: Optional[str] = None) -> CheckReport:
    """Build a report for an exact check from (label, lhs, rhs) triples."""
    for label, lhs, rhs in residues:
        if lhs != rhs:
            return CheckReport(
                cid, "fail", slack=float(lhs - rhs),
                witness=_witness(ctx, {"identity": label}),
                detail=f"{label}: {lhs} != {rhs}",
            )
    return CheckReport(cid, "pass", slack=0.0, detail=detail)


# ---------------------------------------------------------------------------
# Exact identity checks


def _eval_parseval(ctx: BoolCtx, params: dict) -> CheckReport:
    return _identity("parseval", ctx,
                     [("sum of squared coefficients", sum(ctx.sq), 4 ** ctx.n)])


def _eval_influence_spectral(ctx: BoolCtx, params: dict) -> CheckReport:
    size = ctx.size
    piv = ctx.piv_masks
    residues = []
    for k in range(ctx.n):
        b = 1 << k
        count = sum(1 for m in piv if m & b)
        residues.append((f"influence of coordinate {k + 1}",
                         count * size, ctx.per_bit_num(k)))
    residues.append(("total influence vs mean pivotal size",
                     sum(ctx.piv_sizes) * size, ctx.total_influence_num))
    return _identity("influence-spectral", ctx, residues)


def _eval_russo(ctx: BoolCtx, params: dict) -> CheckReport:
    singles = sum(ctx.scaled[1 << k] for k in range(ctx.n))
    return _identity(
        "russo", ctx,
        [("singleton coefficient sum vs total influence",
          singles * ctx.size, ctx.total_influence_num)],
    )


def _eval_derivative_spectrum(ctx: BoolCtx, params: dict) -> CheckReport:
    cid = "dSf-spectrum"
    subsets = params.get("subsets")
    size = ctx.size
    scaled = ctx.scaled
    pc = _exact.popcounts(ctx.n)
    den_n = 4 ** ctx.n
    if subsets is None:
        tables = _exact.derivative_tables(ctx.signs, ctx.n)
        pairs = [(s, tables[s]) for s in range(1, size)]
    else:
        pairs = []
        for s in subsets:
            if not 0 < s < size:
                raise ValueError(f"subset mask {s} out of range")
            g = [0] * size
            sub = s
            while True:
                sign = -1 if sub.bit_count() & 1 else 1
                for x in range(size):
                    g[x] += sign * ctx.signs[x ^ sub]
                if sub == 0:
                    break
                sub = (sub - 1) & s
            pairs.append((s, g))
    for s, g in pairs:
        coef = _exact.fwht(g)
        shift = 1 << pc[s]
        for t in range(size):
            expect = shift * scaled[t] if (t & s) == s else 0
            if coef[t] != expect:
                return CheckReport(
                    cid, "fail", slack=float(coef[t] - expect),
                    witness=_witness(ctx, {"subset": s, "mask": t}),
                    detail=f"derivative spectrum mismatch at S={s}, T={t}",
                )
        comb = sum(v * v for v in g)
        if comb * den_n != ctx.zeta[s] * size * (4 ** pc[s]):
            return CheckReport(
                cid, "fail", slack=0.0,
                witness=_witness(ctx, {"subset": s}),
                detail=f"influence mismatch at S={s}",
            )
    return CheckReport(cid, "pass", slack=0.0)


def _eval_second_order(ctx: BoolCtx, params: dict) -> CheckReport:
    size = ctx.size
    piv = ctx.piv_masks
    residues = []
    for k in range(ctx.n):
        for l in range(k + 1, ctx.n):
            m = (1 << k) | (1 << l)
            count = sum(1 for pm in piv if pm & m == m)
            residues.append((f"pair ({k + 1},{l + 1}) pivotal probability",
                             count * size, ctx.zeta[m]))
    return _identity("second-order-pivotal", ctx, residues)


def _eval_moment_identities(ctx: BoolCtx, params: dict) -> CheckReport:
    size = ctx.size
    sizes = ctx.piv_sizes
    bins = ctx.bins
    first = sum(t * w for t, w in enumerate(bins))
    second_exact = sum((t * (t - 1) // 2) * w for t, w in enumerate(bins))
    upto2 = first + second_exact
    sqm = sum(t * t * w for t, w in enumerate(bins))
    residues = [
        ("mean pivotal size", sum(sizes) * size, first),
        ("order-2 influence", sum(v * (v - 1) // 2 for v in sizes) * size,
         second_exact),
        ("orders up to 2", sum(v * (v + 1) // 2 for v in sizes) * size, upto2),
        ("second moment", sum(v * v for v in sizes) * size, sqm),
    ]
    return _identity("moment-identities", ctx, residues)


def _eval_restriction_identity(ctx: BoolCtx, params: dict) -> CheckReport:
    cid = "restriction-identity"
    free_sets = params.get("free_sets")
    if free_sets is None:
        free_sets = range(1, ctx.size)
    size = ctx.size
    for free_mask in free_sets:
        if not 0 < free_mask < size:
            raise ValueError(f"free mask {free_mask} out of range")
        j = free_mask.bit_count()
        acc = _exact.restriction_square_sums(ctx.signs, ctx.n, free_mask)
        scale = (1 << (ctx.n - j)) * (4 ** j)
        for k in range(ctx.n):
            if not (free_mask >> k) & 1:
                continue
            if acc[k] * (4 ** ctx.n) != ctx.per_bit_num(k) * scale:
                return CheckReport(
                    cid, "fail", slack=0.0,
                    witness=_witness(ctx, {"free_mask": free_mask,
                                           "coordinate": k + 1}),
                    detail=(f"restriction identity broken for J={free_mask}, "
                            f"k={k + 1}"),
                )
    return CheckReport(cid, "pass", slack=0.0)


# ---------------------------------------------------------------------------
# Inequality checks


def _function_values(ctx: AnyCtx) -> np.ndarray:
    if isinstance(ctx, BoolCtx):
        return np.array(ctx.signs, dtype=np.float64)
    return ctx.values.astype(np.float64)


def _eval_hyper(ctx: AnyCtx, params: dict) -> CheckReport:
    cid = "hyper"
    rho_grid = params.get("rho_grid", DEFAULT_RHO_GRID)
    vals = _function_values(ctx)
    size = vals.shape[0]
    coef = vals.copy()
    h = 1
    while h < size:
        v = coef.reshape(-1, 2, h)
        a = v[:, 0, :].copy()
        b = v[:, 1, :]
        v[:, 0, :] = a + b
        v[:, 1, :] = a - b
        h *= 2
    pc = np.array(_exact.popcounts(ctx.n), dtype=np.float64)
    min_slack = math.inf
    max_ratio = None
    for rho in rho_grid:
        damped = coef * np.power(float(rho), pc)
        out = damped.copy()
        h = 1
        while h < size:
            v = out.reshape(-1, 2, h)
            a = v[:, 0, :].copy()
            b = v[:, 1, :]
            v[:, 0, :] = a + b
            v[:, 1, :] = a - b
            h *= 2
        noisy = out / size
        lhs = math.sqrt(float(noisy @ noisy) / size)
        p = 1.0 + float(rho) ** 2
        rhs = float(np.power(np.abs(vals), p).mean()) ** (1.0 / p)
        slack = rhs - lhs
        min_slack = min(min_slack, slack)
        if rhs > 0:
            ratio = lhs / rhs
            max_ratio = ratio if max_ratio is None else max(max_ratio, ratio)
        if rho == 1.0:
            if abs(lhs - rhs) > 1e-12 * max(1.0, abs(rhs)):
                return CheckReport(
                    cid, "fail", slack=slack, observed_constant=max_ratio,
                    witness=_witness(ctx, {"rho": rho}),
                    detail=f"norms differ at rho=1: {lhs} vs {rhs}",
                )
        elif slack < -_tol(rhs):
            return CheckReport(
                cid, "fail", slack=slack, observed_constant=max_ratio,
                witness=_witness(ctx, {"rho": rho}),
                detail=f"contractivity violated at rho={rho}",
            )
    return CheckReport(cid, "pass", slack=min_slack,
                       observed_constant=max_ratio)


def _eval_kkl_edge(ctx: BoolCtx, params: dict) -> CheckReport:
    cid = "kkl-edge"
    den = 4 ** ctx.n
    total_num = ctx.total_influence_num
    if total_num < den:
        return CheckReport(
            cid, "fail", slack=float(total_num - den) / den,
            witness=_witness(ctx),
            detail="total influence below 1 despite zero mean",
        )
    # Mass above twice the total influence is at most 1/2 (the Markov
    # argument underlying the edge bound); exact threshold comparison.
    threshold = Fraction(2 * total_num, den)
    tail = sum(w for t, w in enumerate(ctx.bins) if Fraction(t) > threshold)
    if 2 * tail > den:
        return CheckReport(
            cid, "fail", slack=float(Fraction(den - 2 * tail, 2 * den)),
            witness=_witness(ctx),
            detail="high-degree tail exceeds 1/2",
        )
    max_inf = max(ctx.per_bit_num(k) for k in range(ctx.n))
    total = total_num / den
    observed = -math.log(max_inf / den) / total
    return CheckReport(cid, "pass", slack=float(Fraction(den - 2 * tail, 2 * den)),
                       observed_constant=observed)


def _eval_kkl(ctx: BoolCtx, params: dict) -> CheckReport:
    cid = "kkl"
    den = 4 ** ctx.n
    var_num = den - ctx.sq[0]
    max_num = max(ctx.per_bit_num(k) for k in range(ctx.n))
    if ctx.n * max_num < var_num:
        return CheckReport(
            cid, "fail", slack=float(Fraction(ctx.n * max_num - var_num, den)),
            witness=_witness(ctx),
            detail="max influence below variance / n",
        )
    observed = None
    if ctx.n >= 2:
        observed = (max_num * ctx.n) / (var_num * math.log(ctx.n))
    return CheckReport(cid, "pass", slack=0.0, observed_constant=observed,
                       detail="observed constant is max_k I_k * n / (Var ln n)")


def _eval_friedgut(ctx: BoolCtx, params: dict) -> CheckReport:
    cid = "friedgut"
    eps_list = params.get("friedgut_eps", DEFAULT_FRIEDGUT_EPS)
    den = 4 ** ctx.n
    total = Fraction(ctx.total_influence_num, den)
    pc = _exact.popcounts(ctx.n)
    min_slack = math.inf
    max_ratio = 0.0
    for eps in eps_list:
        eps = Fraction(eps) if not isinstance(eps, Fraction) else eps
        ratio = float(eps / total)
        exponent = float(total / eps)
        thr = (ratio * 4.0 ** (-exponent)) ** (5.0 / 3.0)
        coords = 0
        for k in range(ctx.n):
            if ctx.per_bit_num(k) / den >= thr * (1.0 - 1e-12):
                coords |= 1 << k
        cap = total / eps
        floor_cap = min(int(cap), ctx.n)
        inside = 0
        sub = coords
        while True:
            if pc[sub] <= floor_cap:
                inside += ctx.sq[sub]
            if sub == 0:
                break
            sub = (sub - 1) & coords
        leaked = Fraction(den - inside, den)
        bound = 2 * eps
        if leaked > bound:
            return CheckReport(
                cid, "fail", slack=float(bound - leaked),
                witness=_witness(ctx, {"eps": str(eps)}),
                detail=f"leaked weight {leaked} exceeds {bound}",
            )
        min_slack = min(min_slack, float(bound - leaked))
        max_ratio = max(max_ratio, float(leaked / bound))
    return CheckReport(cid, "pass", slack=min_slack,
                       observed_constant=max_ratio,
                       detail="observed constant is max leaked/(2 eps)")


def _eval_fmei_quad(ctx: BoolCtx, params: dict) -> CheckReport:
    cid = "fmei-quad"
    if ctx.max_coef_num < 1:
        return CheckReport(cid, "fail", slack=-1.0, witness=_witness(ctx),
                           detail="all coefficients vanish")
    den = 4 ** ctx.n
    total = ctx.total_influence_num / den
    observed = None
    detail = "observed constant is -ln(max |coef|) / I^2"
    if total >= 1.0:
        max_coef = ctx.max_coef_num / (1 << ctx.n)
        observed = -math.log(max_coef) / total ** 2
    else:
        detail = "small-influence regime (I < 1): observable suppressed"
    return CheckReport(cid, "pass", slack=0.0, observed_constant=observed,
                       detail=detail)


def _eval_plogp_bound(ctx: BoolCtx, params: dict) -> CheckReport:
    cid = "plogp-bound"
    den = 4 ** ctx.n
    lhs = 0.0
    for k in range(ctx.n):
        infl = ctx.per_bit_num(k) / den
        if infl > 0.0:
            lhs -= infl * math.log(infl)
    rhs = 2.0 * ctx.second_moment_num / den
    slack = rhs - lhs
    if slack < -_tol(rhs):
        return CheckReport(cid, "fail", slack=slack, witness=_witness(ctx),
                           detail="natural-log influence entropy too large")
    observed = lhs / rhs if rhs > 0 else None
    return CheckReport(cid, "pass", slack=slack, observed_constant=observed)


def _eval_fmei_degree(ctx: BoolCtx, params: dict) -> CheckReport:
    cid = "fmei-degree"
    if ctx.max_coef_num < 1:
        return CheckReport(cid, "fail", slack=-1.0, witness=_witness(ctx),
                           detail="all coefficients vanish")
    deg = ctx.degree
    max_coef = ctx.max_coef_num / (1 << ctx.n)
    observed = -math.log(max_coef) / deg if deg else 0.0
    return CheckReport(cid, "pass", slack=0.0, observed_constant=observed,
                       detail="observed constant is -ln(max |coef|) / degree")


def _eval_compose_degree(ctx: BoolCtx, params: dict) -> CheckReport:
    cid = "compose-degree"
    inner = params["inner"]
    outer = ctx.table()
    composed = families.compose(outer, inner)
    inner_ctx = BoolCtx.from_table(inner)
    comp_ctx = BoolCtx.from_table(composed)
    d_outer, d_inner, d_comp = ctx.degree, inner_ctx.degree, comp_ctx.degree
    slack = float(d_outer * d_inner - d_comp)
    if d_comp > d_outer * d_inner:
        return CheckReport(
            cid, "fail", slack=slack,
            witness=_witness(ctx, {"inner_bfn1": inner_ctx.bfn1()}),
            detail=f"degree {d_comp} exceeds product {d_outer * d_inner}",
        )
    if not ctx.is_constant and not inner_ctx.is_constant \
            and d_comp != d_outer * d_inner:
        return CheckReport(
            cid, "warn", slack=slack,
            witness=_witness(ctx, {"inner_bfn1": inner_ctx.bfn1()}),
            detail=(f"strict multiplicativity missed: {d_comp} != "
                    f"{d_outer} * {d_inner}"),
        )
    return CheckReport(cid, "pass", slack=slack)


def _eval_lemma_521(ctx: Optional[AnyCtx], params: dict) -> CheckReport:
    cid = "lemma-521"
    step = params.get("scalar_step", DEFAULT_SCALAR_STEP)
    eps_grid = params.get("eps_grid", DEFAULT_EPS_GRID)
    count = int(round(1.0 / step))
    min_slack = math.inf
    worst = None
    for ib in range(count + 1):
        b = ib * step
        for ia in range(ib + 1):
            a = ia * step
            ra, rb = math.sqrt(a), math.sqrt(b)
            for eps in eps_grid:
                e2 = 2.0 * (1.0 + eps)
                lhs = ((rb + ra) ** e2 + (rb - ra) ** e2) / 2.0 \
                    - a ** (1.0 + eps) - b ** (1.0 + eps)
                rhs = (3.0 * eps + 2.0 * eps * eps) * a \
                    + (b ** eps - a ** eps) * a
                slack = rhs - lhs
                if slack < min_slack:
                    min_slack = slack
                    worst = (a, b, eps)
                if slack < -_tol(rhs):
                    return CheckReport(
                        cid, "fail", slack=slack,
                        witness={"params": {"a": a, "b": b, "eps": eps}},
                        detail=f"scalar bound violated at a={a}, b={b}, eps={eps}",
                    )
    detail = None
    if worst is not None:
        detail = "tightest at a=%.2f, b=%.2f, eps=%.2f" % worst
    return CheckReport(cid, "pass", slack=min_slack, detail=detail)


def _moment_rhs(infl: float, eps: float) -> float:
    """-I_k (3e + 2e^2 + (I_k/4)^-e - 1); the limit value 0 at I_k = 0."""
    if infl <= 0.0:
        return 0.0
    return -infl * (3.0 * eps + 2.0 * eps * eps
                    + (infl / 4.0) ** (-eps) - 1.0)


def _eval_moment_step(ctx: BoolCtx, params: dict) -> CheckReport:
    cid = "moment-step"
    eps_grid = params.get("eps_grid", DEFAULT_EPS_GRID)
    pairs = params.get("pairs")
    table = ctx.table()
    size = ctx.size
    den = 4 ** ctx.n
    if pairs is None:
        pairs = [(v1, k) for k in range(ctx.n) for v1 in range(size)
                 if not (v1 >> k) & 1]
    sq_tables: dict = {}
    moments: dict = {}

    def sq_table(free_mask: int) -> np.ndarray:
        got = sq_tables.get(free_mask)
        if got is None:
            t = restricted_scaled_tables(table, free_mask).astype(np.float64)
            got = (t * t) / float(4 ** free_mask.bit_count())
            sq_tables[free_mask] = got
        return got

    def moment(free_mask: int, eps: float) -> float:
        key = (free_mask, eps)
        got = moments.get(key)
        if got is None:
            sq = sq_table(free_mask)
            got = float(np.power(sq, 1.0 + eps).sum()) / sq.shape[0]
            moments[key] = got
        return got

    min_slack = math.inf
    for v1, k in pairs:
        if (v1 >> k) & 1:
            raise ValueError(f"coordinate {k + 1} already free in {v1}")
        v2 = v1 | (1 << k)
        infl = ctx.per_bit_num(k) / den
        for eps in eps_grid:
            lhs = moment(v2, eps) - moment(v1, eps)
            rhs = _moment_rhs(infl, eps)
            slack = lhs - rhs
            min_slack = min(min_slack, slack)
            if slack < -_tol(rhs):
                return CheckReport(
                    cid, "fail", slack=slack,
                    witness=_witness(ctx, {"free_mask": v1,
                                           "coordinate": k + 1, "eps": eps}),
                    detail=(f"restricted-moment step violated at V1={v1}, "
                            f"k={k + 1}, eps={eps}"),
                )
    return CheckReport(cid, "pass", slack=min_slack)


def _eval_ent_bound(ctx: BoolCtx, params: dict) -> CheckReport:
    cid = "ent-bound"
    eps_grid = params.get("eps_grid", DEFAULT_EPS_GRID)
    den = float(4 ** ctx.n)
    weights = [w / den for w in ctx.sq if w]
    ent = ctx_entropy_bits(ctx)
    total = ctx.total_influence_num / den
    infls = [ctx.per_bit_num(k) / den for k in range(ctx.n)]
    rhs = (3.0 * total
           + sum(i * math.log(4.0 / i) for i in infls if i > 0)) / LN2
    min_slack = rhs - ent
    if min_slack < -_tol(rhs):
        return CheckReport(cid, "fail", slack=min_slack, witness=_witness(ctx),
                           detail="entropy exceeds the explicit influence bound")
    # Intermediate restricted-moment lower bound on the full cube, where
    # the moment is just the (1+eps)-power sum of the squared weights.
    for eps in eps_grid:
        direct = sum(w ** (1.0 + eps) for w in weights)
        lower = 1.0 - (3.0 * eps + 2.0 * eps * eps) * total \
            - sum(((i / 4.0) ** (-eps) - 1.0) * i for i in infls if i > 0)
        slack = direct - lower
        min_slack = min(min_slack, slack)
        if slack < -_tol(lower):
            return CheckReport(
                cid, "fail", slack=slack,
                witness=_witness(ctx, {"eps": eps}),
                detail=f"power-sum lower bound violated at eps={eps}",
            )
    observed = ent / rhs if rhs > 0 else None
    return CheckReport(cid, "pass", slack=min_slack,
                       observed_constant=observed,
                       detail="observed constant is entropy / explicit bound")


ENT_MOMENT_FACTOR = (3.0 + math.log(4.0) + 2.0) / LN2


def _eval_ent_moment_bound(ctx: BoolCtx, params: dict) -> CheckReport:
    cid = "ent-moment-bound"
    den = float(4 ** ctx.n)
    ent = ctx_entropy_bits(ctx)
    m2 = ctx.second_moment_num / den
    rhs = ENT_MOMENT_FACTOR * m2
    slack = rhs - ent
    if slack < -_tol(rhs):
        return CheckReport(cid, "fail", slack=slack, witness=_witness(ctx),
                           detail="entropy exceeds the conservative moment bound")
    observed = ent / m2 if m2 > 0 else None
    return CheckReport(cid, "pass", slack=slack, observed_constant=observed,
                       detail="observed constant is entropy / E|S|^2")


# ---------------------------------------------------------------------------
# Report-only conjecture observables


def _eval_fei_ratio(ctx: BoolCtx, params: dict) -> CheckReport:
    ent = ctx_entropy_bits(ctx)
    total = ctx.total_influence_num / float(4 ** ctx.n)
    return CheckReport("fei-ratio", "pass", observed_constant=ent / total,
                       detail="report-only: entropy / influence ratio")


def _eval_fmei_ratio(ctx: BoolCtx, params: dict) -> CheckReport:
    max_coef = ctx.max_coef_num / (1 << ctx.n)
    total = ctx.total_influence_num / float(4 ** ctx.n)
    return CheckReport("fmei-ratio", "pass",
                       observed_constant=-math.log(max_coef) / total,
                       detail="report-only: -ln(max |coef|) / influence")


# ---------------------------------------------------------------------------
# Applicability predicates


def _needs_nonconstant(ctx: BoolCtx, params: dict) -> Optional[str]:
    if ctx.is_constant:
        return "requires a non-constant function"
    return None


def _needs_mean_zero(ctx: BoolCtx, params: dict) -> Optional[str]:
    if not ctx.mean_zero:
        return "requires zero mean"
    return None


def _needs_monotone(ctx: BoolCtx, params: dict) -> Optional[str]:
    if not ctx.monotone:
        return "requires a monotone function"
    return None


def _needs_inner(ctx: BoolCtx, params: dict) -> Optional[str]:
    if not isinstance(params.get("inner"), TruthTable):
        return "requires an inner function parameter"
    return None


def _cap_subsets(ctx: BoolCtx, params: dict) -> Optional[str]:
    if params.get("subsets") is None and ctx.n > SUBSET_ENUM_CAP:
        return f"requires n <= {SUBSET_ENUM_CAP} or an explicit subset list"
    return None


def _cap_moment(ctx: BoolCtx, params: dict) -> Optional[str]:
    if params.get("pairs") is None and ctx.n > SUBSET_ENUM_CAP:
        return f"requires n <= {SUBSET_ENUM_CAP} or an explicit pair list"
    return None


def _cap_restriction(ctx: BoolCtx, params: dict) -> Optional[str]:
    if params.get("free_sets") is None and ctx.n > RESTRICTION_ENUM_CAP:
        return f"requires n <= {RESTRICTION_ENUM_CAP} or explicit free sets"
    return None


@dataclass(frozen=True)
class Check:
    """A named, registered verification check."""

    id: str
    kind: str  # identity | inequality | statistical
    description: str
    evaluator: Callable
    applicability: Optional[Callable] = None
    accepts_real: bool = False
    per_function: bool = True
    extreme: Optional[str] = None  # aggregation direction for the constant


_CHECKS = [
    Check("parseval", "identity",
          "squared Fourier coefficients sum to the mean square",
          _eval_parseval),
    Check("influence-spectral", "identity",
          "pivotality counts equal spectral superset sums, per bit and total",
          _eval_influence_spectral),
    Check("russo", "identity",
          "for monotone functions the singleton coefficient sum is the "
          "total influence (derivative of the biased mean at 1/2)",
          _eval_russo, applicability=_needs_monotone),
    Check("hyper", "inequality",
          "noise-operator 2-norm bounded by the (1+rho^2)-norm",
          _eval_hyper, accepts_real=True, extreme="max"),
    Check("kkl-edge", "inequality",
          "zero-mean: total influence >= 1, high tail <= 1/2, and the "
          "max-influence exponential constant is recorded",
          _eval_kkl_edge, applicability=_needs_mean_zero, extreme="max"),
    Check("kkl", "inequality",
          "some coordinate influence reaches order Var log(n)/n; the "
          "instance constant is recorded",
          _eval_kkl, applicability=_needs_nonconstant, extreme="min"),
    Check("friedgut", "inequality",
          "spectral mass concentrates on low-degree subsets of the "
          "high-influence coordinates, leak at most 2 eps",
          _eval_friedgut, applicability=_needs_nonconstant, extreme="max"),
    Check("fmei-quad", "inequality",
          "largest coefficient at least exp(-c I^2); constant recorded",
          _eval_fmei_quad, applicability=_needs_nonconstant, extreme="max"),
    Check("dSf-spectrum", "identity",
          "order-|S| derivatives carry exactly the superset coefficients",
          _eval_derivative_spectrum, applicability=_cap_subsets),
    Check("second-order-pivotal", "identity",
          "pair influence equals the probability both coordinates pivot",
          _eval_second_order),
    Check("moment-identities", "identity",
          "pivotal-set size moments equal spectral-sample size moments",
          _eval_moment_identities),
    Check("plogp-bound", "inequality",
          "influence plogp sum (natural log) at most twice E|S|^2",
          _eval_plogp_bound, extreme="max"),
    Check("fmei-degree", "inequality",
          "largest coefficient at least exp(-c deg); constant recorded",
          _eval_fmei_degree, applicability=_needs_nonconstant, extreme="max"),
    Check("compose-degree", "inequality",
          "block composition multiplies degrees (hard bound <=, strict "
          "equality reported when missed)",
          _eval_compose_degree, applicability=_needs_inner),
    Check("restriction-identity", "identity",
          "averaged restricted spectra reproduce each coordinate influence",
          _eval_restriction_identity, applicability=_cap_restriction),
    Check("lemma-521", "inequality",
          "scalar two-point inequality behind the restricted-moment step",
          _eval_lemma_521, per_function=False, extreme="min"),
    Check("moment-step", "inequality",
          "adding one free coordinate lowers the restricted moment by at "
          "most the influence-controlled step",
          _eval_moment_step, applicability=_cap_moment, extreme="min"),
    Check("ent-bound", "inequality",
          "entropy at most (3 I + sum I_k ln(4/I_k)) / ln 2, with the "
          "power-sum lower bound on the way",
          _eval_ent_bound, extreme="max"),
    Check("ent-moment-bound", "inequality",
          "entropy at most a universal multiple of E|S|^2",
          _eval_ent_moment_bound, extreme="max"),
    Check("fei-ratio", "statistical",
          "report-only: entropy / influence (open conjecture observable)",
          _eval_fei_ratio, applicability=_needs_nonconstant, extreme="max"),
    Check("fmei-ratio", "statistical",
          "report-only: -ln(max coefficient) / influence",
          _eval_fmei_ratio, applicability=_needs_nonconstant, extreme="max"),
]

REGISTRY = {c.id: c for c in _CHECKS}


def all_check_ids() -> list:
    return [c.id for c in _CHECKS]


def get_check(check_id: str) -> Check:
    try:
        return REGISTRY[check_id]
    except KeyError:
        raise ValueError(f"unknown check id {check_id!r}") from None


def make_context(f) -> AnyCtx:
    if isinstance(f, TruthTable):
        return BoolCtx.from_table(f)
    if isinstance(f, PseudoBooleanFunction):
        return RealCtx(f)
    raise ValueError(f"cannot build a check context from {type(f).__name__}")


def run_check(check_id: str, f=None, params: Optional[dict] = None) -> CheckReport:
    """Run one named check; returns a report, never raises on math outcomes."""
    check = get_check(check_id)
    params = dict(params or {})
    if not check.per_function:
        return check.evaluator(None, params)
    if f is None:
        raise ValueError(f"check {check_id!r} needs a function")
    ctx = f if isinstance(f, (BoolCtx, RealCtx)) else make_context(f)
    if isinstance(ctx, RealCtx) and not check.accepts_real:
        return CheckReport(check_id, "skipped",
                           detail="requires a Boolean truth table")
    if check.applicability is not None:
        reason = check.applicability(ctx, params)
        if reason:
            return CheckReport(check_id, "skipped", detail=reason)
    return check.evaluator(ctx, params)
