"""The unconditional constant tower and the two-branch lower bound for S(A, P(z)).

Conventions used throughout: ``L = log N`` (or ``log X2``), ``l = log x2`` with
``x2(N) = N / log^5 N`` so that ``l = L - 5 log L``, and ``t = log y`` for the
suprema over ``y >= x2(X2)``.  Huge quantities such as ``X2`` itself never
appear; every formula is rewritten in terms of these logarithms.

Suprema over rays are certified with :func:`almostprime.rigor.ray_sup`; each
summand carries an explicit argument for its tail bound (see the ``_tail``
helpers below).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field, fields
from decimal import Decimal
from typing import Optional

from . import primes, sieve_fns
from .conditions import Condition, ConditionFailed, check, check_magnitude, first_failure
from .rigor import (
    DomainError,
    Enclosure,
    Magnitude,
    RayTerm,
    e_gamma,
    enc,
    fundamental_constants,
    get_precision,
    mertens_constant,
    monotone_term,
    power_exp_tail,
    ray_sup,
)

R1 = Decimal("2.0452")
SIEGEL_FREE_MODULUS = Decimal(400000)
GOLDBACH_LIMIT = Magnitude.parse("4e18")

# Mertens-type bounds: sum_{p<x} 1/p = log log x + M + err / log x
MERTENS_LOWER = Decimal("2.964e-6")  # x >= 2
MERTENS_UPPER_SMALL = Decimal("1.445e-2")  # x > e^8.9
MERTENS_UPPER_LARGE = Decimal("2.588e-6")  # x > 10^12

# prod_{u<=p<z} (1 - 1/(p-1))^{-1} < (1 + eps(u)) log z / log u
EPSILON_VARIANTS = {
    "u30": (Decimal("1.31287e-2"), Decimal("3.01e-6"), Decimal(30), Magnitude.parse("e8.9")),
    "u400": (Decimal("5.52843e-4"), Decimal("2.97e-6"), Decimal(400), Magnitude.parse("1e12")),
}
EPSILON_CEILINGS = {"u30": Decimal("76.16387"), "u400": Decimal("1807.21138")}

NORMALIZERS = ("e_gamma", "e_minus_gamma")


def _d(x) -> Decimal:
    return x if isinstance(x, Decimal) else Decimal(str(x))


def _mag(x) -> Magnitude:
    if isinstance(x, Enclosure):
        raise TypeError("pass thresholds as Magnitude")
    return Magnitude.of(x)


# --- parameters -----------------------------------------------------------------------


@dataclass(frozen=True)
class PNTAPRow:
    """A parameter row (Y0, alpha1, alpha2, C) for the explicit prime number
    theorem in arithmetic progressions, valid for x >= exp(exp(Y0))."""

    Y0: Decimal
    alpha1: Decimal
    alpha2: Decimal
    C: Decimal

    def __post_init__(self) -> None:
        for name in ("Y0", "alpha1", "alpha2", "C"):
            object.__setattr__(self, name, _d(getattr(self, name)))
        if min(self.Y0, self.alpha1, self.alpha2, self.C) <= 0:
            raise DomainError("PNT-AP row entries must be positive")
        if self.alpha1 < self.alpha2:
            raise DomainError("PNT-AP row needs alpha1 >= alpha2")


def stitch_pntap_rows(row_a: PNTAPRow, row_b: PNTAPRow) -> PNTAPRow:
    """Merge a row valid from exp(exp(Y0_a)) with a stronger-decay row valid from
    exp(exp(Y0_b)).

    On exp(exp(Y0_a)) <= x <= exp(exp(Y0_b)) the bound C_a / log^{a2_a} x is at most
    C_a e^{Y0_b (a2_b - a2_a)} / log^{a2_b} x, so the merged constant is the larger
    of that and C_b, rounded up in the second decimal.
    """
    if row_a.alpha1 != row_b.alpha1:
        raise DomainError("stitched rows must share alpha1")
    if row_a.Y0 == row_b.Y0 and row_a.alpha2 == row_b.alpha2:
        return row_a if row_a.C >= row_b.C else row_b
    if not (row_a.alpha2 < row_b.alpha2 and row_a.Y0 <= row_b.Y0):
        raise DomainError("first row must cover smaller x with the weaker decay")
    lifted = enc(row_a.C) * (enc(row_b.Y0) * (row_b.alpha2 - row_a.alpha2)).exp()
    C = max(lifted.hi, row_b.C)
    C = C.quantize(Decimal("0.01"), rounding="ROUND_CEILING")
    return PNTAPRow(row_a.Y0, row_a.alpha1, row_b.alpha2, C)


@dataclass(frozen=True)
class UncondParams:
    X2: Magnitude
    delta: Decimal
    alpha: Decimal
    M: int
    u: Decimal
    row: PNTAPRow
    epsilon: Enclosure  # the sieve-table epsilon whose C1, C2 are supplied
    C1_eps: Optional[Enclosure] = None
    C2_eps: Optional[Enclosure] = None
    use_strong_beta: bool = True
    conservative_p2: bool = False
    normalizer: str = "e_gamma"
    c_alpha_scale: Optional[Decimal] = None
    R1: Decimal = R1

    def __post_init__(self) -> None:
        object.__setattr__(self, "X2", _mag(self.X2))
        for name in ("delta", "alpha", "u", "R1"):
            object.__setattr__(self, name, _d(getattr(self, name)))
        object.__setattr__(self, "epsilon", enc(self.epsilon))
        if not 0 < self.delta < 2:
            raise DomainError("delta must lie in (0, 2)")
        if self.alpha <= 0:
            raise DomainError("alpha must be positive")
        if self.M < 1:
            raise DomainError("M must be a positive integer")
        if self.normalizer not in NORMALIZERS:
            raise DomainError(f"normalizer must be one of {NORMALIZERS}")
        if self.X2.is_infinite:
            raise DomainError("X2 must be finite")

    @property
    def alpha1(self) -> Decimal:
        return self.row.alpha1

    @property
    def L0(self) -> Enclosure:
        return self.X2.log()

    @property
    def l0(self) -> Enclosure:
        return log_x2(self.L0)


def log_x2(L: Enclosure) -> Enclosure:
    """log x2(N) = log N - 5 log log N."""
    return L - 5 * L.log()


def normalizer_value(kind: str = "e_gamma") -> Enclosure:
    """2 e^{+-gamma} times the twin prime constant (lower bound for U_N)."""
    twin = fundamental_constants().twin_prime
    eg = e_gamma()
    factor = eg if kind == "e_gamma" else enc(1) / eg
    return 2 * factor * twin


# --- Mertens-type and product bounds --------------------------------------------------


def mertens_lower(x: Enclosure | int) -> Enclosure:
    """log log x + M - 2.964e-6 / log x (a lower bound for sum_{p<x} 1/p, x >= 2)."""
    lx = enc(x).log()
    return lx.log() + mertens_constant() - enc(MERTENS_LOWER) / lx


def mertens_upper(x: Enclosure | int) -> Enclosure:
    """Upper bound for sum_{p<x} 1/p for x > e^8.9 (sharper constant beyond 10^12)."""
    xe = enc(x)
    lx = xe.log()
    if lx.lo <= Decimal("8.9"):
        raise DomainError("upper Mertens bound needs x > e^8.9")
    const = MERTENS_UPPER_LARGE if xe.lo > Decimal(10) ** 12 else MERTENS_UPPER_SMALL
    return lx.log() + mertens_constant() + enc(const) / lx


def epsilon_of_u(u: Decimal | str | int, variant: str = "u400") -> Enclosure:
    """eps(u) = a + b / log u for the chosen lemma variant."""
    a, b, floor, _ = EPSILON_VARIANTS[variant]
    u = _d(u)
    if u <= floor:
        raise DomainError(f"{variant} needs u > {floor}")
    return enc(a) + enc(b) / enc(u).log()


def epsilon_ceiling_condition(u, variant: str, table_epsilon: Enclosure) -> Condition:
    """eps(u) must stay below the sieve-table epsilon (itself below the printed ceiling)."""
    ceiling = enc(1) / EPSILON_CEILINGS[variant]
    bound = enc(table_epsilon).min(ceiling)
    return check(f"eps(u) < table epsilon ({variant})", epsilon_of_u(u, variant), "<", bound,
                 "epsilon ceiling", "constant in N")


def reciprocal_product_bound(u: int, z: int, variant: str = "u30") -> Enclosure:
    """(1 + eps(u)) log z / log u, the bound for prod_{u<=p<z} (1 - 1/(p-1))^{-1}."""
    _, _, floor, z_floor = EPSILON_VARIANTS[variant]
    if not (floor < u < z):
        raise DomainError(f"{variant} needs {floor} < u < z")
    if enc(z).log().lo <= z_floor.log().hi:
        raise DomainError(f"{variant} needs z > {z_floor}")
    return (1 + epsilon_of_u(u, variant)) * enc(z).log() / enc(u).log()


# --- Siegel-zero bound ----------------------------------------------------------------


def _nu_strong(t: Enclosure, alpha1: Decimal, r1: Decimal) -> Enclosure:
    """1 / (2 R1 log Q1) with log Q1 = alpha1 log t."""
    return enc(1) / (2 * enc(r1) * alpha1 * t.log())


def _nu_zero_free(t: Enclosure, delta: Decimal) -> Enclosure:
    """100 / (sqrt(K0) log^2 K0) with K0 = t^delta."""
    K0 = t ** enc(delta)
    return enc(100) / (K0.sqrt() * K0.log() ** 2)


def _strong_limit(delta: Decimal) -> Decimal:
    """Largest t with t^delta <= 4e5 (rounded down)."""
    return (enc(SIEGEL_FREE_MODULUS).log() / delta).exp().lo


def nu_at(t: Enclosure, delta: Decimal, alpha1: Decimal, r1: Decimal, strong: bool) -> Enclosure:
    """nu as a function of t = log x2 (K0 = t^delta, Q1 = t^alpha1)."""
    s = _nu_strong(t, alpha1, r1)
    if strong and t.hi <= _strong_limit(delta):
        return s
    return s.min(_nu_zero_free(t, delta))


def beta0_upper(N: Magnitude | Enclosure, params: UncondParams) -> Enclosure:
    """1 - nu(N), the bound for a possible exceptional zero below level Q1(x2(N))."""
    L = N.log()
    t = log_x2(L)
    if (t ** enc(params.delta)).lo <= 1 or t.lo <= 1:
        raise DomainError("beta0 bound needs K0, Q1 > 1")
    return 1 - nu_at(t, params.delta, params.alpha1, params.R1, params.use_strong_beta)


def mathcal_E(y: Enclosure, row: PNTAPRow) -> Enclosure:
    """The four-term error E(y) used inside p2."""
    y = enc(y)
    if y.lo < Decimal(10) ** 6:
        raise DomainError("E(y) needs y >= 1e6")
    t = y.log()
    a1 = row.alpha1
    lx2 = log_x2(t)
    return (
        4 * y * t ** Decimal("4.5") / lx2 ** enc(a1)
        + 4 * y / t ** enc(a1 - Decimal("4.5"))
        + 18 * y ** (enc(11) / 12) / t ** enc((a1 - 9) / 2)
        + enc("2.5") * y ** (enc(5) / 6) * t ** Decimal("5.5")
    )


# --- ray terms in t = log y -------------------------------------------------------------


def _pe_term(name: str, coef: Enclosure, a: Decimal, b: Decimal, d: Decimal = Decimal(0)) -> RayTerm:
    """coef * t^a * exp(b t + d sqrt t)."""

    def value(T: Enclosure) -> Enclosure:
        expo = T * b
        if d:
            expo = expo + T.sqrt() * d
        return coef * T ** enc(a) * expo.exp()

    return monotone_term(name, value, power_exp_tail(a, b, d))


def _beta_term(name: str, coef: Enclosure, delta: Decimal, alpha1: Decimal, r1: Decimal, strong_mode: str) -> RayTerm:
    """coef * t^2 e^{-nu(t) t} / (1 - nu(t)), bounding log^2 y * y^{beta0} / (y beta0).

    ``strong_mode``: "limited" uses the exceptional-zero-free range up to K0 = 4e5,
    "always" uses the sharper bound everywhere, "never" uses the minimum.
    Nonincreasing beyond t* when t nu(t) has derivative at least 2/t for every
    active branch; both t/(k log t) and c t^e / log^2 t have derivatives whose
    ratio to 2/t increases, so checking at t* suffices.  The factor
    1/(1 - nu) decreases since nu does.  Under "limited" the bound jumps up at
    the end of the zero-free range, so no tail is certified before it.
    """
    k = 2 * enc(r1) * alpha1
    t_lim = _strong_limit(delta)
    e = 1 - delta / 2

    def nu(T: Enclosure) -> Enclosure:
        s = _nu_strong(T, alpha1, r1)
        if strong_mode == "always":
            return s
        if strong_mode == "limited" and T.hi <= t_lim:
            return s
        return s.min(_nu_zero_free(T, delta))

    def value(T: Enclosure) -> Enclosure:
        n = nu(T)
        return coef * T**2 * (-(T * n)).exp() / (1 - n)

    def strong_branch_ok(t: Enclosure) -> bool:
        lt = t.log()
        return (t * (1 - 1 / lt) / (k * lt)).lo >= 2

    def zero_free_branch_ok(t: Enclosure) -> bool:
        lt = t.log()
        if (lt * e).lo <= 2:
            return False
        c = enc(100) / (enc(delta) ** 2)
        return (c * t ** enc(e) * (e - 2 / lt) / lt**2).lo >= 2

    def tail(t_star: Decimal) -> Optional[Enclosure]:
        t = enc(t_star)
        if not strong_branch_ok(t):
            return None
        if strong_mode == "limited" and t_star < t_lim:
            return None
        if strong_mode != "always" and not zero_free_branch_ok(t):
            return None
        return value(t)

    breaks = (t_lim,) if strong_mode == "limited" else ()
    return RayTerm(name, value, tail, breaks)


def _E_main_term(coef: Enclosure, alpha1: Decimal) -> RayTerm:
    """coef * t^6.5 / (t - 5 log t)^alpha1.

    t * (log-derivative) = 6.5 - alpha1 (t - 5)/(t - 5 log t) <= 6.5 - alpha1
    once log t >= 1 and t > 5 log t.
    """

    def value(T: Enclosure) -> Enclosure:
        return coef * T ** Decimal("6.5") / log_x2(T) ** enc(alpha1)

    def ok(t_star: Decimal) -> bool:
        t = enc(t_star)
        return alpha1 >= Decimal("6.5") and t.log().lo >= 1 and log_x2(t).lo > 0

    return monotone_term("E: t^6.5 / log^a1 x2", value, ok)


def p2_terms(params: UncondParams, strong_mode: str) -> list[RayTerm]:
    row = params.row
    a1, a2 = row.alpha1, row.alpha2
    log_q1 = a1 * params.l0.log()  # log Q1(x2(X2)), fixed
    big = enc("1.1") * log_q1
    terms = [
        _pe_term("C-term", big * row.C, 2 - a2, Decimal(0)),
        _beta_term("beta0-term", big, params.delta, a1, params.R1, strong_mode),
        _E_main_term(enc(108), a1),
        _pe_term("E: t^(6.5-a1)", enc(108), Decimal("6.5") - a1, Decimal(0)),
        _pe_term("E: y^(11/12)", enc(486), 2 - (a1 - 9) / 2, (enc(-1) / 12).hi),
        _pe_term("E: y^(5/6)", enc("67.5"), Decimal("7.5"), (enc(-1) / 6).hi),
        _pe_term("sqrt-term", enc(1) / (2 * enc(2).log()), 4 - a1, Decimal("-0.5")),
        _pe_term("cube-term", enc("0.4"), Decimal(5), Decimal(-1)),
    ]
    if params.conservative_p2:
        terms.append(_pe_term("stray term", enc("18.78"), Decimal("2.515"), Decimal(0), Decimal("-0.8274")))
    return terms


def c1_terms(params: UncondParams) -> list[RayTerm]:
    row = params.row
    a1, a2 = row.alpha1, row.alpha2
    k = 2 * enc(params.R1) * a1

    def beta_value(T: Enclosure) -> Enclosure:
        n = enc(1) / (k * T.log())
        return T**2 * (-(T * n)).exp() / (1 - n)

    def beta_ok(t_star: Decimal) -> bool:
        # log-derivative <= 2/t - (1 - 1/log t)/(k log t); the second part times t/2 increases
        t = enc(t_star)
        lt = t.log()
        return (t * (1 - 1 / lt) / (k * lt)).lo >= 2

    return [
        _pe_term("C-term", enc(row.C), 2 - a2, Decimal(0)),
        monotone_term("beta0-term", beta_value, beta_ok),
        _pe_term("Q1/sqrt(y)", enc("1.02"), 2 + a1, Decimal("-0.5")),
        _pe_term("Q1/y^(2/3)", enc(3), 2 + a1, Decimal(-2) / 3),
        _pe_term("zero-density term", enc(34), Decimal("3.52"), Decimal(0), Decimal("-0.8")),
    ]


# --- ray terms in L = log N -----------------------------------------------------------------

_G_MIN = Decimal("1.19")  # e^gamma x + 2.5/x is increasing for x >= 1.1848...


def _c3_term(params: UncondParams) -> RayTerm:
    delta, a1 = params.delta, params.alpha1
    eg = e_gamma()

    def pieces(L: Enclosure):
        w = L.log()
        mu = w.log()
        l = log_x2(L)
        q = a1 * l.log()
        lam = (l ** enc(delta)).log().log()
        H = (eg * lam + enc("2.5") / lam) / mu
        F2 = enc(3) / (2 * L) + (L + q) / (L - q)
        F3 = (L / l) ** enc(delta)
        T2 = enc("1.3841") * L ** enc(2 + delta) * (-L).exp() / (w * mu)
        return H, F2, F3, T2

    def value(L: Enclosure) -> Enclosure:
        H, F2, F3, T2 = pieces(L)
        return H * F2 * F3 + T2

    def tail(L_star: Decimal) -> Optional[Enclosure]:
        # sup over [L*, oo) of each positive factor, see the module notes
        L = enc(L_star)
        w = L.log()
        mu = w.log()
        gap = 1 - 5 * w / L  # 1 - 5 w e^{-w}
        if w.lo <= 1 or gap.lo <= 0 or (L - a1 * w).lo <= 0 or L.lo <= 2 + delta or mu.lo <= 0:
            return None
        c_hi = enc(delta).log()
        c_lo = c_hi + (1 + gap.log() / w).log()
        if (mu + c_lo).lo <= 0:
            return None
        H = eg + (eg * c_hi / mu).max(0) + enc("2.5") / (mu * (mu + c_lo))
        F2 = enc(3) / (2 * L) + (L + a1 * w) / (L - a1 * w)
        F3 = (L / log_x2(L)) ** enc(delta)
        T2 = enc("1.3841") * L ** enc(2 + delta) * (-L).exp() / (w * mu)
        return H * F2 * F3 + T2

    return RayTerm("c3 bracket", value, tail)


def _a1_term(params: UncondParams, c2: Enclosure) -> RayTerm:
    delta, a1 = params.delta, params.alpha1
    coef = c2 * enc("1.3841")

    def value(L: Enclosure) -> Enclosure:
        mu = L.log().log()
        lam = a1 * log_x2(L).log()
        return coef * lam / (L ** enc(2 - delta) * mu * lam.log())

    def tail(L_star: Decimal) -> Optional[Enclosure]:
        # Lambda = a1 log l <= a1 w and x/log x increases for x >= e
        L = enc(L_star)
        w = L.log()
        mu = w.log()
        if (a1 * log_x2(L).log()).lo < Decimal("2.72") or ((2 - delta) * w).lo < 1 or mu.lo <= 0:
            return None
        aw = a1 * w
        return coef * aw / (L ** enc(2 - delta) * mu * aw.log())

    return RayTerm("a1 bracket", value, tail)


def _a_term(params: UncondParams) -> RayTerm:
    delta, a1 = params.delta, params.alpha1
    eg = e_gamma()
    inv_twin = enc(1) / fundamental_constants().twin_prime

    def g(lam: Enclosure) -> Enclosure:
        return eg * lam + enc("2.5") / lam

    def value(L: Enclosure) -> Enclosure:
        mu = L.log().log()
        lam = (a1 * log_x2(L).log()).log()
        return mu / L ** enc(delta) * inv_twin * g(lam)

    def tail(L_star: Decimal) -> Optional[Enclosure]:
        L = enc(L_star)
        w = L.log()
        mu = w.log()
        lam_true = (a1 * log_x2(L).log()).log()
        lam_up = (a1 * w).log()
        if lam_true.lo < _G_MIN or mu.lo <= 0:
            return None
        slope = 1 / (w * mu) + 1 / (w * lam_up)
        if slope.hi > delta:
            return None
        return mu / L ** enc(delta) * inv_twin * g(lam_up)

    return RayTerm("a bracket", value, tail)


# --- xi -------------------------------------------------------------------------------------


def xi(z0: Magnitude | Enclosure | int | str, M: int, X2: Magnitude | None = None) -> Enclosure:
    """Smallest certified xi with |V(z) log z / U_N - 1| <= xi / log^2 N for z = N^{1/M} >= z0.

    The four factors (1 + theta_i eps_i) deviate from 1 by at most
    prod(1 + eps_i) - 1, with eps = 1/(2 log^2 z), 2/z, 8 log N/z, 1/(z-1).
    Times log^2 N = M^2 log^2 z this is M^2/2 plus terms (log z)^a / z^k with
    a <= 3, k >= 1, all decreasing once log z > 3, so z = z0 is the worst case.
    """
    if isinstance(z0, (Magnitude, str)):
        lz = Magnitude.of(z0).log()
    else:
        lz = enc(z0).log()
    if X2 is not None and (X2.log() / M).lo < lz.hi and (X2.log() / M).hi < lz.lo:
        raise DomainError("z0 exceeds X2^{1/M}")
    if lz.lo < enc(285).log().hi:
        raise DomainError("xi needs z0 >= 285")
    z = lz.exp()
    L = lz * M
    eps = [enc(1) / (2 * lz**2), enc(2) / z, 8 * L / z, enc(1) / (z - 1)]
    prod = enc(1)
    for e in eps:
        prod = prod * (1 + e)
    dev = prod - 1
    if dev.hi >= 1:
        raise DomainError("z0 too small: product deviation reaches 1")
    return dev * L**2


# --- the tower ------------------------------------------------------------------------------


@dataclass(frozen=True)
class ConstantSet:
    log_x2X2: Enclosure
    K0: Enclosure
    Q1_log: Enclosure
    nu: Enclosure
    beta0_upper: Enclosure
    epsilon: Enclosure
    xi: Enclosure
    mathcalE_over_y: Enclosure
    p2: Enclosure
    p1: Enclosure
    p: Enclosure
    p_star: Enclosure
    c1: Enclosure
    c: Enclosure
    c2: Enclosure
    c3: Enclosure
    c4: Enclosure
    c4_star: Enclosure
    a1: Enclosure
    a: Enclosure
    epsilon0: Enclosure
    m_bar: Enclosure
    R1: Enclosure
    U_N_normalizer: Enclosure

    def items(self) -> list[tuple[str, Enclosure]]:
        return [(f.name, getattr(self, f.name)) for f in fields(self)]


def _upper(x: Enclosure) -> Enclosure:
    """[0, hi]: a supremum certified only from above."""
    return Enclosure(Decimal(0), x.hi)


def _p_from_p2(p2: Enclosure, L0: Enclosure, l0: Enclosure, a1: Decimal) -> Enclosure:
    p1 = p2 + (enc("0.67") + 2 * (-(l0 / 6)).exp()) / l0 ** enc(a1 - 2)
    return p1, p1 * _tower_factor(L0, l0) + enc("2.2") / L0**2


def _tower_factor(L0: Enclosure, l0: Enclosure) -> Enclosure:
    return 1 + 1 / (L0**2 * l0**3) + 1 / ((1 - 4 / l0) * L0)


_SUP_CACHE: dict[tuple, tuple[Enclosure, ...]] = {}


def _ray_sups(params: UncondParams, cells: int) -> tuple[Enclosure, ...]:
    """(p2, p2*, c1, c3) suprema; they depend only on X2, delta, the row and the flags."""
    key = (params.X2, params.delta, params.row, params.use_strong_beta, params.conservative_p2, params.R1,
           cells, get_precision())
    hit = _SUP_CACHE.get(key)
    if hit is not None:
        return hit
    l0, L0 = params.l0, params.L0
    strong_mode = "limited" if params.use_strong_beta else "never"
    out = (
        _upper(ray_sup(p2_terms(params, strong_mode), l0.lo, cells=cells).bound),
        _upper(ray_sup(p2_terms(params, "always"), l0.lo, cells=cells).bound),
        _upper(ray_sup(c1_terms(params), l0.lo, cells=cells).bound),
        _upper(ray_sup([_c3_term(params)], L0.lo, cells=cells).bound),
    )
    _SUP_CACHE[key] = out
    return out


def constant_tower(params: UncondParams, *, cells: int = 512) -> ConstantSet:
    """Every constant of the unconditional tower as a certified upper bound."""
    L0, l0 = params.L0, params.l0
    a1 = params.alpha1
    if (l0.log()).lo <= 0:
        raise DomainError("X2 too small for the tower")
    p2, p2_star, c1, c3 = _ray_sups(params, cells)
    p1, p = _p_from_p2(p2, L0, l0, a1)
    _, p_star = _p_from_p2(p2_star, L0, l0, a1)

    c = c1 * _tower_factor(L0, l0) + 1 / L0**2
    c2 = c + enc("1.3841") * L0**4 * (-L0).exp() / L0.log()
    extra = enc("0.9") * (l0 / 2 - L0).exp() * L0**4 / (l0 ** enc(a1) * L0.log())
    c4 = p + extra
    c4_star = p_star + extra
    a1_const = _upper(ray_sup([_a1_term(params, c2)], L0.lo, cells=cells).bound) + c3
    a_const = a1_const * _upper(ray_sup([_a_term(params)], L0.lo, cells=cells).bound)

    K0 = l0 ** enc(params.delta)
    nu = nu_at(l0, params.delta, a1, params.R1, params.use_strong_beta)
    E_over_y = mathcal_E_over_y(l0, params.row)
    return ConstantSet(
        log_x2X2=l0,
        K0=K0,
        Q1_log=a1 * l0.log(),
        nu=nu,
        beta0_upper=1 - nu,
        epsilon=params.epsilon,
        xi=xi(Magnitude("exp", (L0 / params.M).lo), params.M),
        mathcalE_over_y=E_over_y,
        p2=p2,
        p1=p1,
        p=p,
        p_star=p_star,
        c1=c1,
        c=c,
        c2=c2,
        c3=c3,
        c4=c4,
        c4_star=c4_star,
        a1=a1_const,
        a=a_const,
        epsilon0=primes.epsilon0(params.X2, params.delta),
        m_bar=sieve_fns.m_bar(params.alpha, params.X2, params.M, a1, params.c_alpha_scale),
        R1=enc(params.R1),
        U_N_normalizer=normalizer_value(params.normalizer),
    )


def mathcal_E_over_y(t: Enclosure, row: PNTAPRow) -> Enclosure:
    """E(y) / y written in t = log y (avoids forming y)."""
    a1 = row.alpha1
    return (
        4 * t ** Decimal("4.5") / log_x2(t) ** enc(a1)
        + 4 / t ** enc(a1 - Decimal("4.5"))
        + 18 * (-(t / 12)).exp() / t ** enc((a1 - 9) / 2)
        + enc("2.5") * (-(t / 6)).exp() * t ** Decimal("5.5")
    )


# --- hypotheses -----------------------------------------------------------------------------


def check_conditions(params: UncondParams) -> list[Condition]:
    """All hypotheses of the two-branch bound, each at N = X2 with its direction in N.

    Each inequality is arranged so that (left - right) in log scale has a derivative
    in L = log N that is bounded below on [log X2, oo) by its value at log X2;
    those lower bounds are checked here as well, so passing at X2 implies
    passing for all N >= X2.
    """
    L0, l0 = params.L0, params.l0
    a1, M, alpha = params.alpha1, params.M, params.alpha
    out: list[Condition] = []
    out.append(check("loglog x2(X2) >= Y0", l0.log(), ">=", params.row.Y0, "PNT-AP row range", "increasing in N"))

    lhs_log = l0 / 2 - a1 * l0.log()
    rhs_log = a1 * L0.log()
    out.append(check("sqrt(x2)/log^a1 x2 >= log^a1 N (log scale)", lhs_log, ">=", rhs_log,
                     "level condition", "gap increasing in N"))
    slope = (1 - enc(5) / L0) * (enc("0.5") - a1 / l0) - a1 / L0
    out.append(check("  its slope in log N", slope, ">", 0, "level condition", "slope lower bound"))
    out.append(check("log^a1 N >= 1e9 (log scale)", rhs_log, ">=", enc(10 ** 9).log(), "level condition",
                     "increasing in N"))

    xi_v = xi(Magnitude("exp", (L0 / M).lo), M)
    out.append(check("1 - xi/log^2 N >= 0", 1 - xi_v / L0**2, ">=", 0, "sign of V(z) bound",
                     "increasing in N"))
    out.append(check_magnitude("X2 >= 4e18", params.X2, ">=", GOLDBACH_LIMIT, "Goldbach verification range",
                               "constant"))

    u = params.u
    q_lhs = alpha * L0 - a1 * l0.log() - Decimal("2.5") * L0.log()
    q_rhs = enc(u) * (1 + enc("9e-7") / enc(u).log())
    out.append(check("N^alpha/(log^a1 x2 log^2.5 N) >= exp(u(1+9e-7/log u)) (log scale)", q_lhs, ">=",
                     q_rhs, "Q-level condition", "gap increasing in N"))
    out.append(check("  its slope in log N", alpha - a1 / l0 - Decimal("2.5") / L0, ">", 0,
                     "Q-level condition", "slope lower bound"))

    d_gap = (enc("0.5") - alpha - enc(2) / M) * L0 - 2 * a1 * L0.log()
    out.append(check("N^(1/2-alpha)/log^(2 a1) N >= z^2 (log scale)", d_gap, ">=", 0, "sieve level D >= z^2",
                     "gap increasing in N"))
    out.append(check("  its slope in log N", enc("0.5") - alpha - enc(2) / M - 2 * a1 / L0, ">", 0,
                     "sieve level D >= z^2", "slope lower bound"))
    out.append(check("K0(x2) >= 3022", l0 ** enc(params.delta), ">=", 3022, "exceptional modulus range",
                     "increasing in N"))
    out.append(check("u > 400", u, ">", 400, "product lemma range", "constant"))
    if u > 400:
        out.append(epsilon_ceiling_condition(u, "u400", params.epsilon))
    return out


# --- the bound ------------------------------------------------------------------------------


@dataclass(frozen=True)
class UncondCoefficients:
    coeff_small_k1: Enclosure  # S > coeff * U_N N / log^2 N when k1 < K0(x2)
    coeff_large_k1: Enclosure  # the same when k1 >= K0(x2)
    pieces: dict[str, Enclosure] = field(default_factory=dict)


def _require_C(params: UncondParams) -> tuple[Enclosure, Enclosure]:
    if params.C1_eps is None or params.C2_eps is None:
        raise DomainError("C1(eps) and C2(eps) are required inputs")
    return enc(params.C1_eps), enc(params.C2_eps)


def sup_lambda_ratio(L0: Enclosure, alpha1: Decimal, power: int) -> Enclosure:
    """sup over L >= L0 of Lambda / (L^power log Lambda) with Lambda = alpha1 log(L - 5 log L).

    Uses Lambda <= alpha1 log L and x/log x increasing for x >= e; the resulting
    alpha1 w / (e^{power w} log(alpha1 w)) decreases once power * w >= 1.
    """
    w = L0.log()
    lam = alpha1 * log_x2(L0).log()
    if lam.lo < Decimal("2.72") or (w * power).lo < 1:
        raise DomainError("monotonicity of the Lambda ratio not certified")
    aw = alpha1 * w
    return Enclosure(Decimal(0), (aw / (L0**power * aw.log())).hi)


def theorem41_coefficients(
    params: UncondParams,
    tower: ConstantSet | None = None,
    conditions: list[Condition] | None = None,
) -> UncondCoefficients:
    """Lower bounds (over all even N >= X2) for the coefficient of U_N N / log^2 N.

    N-dependent quantities enter as intervals between their value at X2 and
    their limit, which is valid because each is monotone in N.
    """
    conds = conditions if conditions is not None else check_conditions(params)
    bad = first_failure(conds)
    if bad is not None:
        raise ConditionFailed(bad)
    C1, C2 = _require_C(params)
    t = tower if tower is not None else constant_tower(params)
    L0, M, eps = params.L0, params.M, params.epsilon
    e2 = enc(2).exp()
    norm = t.U_N_normalizer
    r = Enclosure(Decimal(0), (t.xi / L0**2).hi)  # xi / log^2 N
    inv_L = Enclosure(Decimal(0), (1 / L0).hi)

    s = M * (enc("0.5") - params.alpha)
    if s.hi <= 0:
        raise DomainError("sieve argument M(1/2 - alpha) is not positive")
    f_s = sieve_fns.eval_f(s)
    h_s = sieve_fns.h(s) if s.lo >= 1 else enc(-2).exp()
    inner1 = f_s - C1 * eps * e2 * h_s
    coeff1 = M * (1 - r) * inner1 - t.c4 * inv_L / norm

    c = sieve_fns.c_alpha(params.X2, M, params.alpha, params.alpha1, params.c_alpha_scale)
    f_c = sieve_fns.eval_f(c)
    h_c = sieve_fns.h(c)
    e0 = t.epsilon0
    phi = enc("1.3841") * sup_lambda_ratio(L0, params.alpha1, 2)
    braces = (
        f_c
        - e0 * (1 - f_c)
        - (1 + e0) * eps * C2 * e2 * h_c
        - (3 * e0 + t.a) * (t.m_bar + eps * C1 * e2 * h_c)
        - t.a
    )
    coeff2 = M * (1 + r) * (braces - 2 * r) - t.c4_star * phi / norm
    pieces = {
        "s": s,
        "f(s)": f_s,
        "h(s)": h_s,
        "c_alpha": c,
        "f(c_alpha)": f_c,
        "h(c_alpha)": h_c,
        "first branch bracket": inner1,
        "second branch braces (N-free part)": braces,
    }
    return UncondCoefficients(coeff1, coeff2, pieces)


@functools.lru_cache(maxsize=4)
def default_row() -> PNTAPRow:
    """(7.8, 7, 2, 431.57), stitched from (7.8, 7, 1, 0.16) and (7.9, 7, 2, 3.98)."""
    return stitch_pntap_rows(PNTAPRow("7.8", "7", "1", "0.16"), PNTAPRow("7.9", "7", "2", "3.98"))
