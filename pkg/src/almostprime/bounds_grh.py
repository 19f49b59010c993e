"""Constants and bounds that hold under GRH.

Covers the error constants c_pi and c_theta, the level-of-distribution
constants p_G and c_{4,G}, the lower bound for the weighted count of
representations N = p + eta with eta square-free and coprime to a primorial,
and the one-branch sieve lower bound for S(A, P(z)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from itertools import combinations
from typing import Optional

from . import primes, sieve_fns
from .bounds_uncond import GOLDBACH_LIMIT, _d, epsilon_of_u, normalizer_value, xi
from .conditions import Condition, ConditionFailed, check, check_magnitude, first_failure
from .rigor import DomainError, Enclosure, Magnitude, e_gamma, enc, fundamental_constants, log_integral, pi

GRH_EPSILON_CEILING = Decimal("76.16387")
_SCHOENFELD = (Decimal(1) + Decimal("1.93378e-8"), Decimal("1.04320"))


def _log_of(X: Magnitude | Enclosure | int | str, name: str) -> Enclosure:
    """log X after checking X >= 4e18 (exactly for magnitudes, certainly for enclosures)."""
    if isinstance(X, (Magnitude, str, int)):
        m = Magnitude.of(X)
        if m.compare(GOLDBACH_LIMIT) < 0:
            raise DomainError(f"{name} needs the argument >= 4e18")
        return m.log()
    L = enc(X).log()
    if L.lo < GOLDBACH_LIMIT.log().hi:
        raise DomainError(f"{name} needs the argument >= 4e18")
    return L


def _inv_pow_exp(L: Enclosure, k: Decimal | int) -> Enclosure:
    """X^{-k} for log X = L."""
    return (-(L * k)).exp()


def c_pi(X2) -> Enclosure:
    """Constant in |pi(x;q,a) - li(x)/phi(q)| <= c_pi sqrt(x) log x (x >= X2)."""
    L = _log_of(X2, "c_pi")
    P = pi()
    ll = L.log()
    q = _inv_pow_exp(L, Decimal("0.25"))
    return (
        1 / (16 * P)
        + 1 / (6 * P)
        + enc("0.092")
        + enc("12.683") / L
        + enc("254.9795") / L**2
        + enc("2607.854") / L**3
        + enc("11605.056") / L**4
        + (enc("0.092") * L + enc("8.250")) * ll * q / L
        + (enc("1.3135") * L**2 + enc("60.8825") * L + enc("939.260")) * q / L
        - enc("273.934") * _inv_pow_exp(L, Decimal("0.5")) / L
    )


def c_psi(X3) -> Enclosure:
    L = _log_of(X3, "c_psi")
    P = pi()
    r = _inv_pow_exp(L, Decimal("0.5"))
    return (
        1 / (16 * P)
        + 1 / (6 * P)
        + enc("0.184")
        + enc("18.626") / L
        + enc("233.925") / L**2
        + enc("725.316") / L**3
        + enc("2.015") * r
        + enc("4.179") * r / L
        + enc("263.886") * r / L**2
    )


def c_theta(X3) -> Enclosure:
    """Constant in |theta(x;q,a) - x/phi(q)| < c_theta sqrt(x) log^2 x (x >= X3)."""
    L = _log_of(X3, "c_theta")
    a, b = _SCHOENFELD
    return c_psi(X3) + enc(a) / L**2 + enc(b) * (-(L / 6)).exp() / L**2


def p_G(X2) -> Enclosure:
    return enc("0.65") * (c_pi(X2) + 1 / (16 * pi()))


def c4G(X2) -> Enclosure:
    L = _log_of(X2, "c4G")
    return p_G(X2) + enc("0.9") * _inv_pow_exp(L, Decimal("0.5")) / L.log()


# --- primorial-coprime representations ----------------------------------------------


def G_fn(x, *, exact_antiderivative: bool = False) -> Enclosure:
    """e^gamma (log log x / x^2 - li(1/x)) + 3/x.

    With ``exact_antiderivative`` the first term is log log x / x, which is the
    true value of the integral of e^gamma log log t / t^2 + 3/t^2 over [x, oo).
    """
    xe = enc(x)
    if xe.lo <= enc(1).exp().hi:
        raise DomainError("G needs x > e")
    power = xe if exact_antiderivative else xe**2
    return e_gamma() * (xe.log().log() / power - log_integral(1 / xe)) + 3 / xe


@dataclass(frozen=True)
class HathiParams:
    L: int  # k is the product of the first L + 1 primes
    N_floor: Magnitude
    B: Magnitude
    Cexp: Decimal
    fourth_group_log_factor: bool = True
    exact_antiderivative: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "N_floor", Magnitude.of(self.N_floor))
        object.__setattr__(self, "B", Magnitude.of(self.B))
        object.__setattr__(self, "Cexp", _d(self.Cexp))
        if self.L < 1:
            raise DomainError("L must be at least 1")
        if not 0 < self.Cexp < Decimal("0.5"):
            raise DomainError("C must lie in (0, 1/2)")

    @property
    def k(self) -> int:
        return primes.primorial(self.L + 1)


@dataclass(frozen=True)
class RepresentationBound:
    bound: Enclosure
    main: Enclosure
    penalties: dict[str, Enclosure] = field(default_factory=dict)


def hathi_lower_bound(hp: HathiParams, X3: Magnitude | None = None) -> RepresentationBound:
    """Lower bound for R_k(N)/N valid for every even N >= N_floor.

    Every penalty is a product of (log N)^a N^{-b} with b > 0 and a small, hence
    decreasing for log N > a/b; the check below makes sure N_floor is beyond
    every such turning point, so N = N_floor is the worst case.
    """
    X3 = hp.N_floor if X3 is None else Magnitude.of(X3)
    if hp.N_floor.compare(X3) < 0:
        raise DomainError("N_floor must be at least X3")
    L = hp.L
    k = hp.k
    half_k = enc(k // 2)
    logN = hp.N_floor.log()
    if X3.compare(GOLDBACH_LIMIT) < 0:
        raise DomainError("hathi_lower_bound needs X3 >= 4e18")
    logB = hp.B.log()
    if logB.lo < max(enc(45).log().hi, (8 * half_k.sqrt()).log().hi):
        raise DomainError("B >= max(45, 8 sqrt(k/2)) fails")
    if logB.hi >= (logN / 2).lo:
        raise DomainError("B < sqrt(N) fails")
    C = hp.Cexp
    turning = max(Decimal(4), 1 / C)  # log^2 N / sqrt N and log N / N^C
    if logN.lo <= turning:
        raise DomainError("N_floor below the monotonicity range of the penalties")

    artin = fundamental_constants().artin
    main = 2 * artin * primes.artin_style_product(k)
    three = enc(3)
    r43 = (4 + enc(3).sqrt()) / three
    inv_sqrtN = (-(logN / 2)).exp()
    g1 = r43**L * hp.B.value() * c_theta(X3) * inv_sqrtN * logN**2
    x = (logB - half_k.log() / 2).exp()
    x_floor = Decimal(math.floor(x.lo))
    cc = (1 + 2 * enc(C)) / (1 - 2 * enc(C))
    g2 = cc * enc(2) ** L * G_fn(x_floor, exact_antiderivative=hp.exact_antiderivative)
    group = (
        (enc(7) / 3) ** L * inv_sqrtN
        + r43**L * (-(logN * C)).exp()
        + three**L * (-(logN * 2 * C)).exp()
    )
    g3 = group * logN if hp.fourth_group_log_factor else group
    g4 = enc(k).log() * (-logN).exp() + logN * (-logN).exp()
    bound = main - g1 - g2 - g3 - g4
    return RepresentationBound(bound, main, {"theta error": g1, "tail sum": g2, "fourth group": g3, "trivial": g4})


def odd_primorial_divisors(L: int) -> list[int]:
    """All divisors of the product of the odd primes among the first L + 1 primes."""
    ps = primes.first_primes(L + 1)[1:]
    out = []
    for r in range(L + 1):
        for combo in combinations(ps, r):
            out.append(math.prod(combo))
    return sorted(out)


def divisor_pair_sums(L: int) -> dict[str, Enclosure]:
    """Brute-force sum over d | k', e | d of (de)^{-1/2}, 1/e and 1."""
    divisors = odd_primorial_divisors(L)
    s_half = enc(0)
    s_inv = Fraction(0)
    count = 0
    for d in divisors:
        for e in divisors:
            if d % e:
                continue
            s_half = s_half + 1 / enc(d * e).sqrt()
            s_inv += Fraction(1, e)
            count += 1
    return {"inv_sqrt_de": s_half, "inv_e": enc(s_inv), "count": enc(count)}


def divisor_pair_closed_forms(L: int) -> dict[str, Enclosure]:
    """((4 + sqrt 3)/3)^L (an upper bound), (7/3)^L and 3^L."""
    r43 = (4 + enc(3).sqrt()) / 3
    return {"inv_sqrt_de": r43**L, "inv_e": enc(Fraction(7, 3)) ** L, "count": enc(3) ** L}


# --- the sieve bound ---------------------------------------------------------------------


@dataclass(frozen=True)
class GrhParams:
    X2: Magnitude
    alpha: Decimal
    A: Decimal
    M: int
    u: Decimal
    epsilon: Enclosure
    C1_eps: Optional[Enclosure] = None
    normalizer: str = "e_gamma"

    def __post_init__(self) -> None:
        object.__setattr__(self, "X2", Magnitude.of(self.X2))
        for name in ("alpha", "A", "u"):
            object.__setattr__(self, name, _d(getattr(self, name)))
        object.__setattr__(self, "epsilon", enc(self.epsilon))
        if self.A <= 2:
            raise DomainError("A must exceed 2")
        if self.alpha <= 0:
            raise DomainError("alpha must be positive")
        if self.M < 1:
            raise DomainError("M must be a positive integer")

    @property
    def L0(self) -> Enclosure:
        return self.X2.log()


def grh_conditions(params: GrhParams) -> list[Condition]:
    """Hypotheses of the GRH sieve bound at N = X2, with slope checks in log N."""
    L0, A, alpha, M, u = params.L0, params.A, params.alpha, params.M, params.u
    out: list[Condition] = []
    out.append(check("M >= 5", M, ">=", 5, "sieve setup", "constant"))
    out.append(check("sqrt(X2)/log^(A+1) X2 >= 45 (log scale)", L0 / 2 - (A + 1) * L0.log(), ">=",
                     enc(45).log(), "level of distribution", "constant"))
    xi_v = xi(Magnitude("exp", (L0 / M).lo), M)
    out.append(check("1 - xi/log^2 N >= 0", 1 - xi_v / L0**2, ">=", 0, "sign of V(z) bound",
                     "increasing in N"))
    out.append(check_magnitude("X2 >= 4e18", params.X2, ">=", GOLDBACH_LIMIT, "Goldbach verification range",
                               "constant"))
    q_lhs = alpha * L0 - (A + 1) * L0.log()
    q_rhs = enc(u) * (1 + enc("9e-7") / enc(u).log())
    out.append(check("N^alpha/log^(A+1) N >= exp(u(1+9e-7/log u)) (log scale)", q_lhs, ">=", q_rhs,
                     "Q-level condition", "gap increasing in N"))
    out.append(check("  its slope in log N", alpha - (A + 1) / L0, ">", 0, "Q-level condition",
                     "slope lower bound"))
    out.append(check("N^(1/2-alpha) >= z^2", enc("0.5") - alpha - enc(2) / M, ">=", 0, "sieve level D >= z^2",
                     "constant in log scale"))
    out.append(check("u > 30", u, ">", 30, "product lemma range", "constant"))
    if u > 30:
        eps_u = epsilon_of_u(u, "u30")
        bound = params.epsilon.min(enc(1) / GRH_EPSILON_CEILING)
        out.append(check("eps(u) < table epsilon (u30)", eps_u, "<", bound, "epsilon ceiling", "constant"))
    return out


@dataclass(frozen=True)
class GrhCoefficient:
    coefficient: Enclosure
    pieces: dict[str, Enclosure] = field(default_factory=dict)


def theorem510_coefficient(params: GrhParams, conditions: list[Condition] | None = None) -> GrhCoefficient:
    """Lower bound over N >= X2 for the coefficient of U_N N / log^2 N."""
    conds = conditions if conditions is not None else grh_conditions(params)
    bad = first_failure(conds)
    if bad is not None:
        raise ConditionFailed(bad)
    if params.C1_eps is None:
        raise DomainError("C1(eps) is a required input")
    C1 = enc(params.C1_eps)
    L0, M = params.L0, params.M
    r = Enclosure(Decimal(0), (xi(Magnitude("exp", (L0 / M).lo), M) / L0**2).hi)
    s = M * (enc("0.5") - params.alpha)
    f_s = sieve_fns.eval_f(s)
    h_s = sieve_fns.h(s)
    bracket = f_s - C1 * params.epsilon * enc(2).exp() * h_s
    tail_c = c4G(params.X2)
    decay = Enclosure(Decimal(0), (1 / L0 ** enc(params.A - 2)).hi)
    norm = normalizer_value(params.normalizer)
    coeff = M * (1 - r) * bracket - tail_c * decay / norm
    pieces = {"s": s, "f(s)": f_s, "h(s)": h_s, "bracket": bracket, "c4G": tail_c}
    return GrhCoefficient(coeff, pieces)
