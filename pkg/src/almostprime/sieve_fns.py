"""The linear sieve functions f and F, the majorant h, and c_{alpha,N}, m-bar.

f and F solve

    F(s) = 2e^gamma / s,  f(s) = 0              (0 < s <= 2)
    (s F(s))' = f(s - 1),  (s f(s))' = F(s - 1)  (s >= 2).

Writing phi = sF and psi = sf, the march advances phi and psi across cells of
width h (aligned with the integers) with the corrected trapezoid rule

    int_a^b g = h/2 (g(a) + g(b)) - h^2/12 (g'(b) - g'(a)) + h^5/720 g''''(xi),

where g is f or F shifted by one.  Derivatives come from differentiating
s f(s) = psi(s) k times:  f^(k) = (F^(k-1)(s - 1) - k f^(k-1)(s)) / s, and the
same with f and F exchanged.  Both functions are smooth between consecutive
integers, so every cell sees one analytic piece; at integer nodes the
derivatives are kept one-sided.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from decimal import Decimal
from math import factorial

from .rigor import (
    DomainError,
    Enclosure,
    PrecisionExhausted,
    dilog,
    e_gamma,
    enc,
    get_precision,
    integrate,
    log,
    pi,
)
from .rigor.magnitude import Magnitude

_ORDER = 4  # derivatives kept at nodes: 0..3, cell hulls: 0..4
DEFAULT_STEP = Decimal("0.005")
DEFAULT_SMAX = Decimal(7)
_BLOWUP = Decimal("1e-3")


@dataclass(frozen=True)
class SieveFnTable:
    """Marched enclosures of f, F and their derivatives on a uniform grid."""

    step: Decimal
    s_max: Decimal
    nodes: tuple[Decimal, ...]
    # [node][k] for k = 0..3, one-sided from the right and from the left
    f_right: tuple[tuple[Enclosure, ...], ...]
    f_left: tuple[tuple[Enclosure, ...], ...]
    F_right: tuple[tuple[Enclosure, ...], ...]
    F_left: tuple[tuple[Enclosure, ...], ...]
    # [cell][k] for k = 0..4, ranges over the closed cell
    f_cell: tuple[tuple[Enclosure, ...], ...]
    F_cell: tuple[tuple[Enclosure, ...], ...]

    @property
    def grid(self) -> list[tuple[Decimal, Enclosure, Enclosure]]:
        return [(s, self.f_right[i][0], self.F_right[i][0]) for i, s in enumerate(self.nodes)]

    def _cell_of(self, s: Decimal) -> int:
        if s < self.nodes[0] or s > self.s_max:
            raise DomainError(f"s={s} outside table range [1, {self.s_max}]")
        c = int((s - self.nodes[0]) / self.step)
        return min(c, len(self.nodes) - 2)

    def _taylor(self, which: str, s: Enclosure) -> Enclosure:
        c = self._cell_of(s.lo)
        if self._cell_of(s.hi) != c:
            raise DomainError("Taylor evaluation across cells")
        a = self.nodes[c]
        right = self.f_right if which == "f" else self.F_right
        cell = self.f_cell if which == "f" else self.F_cell
        d = Enclosure(s.lo, s.hi) - a
        d = Enclosure(max(d.lo, Decimal(0)), d.hi)
        total = cell[c][_ORDER] * d**_ORDER / factorial(_ORDER)
        for k in range(_ORDER - 1, -1, -1):
            total = total + right[c][k] * d**k / factorial(k)
        return total

    def value(self, which: str, s: Enclosure) -> Enclosure:
        """Enclosure of f(s) or F(s) for s inside the table range."""
        if self._cell_of(s.lo) == self._cell_of(s.hi):
            out = self._taylor(which, s)
        else:
            lo = self._taylor(which, enc(s.lo))
            hi = self._taylor(which, enc(s.hi))
            # f is nondecreasing and F nonincreasing
            out = Enclosure(lo.lo, hi.hi) if which == "f" else Enclosure(hi.lo, lo.hi)
        return out

    def node_index(self, s: Decimal) -> int:
        i = (s - self.nodes[0]) / self.step
        if i != i.to_integral_value():
            raise DomainError(f"{s} is not a grid node")
        return int(i)


def _closed_F_derivs(s: Enclosure, eg2: Enclosure) -> list[Enclosure]:
    """F^(k)(s) = 2e^gamma (-1)^k k! / s^(k+1) for k = 0..4 (valid for s <= 3)."""
    out = []
    for k in range(_ORDER + 1):
        v = eg2 * factorial(k) / s ** (k + 1)
        out.append(-v if k % 2 else v)
    return out


def _closed_F_cell(a: Decimal, b: Decimal, eg2: Enclosure) -> list[Enclosure]:
    # each |F^(k)| is decreasing in s, so the range is spanned by the endpoints
    da, db = _closed_F_derivs(enc(a), eg2), _closed_F_derivs(enc(b), eg2)
    return [x.hull(y) for x, y in zip(da, db)]


def march_table(s_max: Decimal | str | int = DEFAULT_SMAX, step: Decimal | str = DEFAULT_STEP) -> SieveFnTable:
    """Build the table of f, F on [1, s_max] by marching the recurrence."""
    s_max = Decimal(str(s_max))
    h = Decimal(str(step))
    if s_max > 10 or s_max <= 2:
        raise DomainError("march_table needs 2 < s_max <= 10")
    if h > Decimal("0.01") or h <= 0:
        raise DomainError("march_table needs 0 < step <= 0.01")
    m_dec = 1 / h
    if m_dec != m_dec.to_integral_value():
        raise DomainError("step must divide 1 exactly")
    m = int(m_dec)
    n_cells = int(((s_max - 1) / h).to_integral_value(rounding="ROUND_CEILING"))
    nodes = tuple(1 + i * h for i in range(n_cells + 1))

    eg2 = e_gamma() * 2
    zero = enc(0)
    zeros_node = [zero] * _ORDER
    zeros_cell = [zero] * (_ORDER + 1)

    f_right: list[list[Enclosure]] = []
    f_left: list[list[Enclosure]] = []
    F_right: list[list[Enclosure]] = []
    F_left: list[list[Enclosure]] = []
    f_cell: list[list[Enclosure]] = []
    F_cell: list[list[Enclosure]] = []

    # base interval [1, 2]: f = 0, F = 2e^gamma/s
    for i in range(m + 1):
        s = enc(nodes[i])
        Fd = _closed_F_derivs(s, eg2)[:_ORDER]
        f_right.append(list(zeros_node))
        f_left.append(list(zeros_node))
        F_right.append(Fd)
        F_left.append(Fd)
    for c in range(m):
        f_cell.append(list(zeros_cell))
        F_cell.append(_closed_F_cell(nodes[c], nodes[c + 1], eg2))

    # right-sided derivatives of f at s = 2
    s2 = enc(2)
    fr = [zero]
    for k in range(1, _ORDER):
        fr.append((F_right[0][k - 1] - fr[k - 1] * k) / s2)
    f_right[m] = fr

    phi = eg2  # 2 F(2)
    psi = zero  # 2 f(2)
    h_e = enc(h)
    half_h = h_e / 2
    h2_12 = h_e * h_e / 12
    h5_720 = h_e**5 / 720

    for c in range(m, n_cells):
        a, b = nodes[c], nodes[c + 1]
        cb = c - m
        ia, ib = c - m, c + 1 - m
        # phi' = f(s-1), psi' = F(s-1)
        phi = (
            phi
            + half_h * (f_right[ia][0] + f_left[ib][0])
            - h2_12 * (f_left[ib][1] - f_right[ia][1])
            + h5_720 * f_cell[cb][_ORDER]
        )
        psi = (
            psi
            + half_h * (F_right[ia][0] + F_left[ib][0])
            - h2_12 * (F_left[ib][1] - F_right[ia][1])
            + h5_720 * F_cell[cb][_ORDER]
        )
        b_e = enc(b)
        f_b = psi / b_e
        F_b = phi / b_e
        # known shape: 0 <= f <= 1 <= F, f nondecreasing, F nonincreasing
        f_b = f_b.intersect(Enclosure(max(f_right[c][0].lo, Decimal(0)), Decimal(1)))
        F_b = F_b.intersect(Enclosure(Decimal(1), F_right[c][0].hi))
        if f_b.width > _BLOWUP or F_b.width > _BLOWUP:
            raise PrecisionExhausted(f"sieve march lost accuracy at s={b}")

        cell_s = Enclosure(a, b)
        fc = [Enclosure(f_right[c][0].lo, f_b.hi)]
        Fc = [Enclosure(F_b.lo, F_right[c][0].hi)]
        for k in range(1, _ORDER + 1):
            fc.append((F_cell[cb][k - 1] - fc[k - 1] * k) / cell_s)
            Fc.append((f_cell[cb][k - 1] - Fc[k - 1] * k) / cell_s)
        f_cell.append(fc)
        F_cell.append(Fc)

        fl, Fl = [f_b], [F_b]
        for k in range(1, _ORDER):
            fl.append((F_left[ib][k - 1] - fl[k - 1] * k) / b_e)
            Fl.append((f_left[ib][k - 1] - Fl[k - 1] * k) / b_e)
        f_left.append(fl)
        F_left.append(Fl)
        if b == b.to_integral_value():
            frr, Frr = [f_b], [F_b]
            for k in range(1, _ORDER):
                frr.append((F_right[ib][k - 1] - frr[k - 1] * k) / b_e)
                Frr.append((f_right[ib][k - 1] - Frr[k - 1] * k) / b_e)
            f_right.append(frr)
            F_right.append(Frr)
        else:
            f_right.append(fl)
            F_right.append(Fl)

    freeze = lambda rows: tuple(tuple(r) for r in rows)  # noqa: E731
    return SieveFnTable(
        step=h,
        s_max=nodes[-1],
        nodes=nodes,
        f_right=freeze(f_right),
        f_left=freeze(f_left),
        F_right=freeze(F_right),
        F_left=freeze(F_left),
        f_cell=freeze(f_cell),
        F_cell=freeze(F_cell),
    )


@functools.lru_cache(maxsize=8)
def _default_table(prec: int) -> SieveFnTable:
    return march_table(DEFAULT_SMAX, DEFAULT_STEP)


def default_table() -> SieveFnTable:
    return _default_table(get_precision())


def _as_enclosure(s: Enclosure | Decimal | int | str) -> Enclosure:
    return s if isinstance(s, Enclosure) else enc(Decimal(str(s)))


def _F_at_end() -> Enclosure:
    return default_table().value("F", enc(DEFAULT_SMAX))


def _f_at_end() -> Enclosure:
    return default_table().value("f", enc(DEFAULT_SMAX))


def eval_F(s: Enclosure | Decimal | int | str) -> Enclosure:
    """Upper linear sieve function F(s) for s > 0."""
    s = _as_enclosure(s)
    if s.lo <= 0:
        raise DomainError("F needs s > 0")
    pieces = []
    three, end = Decimal(3), DEFAULT_SMAX
    if s.lo <= three:
        part = Enclosure(s.lo, min(s.hi, three))
        pieces.append(e_gamma() * 2 / part)
    if s.hi > three and s.lo <= end:
        part = Enclosure(max(s.lo, three), min(s.hi, end))
        pieces.append(default_table().value("F", part))
    if s.hi > end:
        # F decreases to 1
        pieces.append(Enclosure(Decimal(1), _F_at_end().hi))
    return Enclosure.hull_of(pieces)


def eval_f(s: Enclosure | Decimal | int | str) -> Enclosure:
    """Lower linear sieve function f(s) for s > 0."""
    s = _as_enclosure(s)
    if s.lo <= 0:
        raise DomainError("f needs s > 0")
    pieces = []
    two, four, end = Decimal(2), Decimal(4), DEFAULT_SMAX
    if s.lo <= two:
        pieces.append(enc(0))
    if s.hi > two and s.lo <= four:
        part = Enclosure(max(s.lo, two), min(s.hi, four))
        # 2e^gamma log(s-1)/s is increasing on [2, 4]
        lo_v = closed_form_f(enc(part.lo))
        hi_v = lo_v if part.is_point() else closed_form_f(enc(part.hi))
        pieces.append(Enclosure(lo_v.lo, hi_v.hi))
    if s.hi > four and s.lo <= end:
        part = Enclosure(max(s.lo, four), min(s.hi, end))
        pieces.append(default_table().value("f", part))
    if s.hi > end:
        # f increases to 1
        pieces.append(Enclosure(_f_at_end().lo, Decimal(1)))
    return Enclosure.hull_of(pieces)


# closed forms (independent oracles) ------------------------------------------------

_QUAD_TOL = Decimal("1e-25")


def _I(x):
    """I(x) = int_2^x log(u-1)/u du = log(x-1) log x + Li2(1-x) + pi^2/12."""
    return log(x - 1) * log(x) + dilog(1 - x) + pi() * pi() / 12


def closed_form_f(s: Enclosure, tol: Decimal = _QUAD_TOL) -> Enclosure:
    """f(s) from its explicit formulas on [2, 6].

    On [4, 6] the nested integral is reduced by parts to
    log(s-1)(1 + I(s-2)) - int_3^{s-1} log t log(t-2)/(t-1) dt.
    """
    if s.lo < 2 or s.hi > 6:
        raise DomainError("closed form of f is implemented on [2, 6]")
    eg2 = e_gamma() * 2
    if s.hi <= 4:
        return eg2 * log(s - 1) / s
    if s.lo < 4:
        raise DomainError("closed form of f: interval straddles 4")
    upper = s - 1
    inner = integrate(lambda t: log(t) * log(t - 2) / (t - 1), 3, upper, tol)
    return eg2 / s * (log(s - 1) * (1 + _I(s - 2)) - inner)


def closed_form_F(s: Enclosure, tol: Decimal = _QUAD_TOL) -> Enclosure:
    """F(s) from its explicit formulas on (0, 7].

    On [5, 7] the double integral is reduced by parts to
    int_2^{s-3} I(t) (log(s-1) - log(t+2)) / (t+1) dt.
    """
    if s.lo <= 0 or s.hi > 7:
        raise DomainError("closed form of F is implemented on (0, 7]")
    eg2 = e_gamma() * 2
    if s.hi <= 3:
        return eg2 / s
    if s.lo < 3 or (s.lo < 5 < s.hi):
        raise DomainError("closed form of F: interval straddles a breakpoint")
    body = 1 + _I(s - 1)
    if s.lo >= 5:
        log_top = log(s - 1)
        inner = integrate(
            lambda t: _I(t) * (log_top - log(t + 2)) / (t + 1), 2, s - 3, tol
        )
        body = body + inner
    return eg2 / s * body


# h, c_alpha, m_bar -----------------------------------------------------------------------


def h(s: Enclosure | Decimal | int | str) -> Enclosure:
    """The majorant h: e^-2 on [1,2], e^-s on [2,3], 3 e^-s / s for s >= 3."""
    s = _as_enclosure(s)
    if s.lo < 1:
        raise DomainError("h needs s >= 1")
    pieces = []
    two, three = Decimal(2), Decimal(3)
    if s.lo <= two:
        pieces.append(enc(-2).exp())
    if s.hi >= two and s.lo <= three:
        part = Enclosure(max(s.lo, two), min(s.hi, three))
        pieces.append((-part).exp())
    if s.hi >= three:
        part = Enclosure(max(s.lo, three), s.hi)
        # 3 e^-s / s is decreasing
        pieces.append(Enclosure((3 * (-enc(part.hi)).exp() / part.hi).lo, (3 * (-enc(part.lo)).exp() / part.lo).hi))
    return Enclosure.hull_of(pieces)


def _log_of(N: Magnitude | Enclosure) -> Enclosure:
    return N.log()


def c_alpha(
    N: Magnitude | Enclosure,
    M: int,
    alpha: Decimal | str,
    alpha1: Decimal | str,
    scale: Decimal | str | int | None = None,
) -> Enclosure:
    """c_{alpha,N} = K (1/2 - alpha - 2 alpha1 log log N / log N) with K = M by default."""
    L = _log_of(N)
    if L.lo <= 1:
        raise DomainError("c_alpha needs log N > 1")
    bracket = enc("0.5") - enc(Decimal(str(alpha))) - enc(Decimal(str(alpha1))) * 2 * L.log() / L
    if bracket.hi <= 0 or bracket.lo <= 0:
        raise DomainError(f"c_alpha bracket not positive: {bracket}")
    k = M if scale is None else Decimal(str(scale))
    return bracket * enc(k)


def m_bar(
    alpha: Decimal | str,
    X2: Magnitude | Enclosure,
    M: int,
    alpha1: Decimal | str,
    scale: Decimal | str | int | None = None,
) -> Enclosure:
    """max(1 - f(c), F(c) - 1) at c = c_{alpha,X2}."""
    c = c_alpha(X2, M, alpha, alpha1, scale)
    return (1 - eval_f(c)).max(eval_F(c) - 1)
