"""``key = value`` run configuration files.

Numbers may be written as plain decimals, ``4e18``, ``e109`` (exp(109)),
``ee7.816`` (exp(exp(7.816))) or ``10^14.7``.  Lines starting with ``#`` and
anything after a ``#`` are comments.  Unknown keys are rejected.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from pathlib import Path

from ..rigor import Magnitude

REPEATABLE = {"range", "L_plus_1"}

UNCOND_KEYS = {
    "X2", "delta", "alpha", "M", "u", "row", "row_stitch", "epsilon", "epsilon_inv", "C1", "C2",
    "use_strong_beta", "normalizer", "c_alpha_scale", "conservative_p2",
}
GRH_KEYS = {
    "X2", "alpha", "A", "M", "u", "epsilon", "epsilon_inv", "C1", "normalizer", "range",
    "fourth_group_log_factor", "exact_antiderivative",
}
TABLE_KEYS = {"table", "s_min", "s_max", "s_step", "L_plus_1"}
SEARCH_KEYS = {"mode", "budget", "search.loglog_X2", "search.M", "search.alpha", "search.delta", "search.u", "search.A"}

# inputs that have defaults; --strict insists on seeing them
STRICT_UNCOND = ("use_strong_beta", "normalizer")
STRICT_GRH = ("normalizer", "fourth_group_log_factor", "range")

_TRUE = {"true", "yes", "on", "1"}
_FALSE = {"false", "no", "off", "0"}


class ConfigError(ValueError):
    """The configuration file is malformed or incomplete."""


@dataclass
class RunConfig:
    values: dict[str, list[str]] = field(default_factory=dict)
    source: str = "<string>"

    # --- access ---------------------------------------------------------------

    def has(self, key: str) -> bool:
        return key in self.values

    def raw(self, key: str) -> str:
        if key not in self.values:
            raise ConfigError(f"missing required key {key!r}")
        return self.values[key][0]

    def all(self, key: str) -> list[str]:
        return list(self.values.get(key, []))

    def magnitude(self, key: str) -> Magnitude:
        try:
            return Magnitude.parse(self.raw(key))
        except ValueError as exc:
            raise ConfigError(f"{key}: {exc}") from None

    def decimal(self, key: str, default: str | None = None) -> Decimal:
        if default is not None and key not in self.values:
            return Decimal(default)
        return parse_decimal(self.raw(key), key)

    def integer(self, key: str, default: int | None = None) -> int:
        if default is not None and key not in self.values:
            return default
        text = self.raw(key)
        try:
            return int(text)
        except ValueError:
            raise ConfigError(f"{key}: expected an integer, got {text!r}") from None

    def flag(self, key: str, default: bool) -> bool:
        if key not in self.values:
            return default
        text = self.raw(key).lower()
        if text in _TRUE:
            return True
        if text in _FALSE:
            return False
        raise ConfigError(f"{key}: expected true or false, got {text!r}")

    def choice(self, key: str, options: tuple[str, ...], default: str | None = None) -> str:
        if default is not None and key not in self.values:
            return default
        text = self.raw(key)
        if text not in options:
            raise ConfigError(f"{key}: expected one of {', '.join(options)}, got {text!r}")
        return text

    def decimals(self, key: str, count: int | None = None) -> list[Decimal]:
        return split_decimals(self.raw(key), key, count)

    def require(self, keys, why: str = "") -> None:
        missing = [k for k in keys if k not in self.values]
        if missing:
            extra = f" ({why})" if why else ""
            raise ConfigError(f"missing required key(s) {', '.join(missing)}{extra}")

    def check_keys(self, allowed: set[str]) -> None:
        unknown = sorted(set(self.values) - allowed)
        if unknown:
            raise ConfigError(f"unknown key(s): {', '.join(unknown)}")

    def echo(self) -> dict[str, list[str]]:
        return {k: list(v) for k, v in sorted(self.values.items())}


def parse_decimal(text: str, key: str = "value") -> Decimal:
    try:
        value = Decimal(text.strip())
    except InvalidOperation:
        raise ConfigError(f"{key}: expected a decimal number, got {text!r}") from None
    if not value.is_finite():
        raise ConfigError(f"{key}: expected a finite number")
    return value


def split_decimals(text: str, key: str, count: int | None = None) -> list[Decimal]:
    parts = [p.strip() for p in text.split(",")]
    if count is not None and len(parts) != count:
        raise ConfigError(f"{key}: expected {count} comma-separated values, got {len(parts)}")
    return [parse_decimal(p, key) for p in parts]


def parse_config(text: str, source: str = "<string>") -> RunConfig:
    values: dict[str, list[str]] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key or not value:
            raise ConfigError(f"{source}:{lineno}: empty key or value")
        if key in values and key not in REPEATABLE:
            raise ConfigError(f"{source}:{lineno}: duplicate key {key!r}")
        values.setdefault(key, []).append(" ".join(value.split()))
    return RunConfig(values, source)


def load_config(path: str | Path) -> RunConfig:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read {p}: {exc.strerror}") from None
    return parse_config(text, str(p))
