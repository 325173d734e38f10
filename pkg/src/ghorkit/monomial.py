"""Monomials in the matching variables, stored as integer exponent vectors."""

from __future__ import annotations

from dataclasses import dataclass
from collections.abc import Sequence


@dataclass(frozen=True, order=True)
class Monomial:
    exponents: tuple[int, ...]

    @classmethod
    def unit(cls, n: int) -> "Monomial":
        return cls((0,) * n)

    @classmethod
    def variable(cls, n: int, k: int) -> "Monomial":
        e = [0] * n
        e[k] = 1
        return cls(tuple(e))

    def __len__(self):
        return len(self.exponents)

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(tuple(a + b for a, b in zip(self.exponents, other.exponents, strict=True)))

    def __truediv__(self, other: "Monomial") -> "Monomial":
        return Monomial(tuple(a - b for a, b in zip(self.exponents, other.exponents, strict=True)))

    def __pow__(self, k: int) -> "Monomial":
        return Monomial(tuple(a * k for a in self.exponents))

    def inverse(self) -> "Monomial":
        return Monomial(tuple(-a for a in self.exponents))

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    def is_unit(self) -> bool:
        return not any(self.exponents)

    def is_polynomial(self) -> bool:
        return all(a >= 0 for a in self.exponents)

    def divides(self, other: "Monomial") -> bool:
        return all(a <= b for a, b in zip(self.exponents, other.exponents, strict=True))

    def format(self, names: Sequence[str] | None = None, order: Sequence[int] | None = None) -> str:
        """Render as ``x^2*z``; ``names[k]`` names variable k, default ``m<k+1>``."""
        if order is None:
            order = range(len(self.exponents))
        parts = []
        for k in order:
            e = self.exponents[k]
            if e == 0:
                continue
            name = names[k] if names is not None else f"m{k + 1}"
            parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    def __str__(self):
        return self.format()


def sort_key(m: Monomial):
    """Degree first, then reverse-lexicographic so that x-heavy terms come first."""
    return (m.degree, tuple(-a for a in m.exponents))
