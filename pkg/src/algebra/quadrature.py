"""High-order single- and multi-mode quadrature operators."""
from __future__ import annotations

from dataclasses import dataclass

from src.utils.errors import AlgebraError
from .poly import NormalPoly, dagger


@dataclass(frozen=True)
class QuadratureElement:
    """
    ``Q`` or ``P`` built from the monomial ``O = (∏ o_i^{f_i})^s``.

    Q = (O + O†)/2 and P = i(O† − O)/2.
    """

    kind: str
    factors: tuple  # tuple[tuple[str, int], ...] of (mode, exponent)
    power: int = 1

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple((str(m), int(f)) for m, f in self.factors))
        if self.kind not in ("Q", "P"):
            raise AlgebraError(f"quadrature kind must be 'Q' or 'P', got {self.kind!r}")
        if not self.factors or all(f == 0 for _, f in self.factors):
            raise AlgebraError("quadrature element needs at least one nonzero exponent")
        modes = [m for m, _ in self.factors]
        if len(set(modes)) != len(modes):
            raise AlgebraError(f"repeated mode in quadrature factors {self.factors}")
        if any(f < 1 for _, f in self.factors):
            raise AlgebraError(f"quadrature exponents must be >= 1, got {self.factors}")
        if self.power < 1:
            raise AlgebraError(f"quadrature power s must be >= 1, got {self.power}")

    @property
    def support(self) -> frozenset:
        return frozenset(m for m, _ in self.factors)

    @property
    def degree(self) -> int:
        return self.power * sum(f for _, f in self.factors)

    @property
    def is_multimode(self) -> bool:
        return len(self.factors) > 1

    @property
    def shape(self) -> tuple:
        """Exponent pattern and power, independent of mode names."""
        return (tuple(sorted(f for _, f in self.factors)), self.power)

    def partner(self) -> "QuadratureElement":
        return QuadratureElement("P" if self.kind == "Q" else "Q", self.factors, self.power)

    def lifted(self, s: int) -> "QuadratureElement":
        return QuadratureElement(self.kind, self.factors, self.power * s)

    @property
    def label(self) -> str:
        body = ", ".join(f"{f} {m}" for m, f in self.factors)
        suffix = f"^{self.power}" if self.power != 1 else ""
        return f"{self.kind}{{{body}}}{suffix}"

    def __str__(self) -> str:
        return self.label


def quadrature_poly(elem: QuadratureElement) -> NormalPoly:
    lowering = NormalPoly({tuple((m, 0, f * elem.power) for m, f in elem.factors): 1.0})
    raising = dagger(lowering)
    if elem.kind == "Q":
        return (lowering + raising) * 0.5
    return (raising - lowering) * 0.5j
