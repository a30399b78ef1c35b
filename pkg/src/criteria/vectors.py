"""
Quadrature vectors: ordered (Q, P) row-pairs of high-order quadratures.

Text grammar (scenario files and CLI)::

    vector  := element (";" element)*
    element := ("Q" | "P") "{" factor ("," factor)* "}" ["^" s]
    factor  := <int exponent> <mode id>

e.g. ``Q{1 a1}; P{1 a1}; Q{1 a2, 3 b2}; P{1 a2, 3 b2}``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, replace

from src.algebra import QuadratureElement
from src.utils.errors import AlgebraError

_ELEMENT_RE = re.compile(r"^\s*([QP])\s*\{([^{}]*)\}\s*(?:\^\s*(\d+))?\s*$")
_FACTOR_RE = re.compile(r"^\s*(\d+)\s+([A-Za-z_][A-Za-z0-9_]*)\s*$")


@dataclass(frozen=True)
class QuadratureVectorSpec:
    """
    Attributes:
        name:     label used in scan rows and file names
        elements: Q/P elements; consecutive entries form one row-pair
        order:    moment order ``n`` reported with the eigenvalue
        primary:  bipartition labels this vector is the headline curve for
    """

    name: str
    elements: tuple
    order: int | None = None
    primary: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        object.__setattr__(self, "primary", tuple(self.primary))
        if not self.elements or len(self.elements) % 2:
            raise AlgebraError(
                f"vector {self.name!r} must hold (Q, P) pairs, got {len(self.elements)} element(s)"
            )
        for idx in range(0, len(self.elements), 2):
            q, p = self.elements[idx], self.elements[idx + 1]
            if q.kind != "Q" or p != q.partner():
                raise AlgebraError(
                    f"vector {self.name!r}: elements {idx} and {idx + 1} ({q.label}; {p.label}) "
                    f"are not a Q/P pair with identical factors and power"
                )

    @property
    def dim(self) -> int:
        return len(self.elements)

    @property
    def pairs(self) -> tuple:
        return tuple(zip(self.elements[0::2], self.elements[1::2]))

    @property
    def support(self) -> frozenset:
        return frozenset().union(*(e.support for e in self.elements))

    @property
    def max_power(self) -> int:
        return max(e.power for e in self.elements)

    @property
    def text(self) -> str:
        return "; ".join(e.label for e in self.elements)

    def moment_order(self, k: int | None = None, l: int | None = None) -> int:
        """Explicit order, else ``s_max·(k + l)``, else the largest element degree."""
        if self.order is not None:
            return self.order
        if k is not None and l is not None:
            return self.max_power * (k + l)
        return max(e.degree for e in self.elements)

    def with_order(self, order: int) -> "QuadratureVectorSpec":
        return replace(self, order=order)

    def lift(self, s: int, name: str | None = None) -> "QuadratureVectorSpec":
        """Raise every element's product operator to the power ``s``."""
        if s < 1:
            raise AlgebraError(f"lift power must be >= 1, got {s}")
        return QuadratureVectorSpec(
            name=name or (self.name if s == 1 else f"{self.name}_s{s}"),
            elements=tuple(e.lifted(s) for e in self.elements),
            order=None if self.order is None else self.order * s,
            primary=self.primary,
        )


def parse_element(text: str) -> QuadratureElement:
    match = _ELEMENT_RE.match(text)
    if not match:
        raise AlgebraError(f"cannot parse quadrature element {text.strip()!r}")
    kind, body, power = match.groups()
    factors = []
    for chunk in body.split(","):
        fmatch = _FACTOR_RE.match(chunk)
        if not fmatch:
            raise AlgebraError(f"cannot parse factor {chunk.strip()!r} in {text.strip()!r}")
        factors.append((fmatch.group(2), int(fmatch.group(1))))
    return QuadratureElement(kind, tuple(factors), int(power) if power else 1)


def parse_vector(
    text: str,
    name: str = "custom",
    order: int | None = None,
    primary: tuple = (),
) -> QuadratureVectorSpec:
    chunks = [c for c in text.split(";") if c.strip()]
    if not chunks:
        raise AlgebraError(f"empty quadrature vector {name!r}")
    return QuadratureVectorSpec(name, tuple(parse_element(c) for c in chunks), order, tuple(primary))


# ──────────────────────────────────────────────
# Builtin vectors
# ──────────────────────────────────────────────

def pair(factors: tuple, s: int = 1) -> tuple:
    q = QuadratureElement("Q", factors, s)
    return q, q.partner()


def _vector(name: str, groups: list, order: int, primary: tuple = ()) -> QuadratureVectorSpec:
    elements = tuple(e for factors in groups for e in pair(factors))
    return QuadratureVectorSpec(name, elements, order, primary)


def standard_vector(
    a_modes: tuple,
    b_modes: tuple,
    k: int,
    l: int,
    s: int = 1,
    name: str | None = None,
    primary: tuple = (),
) -> QuadratureVectorSpec:
    """``R^{kl}``: one single-mode pair per output, exponent ``k`` on a-modes and ``l`` on b-modes."""
    groups = [((m, k),) for m in a_modes] + [((m, l),) for m in b_modes]
    base = _vector(name or f"R{k}{l}", groups, k + l, primary)
    return base.lift(s) if s > 1 else base


def pairwise_vectors() -> tuple:
    """
    The three third-order vectors that fuse two outputs into one local mode.

    Each vector can only test bipartitions keeping its fused pair on one side;
    ``primary`` lists the bipartitions it is drawn for.
    """
    return (
        _vector(
            "RI1",
            [(("a1", 1),), (("a2", 1),), (("b1", 1), ("b2", 1))],
            3,
            ("a1|a2b1b2", "a2|a1b1b2", "a1a2|b1b2"),
        ),
        _vector(
            "RI2",
            [(("a1", 1),), (("a2", 1), ("b1", 1)), (("b2", 1),)],
            3,
            ("b2|a1a2b1", "a1b2|a2b1"),
        ),
        _vector(
            "RI3",
            [(("a1", 1),), (("b1", 1),), (("a2", 1), ("b2", 1))],
            3,
            ("b1|a1a2b2", "a1b1|a2b2"),
        ),
    )


def collective_vectors() -> tuple:
    """Sixth-order vectors with one local mode per side, one per bipartition."""
    specs = [
        ("RII1", [(("a1", 1),), (("a2", 1), ("b1", 1), ("b2", 3))], "a1|a2b1b2"),
        ("RII2", [(("a2", 1),), (("a1", 1), ("b1", 1), ("b2", 3))], "a2|a1b1b2"),
        ("RII3", [(("b1", 1),), (("a1", 1), ("a2", 1), ("b2", 3))], "b1|a1a2b2"),
        ("RII4", [(("b2", 3),), (("a1", 1), ("a2", 1), ("b1", 1))], "b2|a1a2b1"),
        ("RII5", [(("a1", 1), ("a2", 1)), (("b1", 1), ("b2", 3))], "a1a2|b1b2"),
        ("RII6", [(("a1", 1), ("b1", 1)), (("a2", 1), ("b2", 3))], "a1b1|a2b2"),
        ("RII7", [(("a1", 1), ("b2", 3)), (("a2", 1), ("b1", 1))], "a1b2|a2b1"),
    ]
    return tuple(_vector(name, groups, 6, (label,)) for name, groups, label in specs)


def alternative_collective_vector() -> QuadratureVectorSpec:
    return _vector("RII8", [(("a1", 1),), (("a2", 1), ("b1", 3), ("b2", 1))], 6, ("a1|a2b1b2",))
