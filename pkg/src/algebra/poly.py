"""
Normal-ordered polynomials in multi-mode bosonic ladder operators.

A monomial is stored as a tuple of ``(mode, i, j)`` triples sorted by mode
label, meaning ``∏ a_mode^{†i} a_mode^{j}``. Letters on distinct modes
commute, so products are reordered one mode at a time using

    a^j a^{†i} = Σ_r C(j, r) C(i, r) r! a^{†(i-r)} a^{j-r}

and the per-mode expansions are memoised.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

from config import PRUNE_TOL

CREATE = "create"
ANNIHILATE = "annihilate"

Key = tuple  # tuple[tuple[str, int, int], ...]


@dataclass(frozen=True)
class LadderWord:
    """An ordered product of ladder letters with a scalar prefactor."""

    coeff: complex
    letters: tuple  # tuple[tuple[str, str], ...] of (mode, CREATE | ANNIHILATE)

    def __post_init__(self):
        for _, kind in self.letters:
            if kind not in (CREATE, ANNIHILATE):
                raise ValueError(f"unknown ladder letter kind {kind!r}")


class NormalPoly:
    """Immutable normal-ordered polynomial: ``{monomial key: complex coefficient}``."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Key, complex] | None = None, prune: float = PRUNE_TOL):
        cleaned: dict = {}
        for key, coeff in (terms or {}).items():
            key = _canonical_key(key)
            cleaned[key] = cleaned.get(key, 0j) + complex(coeff)
        self._terms = {k: v for k, v in sorted(cleaned.items()) if abs(v) > prune}
        self._hash = None

    # ── constructors ──────────────────────────────────────────
    @classmethod
    def constant(cls, value: complex) -> "NormalPoly":
        return cls({(): value})

    @classmethod
    def annihilator(cls, mode: str, power: int = 1) -> "NormalPoly":
        return cls({((mode, 0, power),): 1.0}) if power else cls.constant(1.0)

    @classmethod
    def creator(cls, mode: str, power: int = 1) -> "NormalPoly":
        return cls({((mode, power, 0),): 1.0}) if power else cls.constant(1.0)

    @classmethod
    def zero(cls) -> "NormalPoly":
        return cls()

    # ── container protocol ────────────────────────────────────
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Key, complex]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coefficient(self, key: Key) -> complex:
        return self._terms.get(_canonical_key(key), 0j)

    def modes(self) -> frozenset:
        return frozenset(m for key in self._terms for m, _, _ in key)

    def degree(self) -> int:
        return max((sum(i + j for _, i, j in key) for key in self._terms), default=0)

    def max_exponents(self) -> dict:
        """Largest single creation or annihilation power seen per mode."""
        out: dict = {}
        for key in self._terms:
            for mode, i, j in key:
                out[mode] = max(out.get(mode, 0), i, j)
        return out

    # ── arithmetic ────────────────────────────────────────────
    def __add__(self, other: "NormalPoly | complex") -> "NormalPoly":
        other = _as_poly(other)
        merged = dict(self._terms)
        for key, coeff in other._terms.items():
            merged[key] = merged.get(key, 0j) + coeff
        return NormalPoly(merged)

    __radd__ = __add__

    def __neg__(self) -> "NormalPoly":
        return NormalPoly({k: -v for k, v in self._terms.items()})

    def __sub__(self, other: "NormalPoly | complex") -> "NormalPoly":
        return self + (-_as_poly(other))

    def __rsub__(self, other: "NormalPoly | complex") -> "NormalPoly":
        return _as_poly(other) - self

    def __mul__(self, other: "NormalPoly | complex") -> "NormalPoly":
        if isinstance(other, NormalPoly):
            return multiply(self, other)
        return self.scaled(other)

    def __rmul__(self, other: complex) -> "NormalPoly":
        return self.scaled(other)

    def __truediv__(self, scalar: complex) -> "NormalPoly":
        return self.scaled(1.0 / scalar)

    def scaled(self, scalar: complex) -> "NormalPoly":
        return NormalPoly({k: v * scalar for k, v in self._terms.items()})

    def __pow__(self, power: int) -> "NormalPoly":
        result = NormalPoly.constant(1.0)
        for _ in range(power):
            result = multiply(result, self)
        return result

    # ── comparison ────────────────────────────────────────────
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NormalPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def allclose(self, other: "NormalPoly", atol: float = 1e-12) -> bool:
        keys = set(self._terms) | set(other._terms)
        return all(abs(self.coefficient(k) - other.coefficient(k)) <= atol for k in keys)

    def __repr__(self) -> str:
        from .parser import format_poly

        return f"NormalPoly({format_poly(self)!r})"

    def __str__(self) -> str:
        from .parser import format_poly

        return format_poly(self)


def _as_poly(value: "NormalPoly | complex") -> NormalPoly:
    return value if isinstance(value, NormalPoly) else NormalPoly.constant(value)


def _canonical_key(key: Iterable) -> Key:
    merged: dict = {}
    for mode, i, j in key:
        if i < 0 or j < 0:
            raise ValueError(f"negative exponent in monomial for mode {mode!r}")
        if (i, j) == (0, 0):
            continue
        if mode in merged:
            raise ValueError(f"mode {mode!r} appears twice in one monomial key")
        merged[mode] = (int(i), int(j))
    return tuple((m, i, j) for m, (i, j) in sorted(merged.items()))


# ──────────────────────────────────────────────
# Reordering kernels
# ──────────────────────────────────────────────

@lru_cache(maxsize=None)
def _swap_expansion(j: int, i: int) -> tuple:
    """a^j a^{†i} as ``((r, c_r), ...)`` with c_r = C(j,r) C(i,r) r!."""
    return tuple(
        (r, float(math.comb(j, r) * math.comb(i, r) * math.factorial(r)))
        for r in range(min(i, j) + 1)
    )


@lru_cache(maxsize=None)
def _mode_product(i1: int, j1: int, i2: int, j2: int) -> tuple:
    """(a^{†i1} a^{j1})(a^{†i2} a^{j2}) → ((i, j, coeff), ...)."""
    return tuple(
        (i1 + i2 - r, j1 + j2 - r, c) for r, c in _swap_expansion(j1, i2)
    )


@lru_cache(maxsize=200_000)
def _monomial_product(left: Key, right: Key) -> tuple:
    factors = []
    lmap = {m: (i, j) for m, i, j in left}
    rmap = {m: (i, j) for m, i, j in right}
    for mode in sorted(set(lmap) | set(rmap)):
        i1, j1 = lmap.get(mode, (0, 0))
        i2, j2 = rmap.get(mode, (0, 0))
        factors.append([(mode, i, j, c) for i, j, c in _mode_product(i1, j1, i2, j2)])
    out = []
    for combo in itertools.product(*factors):
        coeff = 1.0
        key = []
        for mode, i, j, c in combo:
            coeff *= c
            if i or j:
                key.append((mode, i, j))
        out.append((tuple(key), coeff))
    return tuple(out)


# ──────────────────────────────────────────────
# Public operations
# ──────────────────────────────────────────────

def multiply(p: NormalPoly, q: NormalPoly) -> NormalPoly:
    """Normal-ordered product ``p·q``."""
    acc: dict = {}
    for lkey, lc in p.items():
        for rkey, rc in q.items():
            for key, c in _monomial_product(lkey, rkey):
                acc[key] = acc.get(key, 0j) + lc * rc * c
    return NormalPoly(acc)


def normal_order(w: "LadderWord | NormalPoly") -> NormalPoly:
    """Normal-order a ladder word; a NormalPoly is already canonical."""
    if isinstance(w, NormalPoly):
        return w
    result = NormalPoly.constant(w.coeff)
    for mode, kind in w.letters:
        letter = NormalPoly.creator(mode) if kind == CREATE else NormalPoly.annihilator(mode)
        result = multiply(result, letter)
    return result


def commutator(p: NormalPoly, q: NormalPoly) -> NormalPoly:
    """``[p, q] = pq − qp``, normal ordered."""
    pq = multiply(p, q)
    qp = multiply(q, p)
    acc = dict(pq.terms)
    for key, coeff in qp.items():
        acc[key] = acc.get(key, 0j) - coeff
    return NormalPoly(acc)


def dagger(p: NormalPoly) -> NormalPoly:
    """Hermitian adjoint; per mode ``a^{†i} a^j → a^{†j} a^i``."""
    return NormalPoly(
        {tuple((m, j, i) for m, i, j in key): coeff.conjugate() for key, coeff in p.items()}
    )


def vacuum_project(p: NormalPoly, ancillas: Iterable[str]) -> NormalPoly:
    """Partial vacuum expectation over ``ancillas``: drop every term touching them."""
    ancillas = frozenset(ancillas)
    return NormalPoly(
        {key: c for key, c in p.items() if not any(m in ancillas for m, _, _ in key)}
    )


def rename_modes(p: NormalPoly, names: dict) -> NormalPoly:
    """Relabel modes; modes absent from ``names`` keep their label."""
    return NormalPoly(
        {tuple((names.get(m, m), i, j) for m, i, j in key): c for key, c in p.items()}
    )
