"""
Partial-transpose tests on HOCMs.

Partial transposition flips the momenta of side B: ``Ṽ = T V T`` with the
mirror matrix ``T``. A separable state keeps ``Ṽ + (i/2)Ω ⪰ 0``; a negative
minimum eigenvalue ν certifies entanglement across the bipartition.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from config import TOLERANCES
from src.utils.errors import LocalityError, NumericalError
from src.utils.logger import get_logger
from .bipartitions import Bipartition
from .hocm import HOCMBundle
from .vectors import QuadratureVectorSpec

logger = get_logger("hocm.criteria.ppt")

IFF_1XN = "iff_1xn"
IFF_MULTIMODE_PAIRS = "iff_multimode_pairs"
IFF_BISYMMETRIC = "iff_bisymmetric"
NECESSARY_ONLY = "necessary_only"
SUFFICIENCY_CLASSES = (IFF_1XN, IFF_MULTIMODE_PAIRS, IFF_BISYMMETRIC, NECESSARY_ONLY)

ENTANGLED = "entangled"
SEPARABLE = "separable"
UNDECIDED = "undecided"

RESIDUAL_TOL = 1e-10


def validate_locality(spec: QuadratureVectorSpec, bipartition: Bipartition) -> tuple:
    """Labels of elements whose support straddles (or leaves) the bipartition; empty means ok."""
    return tuple(e.label for e in spec.elements if bipartition.side_of(e.support) is None)


def element_sides(spec: QuadratureVectorSpec, bipartition: Bipartition) -> tuple:
    violations = validate_locality(spec, bipartition)
    if violations:
        raise LocalityError(
            f"vector {spec.name!r} cannot test {bipartition.label}: "
            f"{', '.join(violations)} straddle the cut",
            violations,
        )
    return tuple(bipartition.side_of(e.support) for e in spec.elements)


@dataclass(frozen=True)
class MirrorMatrix:
    """Diagonal ±1 matrix flipping the P rows of side-B elements."""

    diagonal: tuple

    @classmethod
    def for_bipartition(cls, spec: QuadratureVectorSpec, bipartition: Bipartition) -> "MirrorMatrix":
        sides = element_sides(spec, bipartition)
        return cls(tuple(
            -1.0 if (e.kind == "P" and side == "B") else 1.0
            for e, side in zip(spec.elements, sides)
        ))

    @property
    def matrix(self) -> np.ndarray:
        return np.diag(self.diagonal)

    def apply(self, m: np.ndarray) -> np.ndarray:
        t = np.asarray(self.diagonal)
        return t[:, None] * m * t[None, :]


def partial_transpose(bundle: HOCMBundle, bipartition: Bipartition) -> HOCMBundle:
    """``V → T V T``; ``Ω`` unchanged. Applying it twice restores the bundle."""
    mirror = MirrorMatrix.for_bipartition(bundle.spec, bipartition)
    provenance = dict(bundle.provenance)
    if provenance.get("mirrored") == bipartition.label:
        provenance.pop("mirrored")
    else:
        provenance["mirrored"] = bipartition.label
    return replace(bundle, V=mirror.apply(bundle.V), provenance=provenance)


def block_form(bundle: HOCMBundle, bipartition: Bipartition) -> np.ndarray:
    """``V + (i/2) diag(Ω_A, −Ω_B)`` on the unmirrored ``V``."""
    sides = np.array([1.0 if s == "A" else -1.0 for s in element_sides(bundle.spec, bipartition)])
    same_side = np.equal.outer(sides, sides)
    omega = np.where(same_side, bundle.Omega * sides[:, None], 0.0)
    return bundle.V + 0.5j * omega


def min_eigen(m: np.ndarray, hermitian_tol: float = TOLERANCES["hermitian"]) -> tuple:
    """``(ν, residual, ‖M‖₂)`` for the smallest eigenvalue of a Hermitian matrix."""
    scale = max(1.0, float(np.linalg.norm(m, 2)))
    asym = float(np.max(np.abs(m - m.conj().T)))
    if asym > hermitian_tol * scale:
        raise NumericalError(f"matrix is not Hermitian (max |M − M†| = {asym:.2e})")
    m = 0.5 * (m + m.conj().T)
    try:
        w, x = np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigensolver did not converge: {exc}") from exc
    nu, vec = float(w[0]), x[:, 0]
    residual = float(np.linalg.norm(m @ vec - nu * vec))
    if residual > RESIDUAL_TOL * scale:
        raise NumericalError(f"eigen-residual {residual:.2e} exceeds {RESIDUAL_TOL:.0e}·‖M‖")
    return nu, residual, scale


@dataclass(frozen=True)
class PPTVerdict:
    """
    Attributes:
        nu_min:            smallest eigenvalue of ``Ṽ + (i/2)Ω``
        order:             moment order ``n`` of the vector
        bipartition:       bipartition label
        sufficiency_class: which separability theorem (if any) makes PPT sufficient
        verdict:           ``entangled`` / ``separable`` / ``undecided``
        nu_block:          smallest eigenvalue of the block form, a cross-check
        residual:          ``‖Mx − νx‖`` of the reported eigenpair
    """

    nu_min: float
    order: int
    bipartition: str
    sufficiency_class: str
    verdict: str
    nu_block: float
    residual: float
    tol: float

    @property
    def forms_agree(self) -> bool:
        return (self.nu_min < -self.tol) == (self.nu_block < -self.tol)


def decide(nu: float, tol: float, sufficiency_class: str) -> str:
    if nu < -tol:
        return ENTANGLED
    if sufficiency_class != NECESSARY_ONLY:
        return SEPARABLE
    return UNDECIDED


def ppt_min_eig(
    bundle: HOCMBundle,
    bipartition: Bipartition,
    tol: float = TOLERANCES["entanglement"],
    sufficiency_class: str | None = None,
) -> PPTVerdict:
    mirrored = partial_transpose(bundle, bipartition)
    nu, residual, scale = min_eigen(mirrored.uncertainty_matrix())
    nu_block, _, _ = min_eigen(block_form(bundle, bipartition))
    tol_eff = tol * scale

    if sufficiency_class is None:
        sufficiency_class = classify_sufficiency(bundle.spec, bipartition, bundle)
    verdict = PPTVerdict(
        nu_min=nu,
        order=bundle.provenance.get("order", bundle.spec.moment_order()),
        bipartition=bipartition.label,
        sufficiency_class=sufficiency_class,
        verdict=decide(nu, tol_eff, sufficiency_class),
        nu_block=nu_block,
        residual=residual,
        tol=tol_eff,
    )
    if not verdict.forms_agree:
        logger.warning(
            "%s on %s: mirrored form gives nu=%.3e but block form gives %.3e",
            bundle.spec.name, bipartition.label, nu, nu_block,
        )
    return verdict


def _pair_sides(spec: QuadratureVectorSpec, bipartition: Bipartition) -> dict:
    sides = element_sides(spec, bipartition)
    out: dict = {"A": [], "B": []}
    for idx, _ in enumerate(spec.pairs):
        out[sides[2 * idx]].append(idx)
    return out


def _swap_invariant(bundle: HOCMBundle, p: int, q: int, tol: float) -> bool:
    perm = np.arange(bundle.dim)
    perm[[2 * p, 2 * p + 1, 2 * q, 2 * q + 1]] = [2 * q, 2 * q + 1, 2 * p, 2 * p + 1]
    for m in (bundle.V, bundle.Omega):
        scale = max(1.0, float(np.max(np.abs(m))))
        if np.max(np.abs(m[np.ix_(perm, perm)] - m)) > tol * scale:
            return False
    return True


def classify_sufficiency(
    spec: QuadratureVectorSpec,
    bipartition: Bipartition,
    bundle: HOCMBundle | None = None,
    tol: float = TOLERANCES["entanglement"],
) -> str:
    """
    Strongest separability statement a PPT-positive result supports.

    ``iff_1xn``: one side is a single single-mode row-pair.
    ``iff_multimode_pairs``: one side is a single row-pair built from a
    multimode quadrature, whatever the other side holds.
    ``iff_bisymmetric``: every multi-pair side has equal-shape pairs and ``V``,
    ``Ω`` are invariant under swapping any two of them.
    """
    by_side = _pair_sides(spec, bipartition)
    pairs = spec.pairs
    single = [by_side[side][0] for side in ("A", "B") if len(by_side[side]) == 1]
    if any(not pairs[i][0].is_multimode for i in single):
        return IFF_1XN
    if single:
        return IFF_MULTIMODE_PAIRS
    if bundle is None:
        return NECESSARY_ONLY

    for side in ("A", "B"):
        idx = by_side[side]
        if len(idx) < 2:
            continue
        if len({pairs[i][0].shape for i in idx}) != 1:
            return NECESSARY_ONLY
        for pos, p in enumerate(idx):
            for q in idx[pos + 1:]:
                if not _swap_invariant(bundle, p, q, tol):
                    return NECESSARY_ONLY
    return IFF_BISYMMETRIC


@dataclass(frozen=True)
class SchurBound:
    """``S = A − C(B − (i/2)Ω_B)^{-1}Cᵀ + (i/2)Ω_A`` and its smallest eigenvalue."""

    matrix: np.ndarray
    min_eig: float
    rank: int
    pseudo_inverse: bool


def schur_bound(bundle: HOCMBundle, bipartition: Bipartition) -> SchurBound:
    sides = element_sides(bundle.spec, bipartition)
    ia = [i for i, s in enumerate(sides) if s == "A"]
    ib = [i for i, s in enumerate(sides) if s == "B"]
    V, Om = bundle.V, bundle.Omega
    A, B, C = V[np.ix_(ia, ia)], V[np.ix_(ib, ib)], V[np.ix_(ia, ib)]
    b_block = B - 0.5j * Om[np.ix_(ib, ib)]

    rank = int(np.linalg.matrix_rank(b_block, hermitian=True))
    if rank < len(ib):
        logger.warning(
            "Schur block B − (i/2)Ω_B on %s is singular (rank %d of %d); using pseudo-inverse",
            bipartition.label, rank, len(ib),
        )
        inv, pseudo = np.linalg.pinv(b_block, hermitian=True), True
    else:
        inv, pseudo = np.linalg.inv(b_block), False

    s = A - C @ inv @ C.T + 0.5j * Om[np.ix_(ia, ia)]
    s = 0.5 * (s + s.conj().T)
    return SchurBound(s, float(np.linalg.eigvalsh(s)[0]), rank, pseudo)
