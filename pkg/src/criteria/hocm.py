"""
Higher-order covariance matrices.

For a quadrature vector ``R``:

    V_ij = ⟨R_i R_j + R_j R_i⟩/2 − ⟨R_i⟩⟨R_j⟩
    Ω_ij = −i ⟨[R_i, R_j]⟩

Every entry is a moment of an output-mode polynomial, evaluated through any
object exposing ``expect(poly) -> complex`` (the pushforward evaluator in
production, the direct oracle in verification).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Protocol

import numpy as np

from config import TOLERANCES
from src.algebra import LinearModeMap, NormalPoly, commutator, multiply, quadrature_poly
from src.fock import StateVector
from src.network import NetworkProjector, PushforwardEvaluator
from src.utils.errors import CutoffError, NumericalError
from src.utils.logger import get_logger
from .vectors import QuadratureVectorSpec

logger = get_logger("hocm.criteria")


class MomentSource(Protocol):
    def expect(self, q: NormalPoly) -> complex: ...


@dataclass(frozen=True, eq=False)
class HOCMBundle:
    """
    Attributes:
        V:          real symmetric covariance matrix
        Omega:      real antisymmetric ``⟨Ω⟩``
        means:      ``⟨R_i⟩`` (real)
        spec:       the quadrature vector
        provenance: free-form context (``xi``, scenario name, mirrored side, ...)
    """

    V: np.ndarray
    Omega: np.ndarray
    means: np.ndarray
    spec: QuadratureVectorSpec
    provenance: Mapping = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.V.shape[0]

    def uncertainty_matrix(self) -> np.ndarray:
        return self.V + 0.5j * self.Omega


class HOCMPlan:
    """The polynomials behind one vector's HOCM; reusable across states."""

    def __init__(self, spec: QuadratureVectorSpec):
        self.spec = spec
        self.elements = tuple(quadrature_poly(e) for e in spec.elements)
        d = spec.dim
        self.symmetric: dict = {}
        self.commutators: dict = {}
        for i in range(d):
            for j in range(i, d):
                ri, rj = self.elements[i], self.elements[j]
                if i == j:
                    self.symmetric[i, j] = multiply(ri, ri)
                else:
                    self.symmetric[i, j] = (multiply(ri, rj) + multiply(rj, ri)) * 0.5
                    self.commutators[i, j] = commutator(ri, rj) * -1j

    def build(
        self,
        source: MomentSource,
        provenance: Mapping | None = None,
        reality_tol: float = TOLERANCES["reality"],
    ) -> HOCMBundle:
        d = self.spec.dim
        means = np.array([_real(source.expect(p), reality_tol, f"<R_{i}>") for i, p in enumerate(self.elements)])
        V = np.zeros((d, d))
        Omega = np.zeros((d, d))
        for (i, j), poly in self.symmetric.items():
            V[i, j] = V[j, i] = _real(source.expect(poly), reality_tol, f"V[{i},{j}]") - means[i] * means[j]
        for (i, j), poly in self.commutators.items():
            value = _real(source.expect(poly), reality_tol, f"Omega[{i},{j}]")
            Omega[i, j], Omega[j, i] = value, -value
        return HOCMBundle(V, Omega, means, self.spec, dict(provenance or {}))


def _real(value: complex, tol: float, what: str) -> float:
    if abs(value.imag) > tol * max(1.0, abs(value.real)):
        raise NumericalError(f"{what} has imaginary part {value.imag:.3e} (real part {value.real:.6g})")
    return float(value.real)


def check_vector_degree(
    spec: QuadratureVectorSpec,
    mapping: LinearModeMap,
    cutoffs,
    allow_high_degree: bool = False,
) -> None:
    """
    Each element may put at most half of a native cutoff on that native mode,
    so the products entering ``V`` stay inside the truncated space.
    """
    for elem in spec.elements:
        load: dict = {}
        for mode, f in elem.factors:
            for native, _ in mapping.row(mode):
                if native in mapping.ancillas:
                    continue
                load[native] = load.get(native, 0) + f * elem.power
        for native, power in sorted(load.items()):
            cutoff = cutoffs.of(native)
            if 2 * power <= cutoff:
                continue
            msg = (
                f"vector {spec.name!r}: element {elem.label} reaches exponent {power} on mode "
                f"{native!r}, more than half its cutoff {cutoff}"
            )
            if not allow_high_degree:
                raise CutoffError(msg + " (set allow_high_degree to override)", required=2 * power)
            logger.warning(msg)


def build_hocm(
    psi: StateVector,
    spec: QuadratureVectorSpec,
    network: LinearModeMap | NetworkProjector | None = None,
    provenance: Mapping | None = None,
) -> HOCMBundle:
    """HOCM of ``spec`` on the network outputs of ``psi`` (identity network when omitted)."""
    if network is None:
        network = LinearModeMap.identity(sorted(spec.support))
    projector = network if isinstance(network, NetworkProjector) else NetworkProjector(network)
    source = PushforwardEvaluator(psi, projector)
    return HOCMPlan(spec).build(source, provenance)


def uncertainty_check(bundle: HOCMBundle) -> float:
    """Smallest eigenvalue of ``V + (i/2)Ω``; physical states give ``≥ −1e-8``."""
    return float(np.linalg.eigvalsh(bundle.uncertainty_matrix())[0])
