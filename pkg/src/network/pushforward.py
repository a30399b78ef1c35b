"""
Output-mode moments of a network, from native-mode moments.

The production path substitutes the output operators by their input
expansion and takes the vacuum expectation over ancillas symbolically.
The direct oracle tensors vacuum ancillas onto the state and applies the
beam-splitter unitaries in the Fock basis; it only runs in verification.
"""
from __future__ import annotations

from dataclasses import dataclass

from src.algebra import (
    LinearModeMap,
    NormalPoly,
    rename_modes,
    substitute,
    vacuum_project,
)
from src.fock import MomentEvaluator, StateVector, apply_bs_unitary
from src.utils.errors import CutoffError
from src.utils.logger import get_logger
from .compiler import NetworkSpec, compile_steps

logger = get_logger("hocm.network.pushforward")


@dataclass(frozen=True)
class MomentQuery:
    """A polynomial over network output modes."""

    poly: NormalPoly

    def check(self, mapping: LinearModeMap) -> None:
        for mode in sorted(self.poly.modes()):
            mapping.row(mode)


class NetworkProjector:
    """
    Caches ``vacuum_project(substitute(m, map), ancillas)`` per output monomial.

    The projection only depends on the network, so one projector serves every
    state of a sweep.
    """

    def __init__(self, mapping: LinearModeMap):
        self.mapping = mapping
        self._cache: dict = {}

    def project_monomial(self, key: tuple) -> NormalPoly:
        if key not in self._cache:
            expanded = substitute(NormalPoly({key: 1.0}), self.mapping)
            self._cache[key] = vacuum_project(expanded, self.mapping.ancillas)
        return self._cache[key]

    def project(self, q: NormalPoly) -> NormalPoly:
        MomentQuery(q).check(self.mapping)
        acc: dict = {}
        for key, coeff in q.items():
            for k, c in self.project_monomial(key).items():
                acc[k] = acc.get(k, 0j) + coeff * c
        return NormalPoly(acc)


def check_degree(p: NormalPoly, psi: StateVector) -> None:
    for mode, power in sorted(p.max_exponents().items()):
        cutoff = psi.cutoffs.of(mode)
        if power > cutoff:
            raise CutoffError(
                f"moment needs exponent {power} on mode {mode!r} but its cutoff is {cutoff}; "
                f"raise the cutoff by at least {power - cutoff}",
                required=power,
            )


class PushforwardEvaluator:
    """Output-mode moments on one native state, sharing a projector and moment cache."""

    def __init__(self, psi: StateVector, projector: NetworkProjector):
        self.psi = psi
        self.projector = projector
        self.moments = MomentEvaluator(psi)

    def expect(self, q: NormalPoly) -> complex:
        projected = self.projector.project(q)
        check_degree(projected, self.psi)
        return self.moments.expect(projected)


def pushforward_moment(psi: StateVector, mapping: LinearModeMap, q: MomentQuery | NormalPoly) -> complex:
    poly = q.poly if isinstance(q, MomentQuery) else q
    return PushforwardEvaluator(psi, NetworkProjector(mapping)).expect(poly)


class DirectOracle:
    """
    Output state built by tensoring vacuum ancillas onto ``psi`` and applying
    every beam-splitter unitary in the Fock basis.

    Each ancilla gets the photon bound of the wire it first meets as cutoff,
    which keeps the truncated beam-splitter unitaries exact for states
    entering with at most that many photons.
    """

    def __init__(self, psi: StateVector, spec: NetworkSpec):
        self.compiled = compile_steps(spec)
        bounds = {m: psi.cutoffs.of(m) for m in spec.native_modes}
        axis_of = {m: m for m in spec.native_modes}
        state = psi
        for x, y, bs, o1, o2 in self.compiled.steps:
            if y in self.compiled.ancillas and y not in state.modes:
                state = state.extend_vacuum({y: bounds[x]})
                axis_of[y] = y
                bounds[y] = 0
            total = bounds[x] + bounds[y]
            ax, ay = axis_of.pop(x), axis_of.pop(y)
            if total > min(state.cutoffs.of(ax), state.cutoffs.of(ay)):
                logger.warning(
                    "Direct oracle: wires %s/%s may carry %d photons, above axis cutoffs; result is approximate",
                    x, y, total,
                )
            state = apply_bs_unitary(state, (ax, ay), bs.transmittance, bs.convention)
            axis_of[o1], axis_of[o2] = ax, ay
            bounds.pop(x, None)
            bounds.pop(y, None)
            bounds[o1] = bounds[o2] = total
        self.state = state
        self.axis_of = axis_of
        self.moments = MomentEvaluator(state)

    def expect(self, q: NormalPoly) -> complex:
        MomentQuery(q).check(self.compiled.mapping)
        return self.moments.expect(rename_modes(q, {o: self.axis_of[o] for o in q.modes()}))


def direct_oracle_moment(psi: StateVector, spec: NetworkSpec, q: MomentQuery | NormalPoly) -> complex:
    """Reference value of ``⟨q⟩`` from the full multimode unitary."""
    poly = q.poly if isinstance(q, MomentQuery) else q
    return DirectOracle(psi, spec).expect(poly)
