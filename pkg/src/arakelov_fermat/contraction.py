"""Blowing down (-1)-curves in a special fibre.

Contracting a genus-0 component ``E`` with ``E^2 = -1`` sends every other
component ``C`` to ``C~`` with pullback ``C + (C.E) E``.  Intersection numbers
on the contracted fibre follow from the projection formula:
``C~ . D~ = C.D + (C.E)(D.E)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatch, NotContractible, VerificationError
from .fermat import FermatModel, build
from .lattice import (
    Component,
    FiberConfiguration,
    HorizontalProfile,
    VerticalDivisor,
    pair_mixed,
    pair_vertical,
)
from .solver import solve_canonical_vertical


def contractible_components(cfg: FiberConfiguration) -> list[int]:
    return [c.id for c in cfg.components if c.self_intersection == -1 and c.genus == 0]


@dataclass(frozen=True)
class Contraction:
    source: FiberConfiguration
    contracted: int
    target: FiberConfiguration
    # source index of each target component
    source_index: tuple[int, ...]

    @property
    def exceptional_label(self) -> str:
        return self.source.components[self.contracted].label

    def pullback_rule(self, target_label) -> VerticalDivisor:
        """``pi^* C~ = C + (C.E) E`` as a source divisor."""
        return pullback(self, VerticalDivisor.unit(self.target, target_label))


def contract(cfg: FiberConfiguration, E) -> Contraction:
    e = cfg.index(E)
    if e not in contractible_components(cfg):
        raise NotContractible(f"{cfg.components[e].label} is not a genus 0 curve with self-intersection -1")
    keep = [i for i in range(len(cfg)) if i != e]
    meet = [cfg.intersections[i][e] for i in range(len(cfg))]
    comps = []
    for new_id, i in enumerate(keep):
        c = cfg.components[i]
        m = meet[i]
        comps.append(
            Component(
                new_id,
                c.label,
                c.multiplicity,
                c.self_intersection + m * m,
                # meeting E in m points makes C~ acquire m(m-1)/2 nodes
                c.genus + m * (m - 1) // 2,
            )
        )
    mat = tuple(
        tuple(cfg.intersections[i][j] + meet[i] * meet[j] for j in keep) for i in keep
    )
    target = FiberConfiguration(tuple(comps), mat, cfg.residue_char, cfg.log_norm_coefficient)
    return Contraction(cfg, e, target, tuple(keep))


def pullback(ctr: Contraction, D: VerticalDivisor) -> VerticalDivisor:
    if len(D) != len(ctr.target):
        raise DimensionMismatch(f"divisor on {len(D)} components, target has {len(ctr.target)}")
    src = ctr.source
    e = ctr.contracted
    coeffs = [Fraction(0)] * len(src)
    on_e = Fraction(0)
    for t, i in enumerate(ctr.source_index):
        a = D.coefficients[t]
        coeffs[i] = a
        on_e += a * src.intersections[i][e]
    coeffs[e] = on_e
    return VerticalDivisor(coeffs)


def push_profile(ctr: Contraction, profile: HorizontalProfile) -> HorizontalProfile:
    """Intersection profile of the image of a horizontal section on the target."""
    src = ctr.source
    e = ctr.contracted
    hit_e = profile.hits[e]
    return HorizontalProfile(
        profile.hits[i] + src.intersections[i][e] * hit_e for i in ctr.source_index
    )


def pullback_profile_excess(ctr: Contraction, profile: HorizontalProfile) -> int:
    """Coefficient of ``E`` in ``pi^* S~ - S`` for a horizontal section ``S``."""
    return profile.hits[ctr.contracted]


@dataclass(frozen=True)
class MinimalModelCorrection:
    """Data behind ``2 K.W + W^2`` for the blow-down of ``L``.

    ``W = pi^* K_min - K`` where ``K`` is the canonical divisor on the regular
    model (vertical part vanishing on ``L``) and ``K_min`` the canonical divisor
    on the minimal model (vertical part vanishing on ``L_y``).
    """

    p: int
    contraction: Contraction
    K_vertical: VerticalDivisor
    K_min_vertical: VerticalDivisor
    W: VerticalDivisor
    k_dot_w: Fraction
    w_dot_pullback: Fraction
    w_squared: Fraction

    @property
    def total(self) -> Fraction:
        return 2 * self.k_dot_w + self.w_squared


def minimal_model_details(
    model: FermatModel | int, cusp: str = "x", min_normalize_on: str = "L_y"
) -> MinimalModelCorrection:
    if isinstance(model, int):
        model = build(model)
    p, cfg, g = model.p, model.cfg, model.genus
    S = model.cusp(cusp)
    V = solve_canonical_vertical(cfg, S, g, normalize_on="L")

    ctr = contract(cfg, "L")
    S_min = push_profile(ctr, S)
    V_min = solve_canonical_vertical(ctr.target, S_min, g, normalize_on=min_normalize_on)

    h = 2 * g - 2
    excess = pullback_profile_excess(ctr, S)
    pulled = pullback(ctr, V_min) + VerticalDivisor.unit(cfg, ctr.contracted) * (h * excess)
    W = pulled - V

    k_dot_w = h * pair_mixed(S, W, cfg) + pair_vertical(V, W, cfg)
    w_dot_pullback = h * pair_mixed(S, W, cfg) + pair_vertical(pulled, W, cfg)
    w_squared = pair_vertical(W, W, cfg)
    return MinimalModelCorrection(p, ctr, V, V_min, W, k_dot_w, w_dot_pullback, w_squared)


def minimal_model_correction(p: int) -> Fraction:
    """``2 K.W + W^2`` in units of ``log p``; checked against ``2p^2 - 10p + 13``."""
    d = minimal_model_details(p)
    expected = 2 * p * p - 10 * p + 13
    if d.total != expected or d.k_dot_w + d.w_dot_pullback != d.total:
        raise VerificationError(f"minimal model correction at p={p}: got {d.total}, expected {expected}")
    return d.total
