"""Vertical correction divisors on a single bad fibre.

Every solve here has the same shape: find a vertical divisor ``V`` whose
intersection numbers with all fibre components are prescribed.  The
intersection form on a fibre is negative semi-definite with kernel spanned by
the full fibre, so ``V`` is determined up to adding multiples of the fibre.
Fixing the coefficient of one component (``normalize_on``) to zero picks a
representative.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import EmptyCuspList, NormalizationInKernelComplement
from .exact_linalg import as_rational, solve_affine
from .lattice import (
    FiberConfiguration,
    HorizontalProfile,
    VerticalDivisor,
    intersect_with_components,
    pair_vertical,
    require_fiber_relation,
)


@dataclass(frozen=True)
class CorrectionTarget:
    """The class ``scale * (horizontal + vertical)``.

    ``(1/(2g-2)) K`` is ``CorrectionTarget((2g-2) S, V, 1/(2g-2))``;
    ``(1/d) beta^* infinity`` carries the pulled-back cusps in ``horizontal``.
    """

    horizontal: HorizontalProfile
    vertical: VerticalDivisor
    scale: Fraction

    def __post_init__(self):
        object.__setattr__(self, "scale", as_rational(self.scale))
        if self.scale == 0:
            raise ValueError("target scale must be nonzero")

    def pairing(self, cfg: FiberConfiguration) -> list[Fraction]:
        """``T . C`` for every component ``C``."""
        vert = intersect_with_components(self.vertical, cfg)
        return [self.scale * (h + v) for h, v in zip(self.horizontal.hits, vert)]


def solve_vertical(cfg: FiberConfiguration, rhs: Sequence, normalize_on) -> VerticalDivisor:
    """Solve ``V . C_i = rhs[i]`` for all ``i`` with ``V`` vanishing on ``normalize_on``."""
    k = cfg.index(normalize_on)
    keep = [j for j in range(len(cfg)) if j != k]
    M = cfg.matrix().drop_column(k)
    particular, kernel = solve_affine(M, rhs)
    if kernel:
        raise NormalizationInKernelComplement(
            f"fixing {cfg.components[k].label} leaves a {len(kernel)}-dimensional family"
        )
    coeffs = [Fraction(0)] * len(cfg)
    for j, x in zip(keep, particular):
        coeffs[j] = x
    return VerticalDivisor(coeffs)


def solve_canonical_vertical(
    cfg: FiberConfiguration, cusp: HorizontalProfile, g: int, normalize_on="L"
) -> VerticalDivisor:
    """Vertical part ``V`` of a canonical divisor ``K = (2g-2) S + V``.

    ``V`` is fixed by adjunction, ``K . C = 2 g(C) - 2 - C^2`` on every component.
    """
    if g < 2:
        raise ValueError("genus must be at least 2")
    require_fiber_relation(cfg)
    rhs = [
        2 * c.genus - 2 - c.self_intersection - (2 * g - 2) * h
        for c, h in zip(cfg.components, cusp.hits)
    ]
    return solve_vertical(cfg, rhs, normalize_on)


def canonical_target(cusp: HorizontalProfile, V: VerticalDivisor, g: int) -> CorrectionTarget:
    return CorrectionTarget(cusp.scaled(2 * g - 2), V, Fraction(1, 2 * g - 2))


def solve_correction(
    cfg: FiberConfiguration,
    cusp: HorizontalProfile,
    target: CorrectionTarget,
    normalize_on="L",
) -> VerticalDivisor:
    """``V`` with ``(S + V - T) . C = 0`` for every component ``C``."""
    require_fiber_relation(cfg)
    T = target.pairing(cfg)
    rhs = [t - h for t, h in zip(T, cusp.hits)]
    return solve_vertical(cfg, rhs, normalize_on)


def squared_correction(V: VerticalDivisor, cfg: FiberConfiguration) -> Fraction:
    return pair_vertical(V, V, cfg)


def a_p_from_lattice(
    cfg: FiberConfiguration,
    cusps: Sequence[tuple[int, VerticalDivisor, VerticalDivisor]],
    g: int,
    d: int,
) -> Fraction:
    """Coefficient of ``log Nm(p)`` contributed by one bad fibre.

    ``cusps`` lists ``(b_j, F_j, G_j)`` for the cusps in the pulled-back divisor
    at infinity, ``b_j`` being the ramification index.
    """
    if not cusps:
        raise EmptyCuspList("no cusps given")
    if d < 1 or any(b < 1 for b, _, _ in cusps):
        raise ValueError("degree and ramification indices must be positive")
    squares: dict[int, Fraction] = {}

    def sq(D):
        # the same divisor object usually repeats across cusps of one orbit
        if id(D) not in squares:
            squares[id(D)] = squared_correction(D, cfg)
        return squares[id(D)]

    G_part = sum((b * sq(G) for b, _, G in cusps), Fraction(0))
    F_part = sum((b * sq(F) for b, F, _ in cusps), Fraction(0))
    return Fraction(-2 * g, d) * G_part + Fraction(2 * g - 2, d) * F_part


def a_p_single_cusp(F2: Fraction, G2: Fraction, g: int) -> Fraction:
    """Same as :func:`a_p_from_lattice` when all cusp terms agree and ``sum b_j = d``."""
    return -2 * g * G2 + (2 * g - 2) * F2
