"""Upper bounds for the Arakelov self-intersection of the dualizing sheaf.

A bound has the shape

    omega^2 <= (2g - 2) * ( c_D log|Delta| + [E:Q] (kappa1 log b_max + kappa2) + c_p log p )

with the analytic constants ``kappa1``, ``kappa2`` kept symbolic.  Only the
right-hand side is represented; nothing here evaluates it numerically.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from fractions import Fraction

from .contraction import minimal_model_correction
from .errors import VerificationError, WrongExpressionKind
from .exact_linalg import as_rational
from .fermat import CUSP_CLASSES, INFINITY_CLASS, FermatModel, build, require_fermat_prime
from .solver import (
    a_p_from_lattice,
    canonical_target,
    solve_canonical_vertical,
    solve_correction,
    squared_correction,
)

MODELS = ("regular", "minimal")


def regular_closed_form(p: int) -> Fraction:
    return Fraction(p * p - 4 * p + 2, p * (p - 3))


def minimal_closed_form(p: int) -> Fraction:
    return Fraction(3 * p * p - 14 * p + 15, p * (p - 3))


def folded_closed_form(p: int) -> Fraction:
    return Fraction(2 * p * p - p - 5, p)


@dataclass(frozen=True)
class BoundExpression:
    p: int
    model: str
    genus_factor: Fraction
    disc_coeff: Fraction
    degree: int
    b_max: int
    logp_coeff: Fraction
    folded: bool = False

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "model": self.model,
            "genus_factor": str(self.genus_factor),
            "disc_coeff": str(self.disc_coeff),
            "degree": self.degree,
            "b_max": self.b_max,
            "logp_coeff": str(self.logp_coeff),
            "folded": self.folded,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "BoundExpression":
        if d["model"] not in MODELS:
            raise ValueError(f"unknown model {d['model']!r}")
        return cls(
            p=int(d["p"]),
            model=d["model"],
            genus_factor=as_rational(d["genus_factor"]),
            disc_coeff=as_rational(d["disc_coeff"]),
            degree=int(d["degree"]),
            b_max=int(d["b_max"]),
            logp_coeff=as_rational(d["logp_coeff"]),
            folded=bool(d["folded"]),
        )


def cusp_corrections(model: FermatModel | int):
    """Solve ``F_j`` and ``G_j`` for the three cusp classes on the regular model.

    Returns ``(model, K_vertical, {cls: (F, G)})``.  ``K`` is built from the
    cusp ``S_x``; every ``F_j`` is measured against that one canonical divisor.
    """
    if isinstance(model, int):
        model = build(model)
    cfg, g = model.cfg, model.genus
    S_x = model.cusp("x")
    V = solve_canonical_vertical(cfg, S_x, g, normalize_on="L")
    K_over = canonical_target(S_x, V, g)
    B_over = model.pullback_target(INFINITY_CLASS)
    out = {}
    for cls in CUSP_CLASSES:
        S = model.cusp(cls)
        F = solve_correction(cfg, S, K_over, normalize_on="L")
        G = solve_correction(cfg, S, B_over, normalize_on="L")
        out[cls] = (F, G)
    return model, V, out


def a_p(model: FermatModel | int) -> Fraction:
    """Regular-model coefficient of ``log p``, summed over the cusps above infinity."""
    model, _, corr = cusp_corrections(model)
    cfg, p = model.cfg, model.p
    squares = {cls: (squared_correction(F, cfg), squared_correction(G, cfg)) for cls, (F, G) in corr.items()}
    if len(set(squares.values())) != 1:
        raise VerificationError(f"cusp classes disagree on F^2, G^2 at p={p}: {squares}")
    F, G = corr[INFINITY_CLASS]
    # p cusps over infinity, each with ramification index p
    cusps = [(p, F, G)] * p
    return a_p_from_lattice(cfg, cusps, model.genus, model.degree)


def bound_regular(p: int) -> BoundExpression:
    require_fermat_prime(p)
    coeff = a_p(p)
    if coeff != regular_closed_form(p):
        raise VerificationError(f"a_p at p={p} is {coeff}, expected {regular_closed_form(p)}")
    return BoundExpression(
        p=p,
        model="regular",
        genus_factor=Fraction(p * (p - 3)),
        disc_coeff=Fraction(2),
        degree=p - 1,
        b_max=p,
        logp_coeff=coeff,
    )


def bound_minimal(p: int) -> BoundExpression:
    reg = bound_regular(p)
    h = reg.genus_factor
    coeff = reg.logp_coeff + minimal_model_correction(p) / h
    if h * reg.logp_coeff + (2 * p * p - 10 * p + 13) != h * minimal_closed_form(p) or coeff != minimal_closed_form(p):
        raise VerificationError(f"minimal-model coefficient at p={p} is {coeff}")
    return replace(reg, model="minimal", logp_coeff=coeff)


def fold_cyclotomic(expr: BoundExpression) -> BoundExpression:
    """Absorb ``2 log|Delta| = 2 (p - 2) log p`` into the ``log p`` coefficient."""
    if expr.model != "minimal" or expr.folded:
        raise WrongExpressionKind("only an unfolded minimal-model bound can be folded")
    p = expr.p
    coeff = expr.logp_coeff + expr.disc_coeff * (p - 2)
    if 2 * p**3 - 7 * p**2 - 2 * p + 15 != (2 * p * p - p - 5) * (p - 3):
        raise VerificationError("polynomial identity failed")
    if coeff != folded_closed_form(p):
        raise VerificationError(f"folded coefficient at p={p} is {coeff}")
    return replace(expr, disc_coeff=Fraction(0), logp_coeff=coeff, folded=True)


def make_bound(p: int, kind: str = "regular", folded: bool = False) -> BoundExpression:
    if kind not in MODELS:
        raise ValueError(f"unknown model kind {kind!r}")
    if folded and kind != "minimal":
        raise WrongExpressionKind("folding applies to the minimal-model bound")
    expr = bound_regular(p) if kind == "regular" else bound_minimal(p)
    return fold_cyclotomic(expr) if folded else expr


def _coef(x: Fraction) -> str:
    return str(x)


def render(expr: BoundExpression, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(expr.to_dict(), sort_keys=False)
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    lhs = "ω²_min" if expr.model == "minimal" else "ω²"
    terms = []
    if expr.disc_coeff:
        terms.append(f"{_coef(expr.disc_coeff)}·log|Δ|")
    terms.append(f"{expr.degree}·(κ1·log {expr.b_max} + κ2)")
    terms.append(f"{_coef(expr.logp_coeff)}·log {expr.p}")
    return f"{lhs} ≤ {_coef(expr.genus_factor)}·( " + " + ".join(terms) + " )"


def parse(text: str) -> BoundExpression:
    return BoundExpression.from_dict(json.loads(text))
