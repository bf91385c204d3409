"""Brute-force graders for the LP pipeline on tiny instances.

These enumerate candidate functions on a rational grid, or the vertices
of the simplex, independently of the simplex solver.  A grid sup is a
lower bound on the exact sup (equal when an optimizer is on the grid);
a grid inf is an upper bound.  Spaces are capped at 3 points because the
enumeration is exponential.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .core import ExtFun, Measure, pairing, rat
from .duality import conjugate

_MAX_POINTS = 3


@dataclass(frozen=True)
class GridSpec:
    bound: Fraction
    step: Fraction

    def __post_init__(self):
        b, s = rat(self.bound), rat(self.step)
        if b <= 0 or s <= 0:
            raise ValueError("bound and step must be positive")
        if (b / s).denominator != 1:
            raise ValueError("bound must be an integer multiple of step")
        object.__setattr__(self, "bound", b)
        object.__setattr__(self, "step", s)

    def points(self):
        k = int(self.bound / self.step)
        return [i * self.step for i in range(-k, k + 1)]


def _check_size(space):
    if space.n > _MAX_POINTS:
        raise ValueError(f"oracle enumeration is limited to {_MAX_POINTS} points")


def grid_sup_conjugate_transform(f: ExtFun, Q: Measure, grid: GridSpec) -> Fraction:
    """max over grid-valued phi of <Q, phi> - f^x(phi); a lower bound on F(f)(Q)."""
    _check_size(f.space)
    pts = grid.points()
    best = None
    for vals in product(pts, repeat=f.space.n):
        phi = ExtFun(f.space, vals)
        v = pairing(Q, phi) - conjugate(f, phi).value
        if best is None or v > best:
            best = v
    return best


def grid_inf_convolution(f: ExtFun, g: ExtFun, theta: ExtFun, grid: GridSpec) -> Fraction:
    """min over grid-valued xi of f^x(xi) + g^x(theta - xi); an upper bound."""
    _check_size(f.space)
    pts = grid.points()
    best = None
    for vals in product(pts, repeat=f.space.n):
        xi = ExtFun(f.space, vals)
        v = conjugate(f, xi).value + conjugate(g, theta - xi).value
        if best is None or v < best:
            best = v
    return best


def vertex_enumerate_min(f: ExtFun):
    """Exact minimum of f over its domain, with the full argmin set."""
    dom = f.dom()
    value = min(f.values[i] for i in dom)
    argmin = tuple(f.space.point_ids[i] for i in dom if f.values[i] == value)
    return value, argmin
