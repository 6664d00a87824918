"""Whitney-type ball cover, squared partition of unity and coloring.

Balls B(x_j, nu r_j) are selected greedily in row-major grid order so
that the half-radius balls cover {r > 0}; slow variation of r bounds the
overlap by 15^n, and a greedy coloring of the intersection graph yields
at most that many classes of pairwise disjoint balls.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .holder import ControlField

OVERLAP_BOUND_BASE = 15  # N_n = 15^n


def bump(t: np.ndarray) -> np.ndarray:
    """Plateau bump: 1 on |t| <= 1/2, supported in |t| <= 1.

    exp(1 - 1/(1 - u^2)) with u = clamp(2|t| - 1, 0, 1).
    """
    with np.errstate(over="ignore", under="ignore", invalid="ignore"):
        u = np.clip(2.0 * np.abs(np.asarray(t, dtype=float)) - 1.0, 0.0, 1.0)
        out = np.zeros_like(u)
        inner = u < 1.0
        out[inner] = np.exp(1.0 - 1.0 / (1.0 - u[inner] ** 2))
    return out


@dataclass(frozen=True)
class CoverBall:
    index: tuple[int, ...]  # grid index of the center
    center: tuple[float, ...]
    r: float  # control-field value at the center
    radius: float  # nu * r


def _window(shape, index, steps):
    return tuple(
        slice(max(0, i - steps), min(s, i + steps + 1)) for i, s in zip(index, shape)
    )


def _distance_grid(field: ControlField, window, center):
    axes = []
    for axis, sl in enumerate(window):
        coords = field.origin[axis] + field.spacing * np.arange(sl.start, sl.stop)
        axes.append(coords - center[axis])
    if len(axes) == 1:
        return np.abs(axes[0])
    du, dv = np.meshgrid(*axes, indexing="ij")
    return np.hypot(du, dv)


def build_cover(
    field: ControlField, nu: float, min_radius_cells: float = 4.0
) -> list[CoverBall]:
    """Greedy half-radius cover of {r > 0}, scanning in row-major order.

    A sampled partition function narrower than a few cells aliases to a
    spike, so radii are floored at ``min_radius_cells`` grid cells; the
    floor is capped by half the distance to {r = 0} so that no ball ever
    touches the degenerate set and the zero branch of the partition
    identity stays exact.
    """
    if nu <= 0:
        raise ValueError("nu must be positive")
    from scipy.ndimage import distance_transform_edt

    r = field.values
    h = field.spacing
    positive = field.positive_mask()
    zero_dist = distance_transform_edt(positive, sampling=h)
    covered = ~positive
    balls: list[CoverBall] = []
    flat = covered.ravel()
    size = flat.size
    pos = 0
    while True:
        nxt = int(np.argmin(flat[pos:])) + pos if pos < size else size
        if nxt >= size or flat[nxt]:
            break
        pos = nxt
        index = np.unravel_index(nxt, covered.shape)
        rj = float(r[index])
        center = tuple(
            field.origin[axis] + h * index[axis] for axis in range(r.ndim)
        )
        floor = min(min_radius_cells * h, 0.5 * float(zero_dist[index]))
        radius = max(nu * rj, floor)
        balls.append(CoverBall(tuple(int(i) for i in index), center, rj, radius))
        steps = int(radius / 2.0 / h) + 1
        win = _window(covered.shape, index, steps)
        dist = _distance_grid(field, win, center)
        covered[win] |= dist <= radius / 2.0 + 1e-12 * radius
        flat = covered.ravel()
    return balls


def overlap_counts(field: ControlField, balls) -> np.ndarray:
    """Number of balls containing each grid point."""
    counts = np.zeros_like(field.values, dtype=int)
    h = field.spacing
    for ball in balls:
        steps = int(ball.radius / h) + 1
        win = _window(counts.shape, ball.index, steps)
        dist = _distance_grid(field, win, ball.center)
        counts[win] += dist < ball.radius
    return counts


def color_classes(balls) -> list[int]:
    """Greedy coloring of the intersection graph in ball-index order."""
    colors: list[int] = []
    for j, ball in enumerate(balls):
        taken = set()
        for i in range(j):
            other = balls[i]
            gap = math.dist(ball.center, other.center)
            if gap < ball.radius + other.radius:
                taken.add(colors[i])
        color = 0
        while color in taken:
            color += 1
        colors.append(color)
    return colors


@dataclass
class PartitionOfUnity:
    """psi_j supported in B(x_j, nu r_j) with sum psi_j^2 = 1 on {r > 0}."""

    balls: list[CoverBall]
    windows: list[tuple[slice, ...]]
    psis: list[np.ndarray]
    colors: list[int]
    sum_squares: np.ndarray
    nu: float

    @property
    def class_count(self) -> int:
        return max(self.colors) + 1 if self.colors else 0


def partition_functions(field: ControlField, balls, nu: float) -> PartitionOfUnity:
    """Normalize per-ball bumps by the root of their summed squares."""
    h = field.spacing
    shape = field.values.shape
    weights = []
    windows = []
    denom = np.zeros(shape, dtype=float)
    for ball in balls:
        steps = int(ball.radius / h) + 1
        win = _window(shape, ball.index, steps)
        dist = _distance_grid(field, win, ball.center)
        w = bump(dist / ball.radius)
        weights.append(w)
        windows.append(win)
        denom[win] += w**2
    positive = field.positive_mask()
    if balls and float(denom[positive].min(initial=np.inf)) < 1.0 - 1e-9:
        raise RuntimeError(
            "partition normalization below one at a covered point; cover is broken"
        )
    root = np.sqrt(denom, out=np.zeros_like(denom), where=denom > 0)
    psis = []
    total = np.zeros(shape, dtype=float)
    for win, w in zip(windows, weights):
        psi = np.zeros_like(w)
        np.divide(w, root[win], out=psi, where=root[win] > 0)
        psis.append(psi)
        total[win] += psi**2
    return PartitionOfUnity(
        balls=list(balls),
        windows=windows,
        psis=psis,
        colors=color_classes(balls),
        sum_squares=total,
        nu=nu,
    )
