"""Compiled Brownian walk kernel.

Each molecule owns an xoshiro256** stream; its 256-bit state is supplied by
the caller, so results do not depend on how molecules are split across
workers.
"""

import math

import numba as nb
import numpy as np

_U = np.uint64
_TO_UNIT = 1.0 / 9007199254740992.0  # 2**-53


@nb.njit(inline="always")
def _rotl(x, k):
    return (x << _U(k)) | (x >> _U(64 - k))


@nb.njit(inline="always")
def _next(s):
    result = _rotl(s[1] * _U(5), 7) * _U(9)
    t = s[1] << _U(17)
    s[2] ^= s[0]
    s[3] ^= s[1]
    s[1] ^= s[2]
    s[0] ^= s[3]
    s[2] ^= t
    s[3] = _rotl(s[3], 45)
    return (result >> _U(11)) * _TO_UNIT


@nb.njit(inline="always")
def _gauss_pair(s):
    # Marsaglia polar method
    while True:
        u = 2.0 * _next(s) - 1.0
        v = 2.0 * _next(s) - 1.0
        r2 = u * u + v * v
        if 0.0 < r2 < 1.0:
            f = math.sqrt(-2.0 * math.log(r2) / r2)
            return u * f, v * f


@nb.njit(cache=True, nogil=True)
def walk(states, tx, centers, radii, sigma, n_steps, jump_sigmas, hit_time_steps, hit_rx, hit_pt):
    """Advance every molecule until absorption or ``n_steps``.

    ``hit_time_steps`` receives the hit time in units of dt (or -1.0),
    ``hit_rx`` the receiver index (or -1), ``hit_pt`` the surface point.
    With ``jump_sigmas > 0`` a molecule whose distance to every receiver
    surface exceeds ``jump_sigmas`` standard deviations of an m-step
    displacement advances m steps in one Gaussian draw.
    """
    n_mol = states.shape[0]
    n_rx = radii.shape[0]
    s = np.empty(4, dtype=np.uint64)
    for mol in range(n_mol):
        for q in range(4):
            s[q] = states[mol, q]
        px, py, pz = tx[0], tx[1], tx[2]
        have_spare = False
        spare = 0.0
        k = 0
        hit_time_steps[mol] = -1.0
        hit_rx[mol] = -1
        while k < n_steps:
            m = 1
            if jump_sigmas > 0.0:
                gap = math.inf
                for i in range(n_rx):
                    dx = px - centers[i, 0]
                    dy = py - centers[i, 1]
                    dz = pz - centers[i, 2]
                    d = math.sqrt(dx * dx + dy * dy + dz * dz) - radii[i]
                    if d < gap:
                        gap = d
                ratio = gap / (jump_sigmas * sigma)
                if ratio * ratio >= 2.0:
                    m = int(ratio * ratio)
                    if m > n_steps - k:
                        m = n_steps - k
            scale = sigma * math.sqrt(m)
            if have_spare:
                g0 = spare
                g1, g2 = _gauss_pair(s)
                have_spare = False
            else:
                g0, g1 = _gauss_pair(s)
                g2, spare = _gauss_pair(s)
                have_spare = True
            qx = px + scale * g0
            qy = py + scale * g1
            qz = pz + scale * g2
            for i in range(n_rx):
                cx, cy, cz, r = centers[i, 0], centers[i, 1], centers[i, 2], radii[i]
                ex, ey, ez = qx - cx, qy - cy, qz - cz
                if ex * ex + ey * ey + ez * ez <= r * r:
                    fx, fy, fz = px - cx, py - cy, pz - cz
                    c = fx * fx + fy * fy + fz * fz - r * r
                    if c <= 0.0:
                        # start already inside through rounding: nearest surface point
                        frac = 0.0
                        hx, hy, hz = fx, fy, fz
                    else:
                        ux, uy, uz = qx - px, qy - py, qz - pz
                        a = ux * ux + uy * uy + uz * uz
                        b = 2.0 * (fx * ux + fy * uy + fz * uz)
                        disc = b * b - 4.0 * a * c
                        if disc < 0.0:
                            disc = 0.0
                        frac = (-b - math.sqrt(disc)) / (2.0 * a)
                        if frac < 0.0:
                            frac = 0.0
                        elif frac > 1.0:
                            frac = 1.0
                        hx, hy, hz = fx + frac * ux, fy + frac * uy, fz + frac * uz
                    norm = math.sqrt(hx * hx + hy * hy + hz * hz)
                    hit_pt[mol, 0] = cx + r * hx / norm
                    hit_pt[mol, 1] = cy + r * hy / norm
                    hit_pt[mol, 2] = cz + r * hz / norm
                    hit_rx[mol] = i
                    hit_time_steps[mol] = k + frac * m
                    break
            if hit_rx[mol] >= 0:
                break
            px, py, pz = qx, qy, qz
            k += m
