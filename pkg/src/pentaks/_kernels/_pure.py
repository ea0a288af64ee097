"""Pure numpy fallback for the family scan kernel."""

import numpy as np

_TWO_THIRDS_PI = 2.0 * np.pi / 3.0


def _characteristic_roots(overlap_sum):
    """Descending roots of x^3 - 5x^2 + (10-A)x + (3A-10), vectorised.

    Trig solve for the isolated root (Newton-polished), then deflation:
    the close pair comes from the residual quadratic, which stays exact
    at the double-root ends of the family.
    """
    A = np.asarray(overlap_sum, dtype=float)
    c1 = 10.0 - A
    c0 = 3.0 * A - 10.0
    p = 5.0 / 3.0 - A
    q = 4.0 * A / 3.0 - 70.0 / 27.0
    m = 2.0 * np.sqrt(np.maximum(-p, 0.0) / 3.0)
    pm = p * m
    with np.errstate(divide="ignore", invalid="ignore"):
        arg = np.where(np.abs(pm) > 0.0, 3.0 * q / pm, 1.0)
    phi = np.arccos(np.clip(arg, -1.0, 1.0)) / 3.0
    trig = np.sort(
        np.stack(
            [
                m * np.cos(phi),
                m * np.cos(phi - _TWO_THIRDS_PI),
                m * np.cos(phi - 2.0 * _TWO_THIRDS_PI),
            ],
            axis=-1,
        ),
        axis=-1,
    )[..., ::-1] + 5.0 / 3.0
    isolated = np.where(
        trig[..., 0] - trig[..., 1] >= trig[..., 1] - trig[..., 2],
        trig[..., 0],
        trig[..., 2],
    )
    for _ in range(2):
        slope = 3.0 * isolated ** 2 - 10.0 * isolated + c1
        value = isolated ** 3 - 5.0 * isolated ** 2 + c1 * isolated + c0
        with np.errstate(divide="ignore", invalid="ignore"):
            step = np.where(np.abs(slope) > 1e-30, value / slope, 0.0)
        isolated = isolated - step
    b_quad = isolated - 5.0
    c_quad = c1 + isolated * b_quad
    half = np.sqrt(np.maximum(b_quad * b_quad - 4.0 * c_quad, 0.0)) / 2.0
    lam = np.stack(
        [isolated, -b_quad / 2.0 + half, -b_quad / 2.0 - half], axis=-1
    )
    return np.sort(lam, axis=-1)[..., ::-1].copy()


def family_spectra(a, b, mu, nu):
    """Overlap sum and pentagram spectrum over family parameter arrays.

    The five neighbour overlap moduli of the four-angle family depend on
    (a, b) only; the phases mu, nu cancel and are accepted for interface
    parity with the full construction.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    sa2 = np.sin(a) ** 2
    ca2 = 1.0 - sa2
    sb2 = np.sin(b) ** 2
    cb2 = 1.0 - sb2
    denom = 1.0 - sa2 * sb2
    with np.errstate(divide="ignore", invalid="ignore"):
        tail = (ca2 * sb2 + sa2 * cb2) / denom
    overlap_sum = np.where(denom > 1e-14, ca2 + sa2 * sb2 + cb2 + tail, 2.0)
    return overlap_sum, _characteristic_roots(overlap_sum)
