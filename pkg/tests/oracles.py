"""Closed-form spectra used as independent checks of the Jacobi solver."""
import math

import numpy as np


def quadratic_eigs(m):
    a, d = m[0, 0].real, m[1, 1].real
    r = math.sqrt(((a - d) / 2) ** 2 + abs(m[0, 1]) ** 2)
    return sorted([(a + d) / 2 - r, (a + d) / 2 + r])


def cubic_eigs(m):
    """Real roots of det(lambda I - m) by the trigonometric method."""
    a = [[m[i][j] for j in range(3)] for i in range(3)]
    c2 = (a[0][0] + a[1][1] + a[2][2]).real
    c1 = sum((a[i][i] * a[j][j] - a[i][j] * a[j][i]).real for i, j in ((0, 1), (0, 2), (1, 2)))
    c0 = (a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
          - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
          + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])).real
    # lambda^3 - c2 lambda^2 + c1 lambda - c0 = 0, substitute lambda = x + c2/3
    shift = c2 / 3
    p = c1 - c2 ** 2 / 3
    q = -2 * c2 ** 3 / 27 + c2 * c1 / 3 - c0
    if abs(p) < 1e-300:
        return sorted([shift + np.cbrt(-q)] * 3)
    r = 2 * math.sqrt(-p / 3)
    arg = max(-1.0, min(1.0, 3 * q / (p * r)))
    phi = math.acos(arg) / 3
    return sorted(shift + r * math.cos(phi - 2 * math.pi * k / 3) for k in range(3))
