"""Independent reference computations used as test oracles.

These deliberately avoid the library's vectorised kernels: plain Python
loops, ``math`` trigonometry and compensated (``math.fsum``) accumulation.
"""

import cmath
import math


def brute_force_field(positions, excitations, pitch_x, pitch_y, k0, theta_i, theta_s, phi_s,
                      amplitude=1.0):
    """Far field ``(e_theta, e_phi)`` by direct summation over cells.

    ``positions`` is a list of ``(x, y)`` pairs aligned with the flat
    ``excitations`` list.  Loops run over n first, then m, in reverse.
    """
    ux = math.sin(theta_s) * math.cos(phi_s)
    uy = math.sin(theta_s) * math.sin(phi_s)
    re, im = [], []
    for (x, y), g in reversed(list(zip(positions, excitations))):
        term = g * cmath.exp(1j * k0 * (ux * x + uy * y)) * pitch_x * pitch_y
        re.append(term.real)
        im.append(term.imag)
    total = complex(math.fsum(re), math.fsum(im))
    c = 1j * k0 * amplitude * math.cos(theta_i) / (4.0 * math.pi)
    return (c * math.cos(theta_s) * math.cos(phi_s) * total,
            -c * math.sin(phi_s) * total)


def plate_rcs_db(area, wavelength):
    return 10.0 * math.log10(4.0 * math.pi * area ** 2 / wavelength ** 2)


def snr_hand_db(p_tx, g_a, sigma_f, sigma_b, sigma_t, wavelength, r1, r2, n0):
    """Term-by-term dB evaluation of the four-way radar equation."""
    gains = p_tx + 2 * g_a
    cross_sections = sigma_f + sigma_b + sigma_t
    wave = 20.0 * math.log10(wavelength)
    spreading = 10.0 * math.log10((4.0 * math.pi) ** 5)
    ranges = 40.0 * math.log10(r1) + 40.0 * math.log10(r2)
    return gains + cross_sections + wave - spreading - ranges - n0
