"""
Demo: four-way link budget and the desk-scale detection scan.

First the textbook SNR example, then 50 targets probed with and without
RIS apertures of three sizes.
"""

from ris_scope import LinkBudget, RisGeometry, default_scene, detection_scan, snr_db
from ris_scope.reproduce import snr_grid

####################################################################################################
# Worked example: radar -> RIS -> target -> RIS -> radar

budget = LinkBudget(p_tx=0.0, g_a=12.0, sigma_f=8.5, sigma_b=8.5, sigma_t=1.0,
                    wavelength=0.054505, r1=3.0, r2=3.0, n0=-105.0)
print(f'SNR {snr_db(budget):.2f} dB')

####################################################################################################
# SNR by quantization and aperture (peaks read from the scanned patterns)

grid = snr_grid()
print(f'\n{"":>8}' + ''.join(f'{f"[{n}x10]":>10}' for n in (8, 16, 32)))
for name in ('cont', '3-bit', '2-bit', '1-bit'):
    for theta_d in (15, 30, 45):
        row = ''.join(f'{grid[(name, n, theta_d)]:>10.2f}' for n in (8, 16, 32))
        print(f'{name:>5} {theta_d:2d}{row}')

####################################################################################################
# Detection scan: targets 2 m out, sets A/B/C probed at 45/30/15 deg

scene = default_scene()
print(f'\nscene: {len(scene.targets)} targets, transmit {scene.p_tx_dbm:.0f} dBm, noise {scene.n0_dbm:.0f} dBm')
report = detection_scan(scene, None)
print(f'no RIS   : {report.total:2d}/50 {report.counts}')
for along_y in (8, 16, 32):
    report = detection_scan(scene, RisGeometry.from_size(along_y, 10))
    print(f'[{along_y:2d}x10] : {report.total:2d}/50 {report.counts}')
