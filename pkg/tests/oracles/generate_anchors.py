"""Generate frozen reference values (anchors.json) with the brute-force oracle.

Run once from the repository root and commit the output:

    python3 tests/oracles/generate_anchors.py

The whole run stays under five minutes; the test suite never runs this, it
only reads the committed JSON.
"""

import json
import pathlib
import time

import reference as ref

ANCHOR_PATH = pathlib.Path(__file__).with_name("anchors.json")

FINITE_T_CASES = [
    # (L [m], T [K], lambda_P [m])
    (0.5e-6, 300.0, 107e-9),
    (3.0e-6, 300.0, 107e-9),
    (1.0e-6, 600.0, 136e-9),
    (5.0e-6, 150.0, 300e-9),
    (10.0e-6, 300.0, 500e-9),
]

ZERO_T_CASES = [
    # (L [m], lambda_P [m]); includes 10x and 100x the Al plasma wavelength
    (1.07e-6, 107e-9),
    (10.7e-6, 107e-9),
    (1.0e-6, 107e-9),
]

DELTA_CASES = [
    # (L [m], T [K], lambda_P [m]) spot checks of the correlation itself
    (2.0e-6, 300.0, 107e-9),
    (4.7e-6, 300.0, 107e-9),
    (8.0e-6, 300.0, 107e-9),
    (4.7e-6, 300.0, 500e-9),
]


def main():
    started = time.time()
    anchors = {"finite_T": [], "zero_T": [], "delta_F": []}

    for L, T, lambda_P in FINITE_T_CASES:
        value = ref.pressure_finite_temperature(L, T, lambda_P)
        anchors["finite_T"].append(
            {"L_m": L, "T_K": T, "lambda_P_m": lambda_P, "pressure_Pa": value})
        print(f"finite_T  L={L:g} T={T:g} lambda_P={lambda_P:g}  ->  {value:.12e}"
              f"   [{time.time() - started:.1f}s]")

    for L, lambda_P in ZERO_T_CASES:
        value = ref.pressure_zero_temperature(L, lambda_P)
        anchors["zero_T"].append(
            {"L_m": L, "lambda_P_m": lambda_P, "pressure_Pa": value,
             "eta_P": value / ref.pressure_ideal(L)})
        print(f"zero_T    L={L:g} lambda_P={lambda_P:g}  ->  {value:.12e}"
              f"   [{time.time() - started:.1f}s]")

    for L, T, lambda_P in DELTA_CASES:
        value = ref.correlation_delta(L, T, lambda_P)
        anchors["delta_F"].append(
            {"L_m": L, "T_K": T, "lambda_P_m": lambda_P, "delta_F": value})
        print(f"delta_F   L={L:g} T={T:g} lambda_P={lambda_P:g}  ->  {value:.6e}"
              f"   [{time.time() - started:.1f}s]")

    ANCHOR_PATH.write_text(json.dumps(anchors, indent=2) + "\n")
    print(f"wrote {ANCHOR_PATH} after {time.time() - started:.1f}s")


if __name__ == "__main__":
    main()
