#!/usr/bin/env python3
"""Smoke test for the Python bindings.

Builds nothing itself: compile the extension first with

    cargo build --release -p nonclassical-py

then run

    python3 python/smoke_test.py

The script copies the produced shared object into a temp directory under the
importable name `nonclassical.so` and exercises the main surface.
"""

import math
import shutil
import sys
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent


def import_bindings():
    candidates = [
        REPO / "target" / "release" / "libnonclassical_py.so",
        REPO / "target" / "debug" / "libnonclassical_py.so",
    ]
    built = next((p for p in candidates if p.exists()), None)
    if built is None:
        sys.exit(
            "extension not found; run: cargo build --release -p nonclassical-py"
        )
    stage = Path(tempfile.mkdtemp(prefix="nonclassical-py-"))
    shutil.copy2(built, stage / "nonclassical.so")
    sys.path.insert(0, str(stage))
    import nonclassical

    return nonclassical


def approx(a, b, tol):
    assert abs(a - b) < tol, f"{a} vs {b} (tol {tol})"


def main():
    ncl = import_bindings()
    FockState = ncl.FockState

    # constructors and normalization
    state = FockState([3, 4j])
    coeffs = state.coefficients()
    approx(abs(coeffs[0]), 0.6, 1e-12)
    approx(abs(coeffs[1]), 0.8, 1e-12)
    print("[ok] normalizing constructor")

    ngbs = FockState.ngbs(25, 0.2, 0.5)
    approx(sum(ngbs.photon_number_distribution()), 1.0, 1e-10)
    plain = FockState.binomial(10, 0.3)
    reduced = FockState.ngbs(10, 0.3, 0.0)
    worst = max(
        abs(a - b) for a, b in zip(plain.coefficients(), reduced.coefficients())
    )
    assert worst < 1e-12
    print("[ok] state families (ngbs, binomial, q=0 reduction)")

    # moments
    approx(FockState.fock(2).moment(2, 2).real, 2.0, 1e-12)
    approx(ncl.ngbs_moment_closed_form(10, 0.5, -0.02, 1, 1),
           FockState.ngbs(10, 0.5, -0.02).moment(1, 1).real, 1e-10)
    assert ncl.stirling2(4, 2) == 7
    print("[ok] moment engine and closed form")

    # witnesses
    value, verdict = FockState.fock(5).witness("hoa", 1)
    approx(value, -5.0, 1e-9)
    assert verdict
    value, verdict = FockState.fock(3).witness("agarwal-tara", 2)
    approx(value, -1.0, 1e-12)
    coherent = FockState.coherent(1.0)
    for name in ncl.criteria():
        order = {"hoa": 1, "hosps": 2, "hong-mandel": 2, "hillery": 1,
                 "agarwal-tara": 2, "vogel": 3}[name]
        value, _ = coherent.witness(name, order)
        assert abs(value) < 1e-6, f"{name}: {value}"
    try:
        coherent.witness("hong-mandel", 3)
    except ValueError:
        pass
    else:
        raise AssertionError("odd Hong-Mandel order must raise")
    print("[ok] witnesses (fock ladder, coherent boundary, domain errors)")

    # phase space
    vacuum = FockState.fock(0)
    approx(vacuum.wigner(0.0, 0.0), 1.0 / math.pi, 1e-13)
    one = FockState.fock(1)
    approx(one.wigner(0.0, 0.0), -1.0 / math.pi, 1e-13)
    approx(one.wigner_series(0.7, -0.3), one.wigner(0.7, -0.3), 1e-9)
    approx(one.wigner_quadrature(0.7, -0.3), one.wigner(0.7, -0.3), 1e-9)
    xs, ps, rows = ngbs.wigner_grid(resolution=61)
    assert len(xs) == 61 and len(rows) == 61 and len(rows[0]) == 61
    assert min(min(r) for r in rows) < 0  # negative region
    print("[ok] wigner point, oracles and grid")

    approx(vacuum.tomogram(0.4, 1.0),
           math.exp(-0.16) / math.sqrt(math.pi), 1e-12)
    assert one.radon_residual(1.1, 0.5) < 1e-6
    print("[ok] tomogram and radon identity")

    result = one.nonclassical_volume(tolerance=1e-5)
    approx(result.delta, 4.0 * math.exp(-0.5) - 2.0, 1e-5)
    approx(result.negative_volume, result.delta / 2.0, 1e-15)
    assert result.converged
    assert len(result.history) >= 2
    print(f"[ok] nonclassical volume (delta = {result.delta:.6f})")

    print("smoke test passed")


if __name__ == "__main__":
    main()
