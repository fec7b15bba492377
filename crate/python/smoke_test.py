#!/usr/bin/env python3
"""Smoke test for the cyclic_py extension module.

Builds nothing itself: it locates the compiled cdylib under target/ (run
`cargo build -p cyclic-py` first, or `--release`), loads it, and checks a
handful of exact values against the library's own test suite.
"""

import importlib.util
import json
import shutil
import sys
import tempfile
from fractions import Fraction
from pathlib import Path


def load_module():
    root = Path(__file__).resolve().parent.parent
    candidates = [
        root / "target" / profile / name
        for profile in ("release", "debug")
        for name in ("libcyclic_py.so", "libcyclic_py.dylib", "cyclic_py.dll")
    ]
    built = next((p for p in candidates if p.exists()), None)
    if built is None:
        sys.exit("cyclic_py cdylib not found; run `cargo build -p cyclic-py` first")
    tmp = Path(tempfile.mkdtemp(prefix="cyclic_py_"))
    target = tmp / ("cyclic_py" + (".pyd" if built.suffix == ".dll" else ".so"))
    shutil.copy2(built, target)
    spec = importlib.util.spec_from_file_location("cyclic_py", target)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def main():
    cy = load_module()

    # Cycle analysis.
    sigma = cy.Cycle([1, 2, 4, 5, 3])
    assert sigma.q == 5
    assert sigma.descent() == 3
    assert sigma.symmetry_order() == 1
    assert sigma.signature() == [0, 0, 1, 0, 1]
    assert sigma.one_line() == [2, 4, 1, 5, 3]
    assert sigma.regularity_index() == 2
    assert str(sigma.conjugate(3)) == "(1 2 5 3 4)"
    assert str(cy.Cycle.rotation(5, 2)) == "(1 3 5 2 4)"

    row0 = sigma.transition_matrix()[0]
    assert row0 == [0, 1, 1, 0, 0]

    # Exact stationary vector.
    ell = [Fraction(n, d) for n, d in sigma.stationary_vector()]
    assert ell == [
        Fraction(32, 242),
        Fraction(38, 242),
        Fraction(58, 242),
        Fraction(46, 242),
        Fraction(68, 242),
    ]

    # Minimal realization, bit-exact.
    orbit = cy.realize_minimal(sigma)
    assert orbit.k == 3
    nums, den = orbit.numerators()
    assert den == 242 and nums == [16, 48, 86, 144, 190]
    assert [Fraction(n, d) for n, d in orbit.points()] == [
        Fraction(a, 121) for a in (8, 24, 43, 72, 95)
    ]
    assert orbit.fix() == ([0, 0, 1, 0, 1], 0)
    assert orbit.dep() == [3, 5]
    assert orbit.classify() == sigma

    # Degree-4 realization by deployment vector, and the rotated copy.
    o1 = cy.realize_from_dep(sigma, [1, 3, 5])
    assert o1.numerators()[0] == [110, 440, 539, 737, 902]
    o5 = cy.realize_general(sigma, 4, [0, 0, 1, 0, 2], 0)
    o6 = cy.realize_general(sigma, 4, [0, 0, 1, 0, 2], 1)
    assert o5.rotate(1, 3) == o6

    # Closed-form counts.
    assert sigma.count_realizations(4) == 6
    assert sigma.count_type_realizations(4) == 15
    assert len(cy.enumerate_admissible(sigma, 4)) == 6

    # Type census and brute-force verification.
    assert len(cy.enumerate_types(5)) == 8
    assert len(cy.enumerate_orbits(5, 3)) == 48
    report = json.loads(cy.verify_counts(5, 3))
    assert report["pass"] is True
    assert report["total_orbits"] == 48

    # Domain errors surface as ValueError.
    try:
        cy.realize_minimal(cy.Cycle([1, 2, 3, 4, 5]))
    except ValueError:
        pass
    else:
        raise AssertionError("rotation cycle must not have a minimal realization")

    svg = cy.render_svg(orbit)
    assert svg.startswith("<svg") and "1/242" in svg

    print("cyclic_py smoke test: OK")


if __name__ == "__main__":
    main()
