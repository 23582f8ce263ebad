"""Smoke test for the compiled krein_csym module.

Build and install first, e.g.

    pip install maturin
    maturin build --release -m crates/py/Cargo.toml -o dist
    pip install dist/krein_csym-*.whl
"""

import cmath
import math
import sys

import krein_csym as kc


def close(a, b, tol):
    return abs(a - b) <= tol


def main():
    t = math.tan(math.pi / 8)
    quarter = kc.ExtParams(0.0, math.pi / 4, 0.0, 0.0)

    cls = kc.classify(quarter)
    assert cls["stable"] and cls["self_adjoint"] and not cls["upsilon"], cls

    closed = kc.closed_form_eigenvalues(quarter)["values"]
    expect = [-0.25 / t**2, -0.25 * t**2]
    assert all(close(a, b, 1e-12) for a, b in zip(closed, expect)), closed

    solved = kc.find_discrete_spectrum(quarter, interval=(-10.0, 0.0))["values"]
    assert all(close(a, b, 1e-10) for a, b in zip(solved, closed)), solved

    upsilon = kc.closed_form_eigenvalues(kc.ExtParams(0.0, math.pi / 2))["values"]
    assert len(upsilon) == 2 and all(close(r, -0.25, 1e-14) for r in upsilon), upsilon
    assert kc.closed_form_eigenvalues(kc.ExtParams(0.0, math.pi / 2, math.pi / 2))["values"] == []

    oracle = kc.oracle_scan(quarter)["values"]
    assert all(abs((a - b) / b) < 1e-3 for a, b in zip(oracle, expect)), oracle

    p = kc.ExtParams(0.3, 0.2, 0.7, 1.1)
    k = kc.build_k(p)
    c = kc.csym_of_extension(p)
    comm = [
        [sum(k[i][m] * c[m][j] - c[i][m] * k[m][j] for m in range(2)) for j in range(2)]
        for i in range(2)
    ]
    assert max(abs(z) for row in comm for z in row) < 1e-10
    det = k[0][0] * k[1][1] - k[0][1] * k[1][0]
    assert close(det, -cmath.exp(-1.4j), 1e-12)

    unstable = kc.ExtParams(1.0, math.pi / 3)
    try:
        kc.find_discrete_spectrum(unstable)
    except ArithmeticError:
        pass
    else:
        raise AssertionError("unstable parameters must be rejected")
    roots = kc.nonreal_spectrum_probe(unstable)
    assert len(roots) == 2 and all(abs(z.imag) > 1e-6 for z in roots), roots

    assert kc.limit_transition(0.0, 20.0) < 1e-8
    assert kc.kernel_gram_min_eig([1j, 2 + 1j, -1 + 0.5j]) >= -1e-10

    print(f"krein_csym {kc.__version__}: smoke test passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
