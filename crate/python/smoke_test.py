"""Smoke test for the dunkl_qes extension module.

Build and run from the repository root:

    cargo build --release -p dunkl-qes-py --features extension-module
    cp target/release/libdunkl_qes_py.so python/dunkl_qes.so
    python3 python/smoke_test.py
"""

import math
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

import dunkl_qes as dq  # noqa: E402


def close(x, y, tol=1e-10):
    return abs(x - y) <= tol * max(1.0, abs(y))


def main():
    line = dq.Problem.line(mu=1.0, eps=0, a=0.5, b=1.0, n=1)
    levels = line.solve()
    assert [round(s.energy, 12) for s in levels] == [0.5, 4.5], levels
    for s in levels:
        assert s.residual() <= 1e-11
        assert s.node_count() == s.k
    assert [s.provenance for s in line.closed_form()] == ["closed_form"] * 2
    assert abs(line.inner_product(0, 1)) <= 1e-9 * math.sqrt(
        line.inner_product(0, 0) * line.inner_product(1, 1)
    )

    coulomb = dq.Problem.coulomb(nu=0.5, mu1=0.25, mu2=0.25, a=1.0, b=1.0, n=1)
    sols = coulomb.solve()
    assert sorted(round(s.alpha, 12) for s in sols) == [-2.0, 4.0]
    assert all(close(s.energy, 3.0) for s in sols)
    positions = [e["position"] for e in coulomb.audit()]
    assert positions == [1, 2], positions

    plane = dq.Problem.plane_oscillator(nu=1.0, mu1=0.25, mu2=0.25, a=0.5, b=1.0, n=3)
    assert len(plane.solve()) == 4
    diag, sub, sup = plane.block()
    assert len(diag) == 4 and len(sub) == len(sup) == 3

    psi = levels[1].wavefunction
    assert close(psi(0.3), psi.eval([0.3])[0])
    assert psi.reflect()(0.3) == psi(-0.3)

    energy, _ = dq.es_line_level(mu=1.0, k=0, eps=0)
    assert close(energy, 1.5)
    assert close(dq.laguerre(2, 0.0, 1.0), -0.5)

    # -u'' + r^2 u with u(0) = 0: levels 3, 7, 11.
    fd = dq.fd_eigenvalues_extrapolated(lambda r: r * r, 10.0, 3)
    assert all(close(v, e, 1e-6) for (v, _, _), e in zip(fd, [3.0, 7.0, 11.0])), fd

    try:
        dq.Problem.line(mu=-1.0, eps=0, a=0.5, b=1.0, n=1)
    except ValueError as e:
        assert "mu" in str(e)
    else:
        raise AssertionError("invalid mu accepted")

    print("dunkl_qes smoke test: ok")


if __name__ == "__main__":
    main()
