"""Smoke test for the hhlab Python module.

Run after `maturin develop -m crates/py/Cargo.toml`, or after
`cargo build --release -p hhlab-py --features extension-module`, in which
case the library is loaded straight from target/release.
"""

import importlib.machinery
import importlib.util
import pathlib
import sys


def load():
    try:
        import hhlab

        return hhlab
    except ImportError:
        pass
    root = pathlib.Path(__file__).resolve().parents[3]
    for name in ("libhhlab.so", "libhhlab.dylib", "hhlab.dll"):
        lib = root / "target" / "release" / name
        if lib.exists():
            loader = importlib.machinery.ExtensionFileLoader("hhlab", str(lib))
            spec = importlib.util.spec_from_loader("hhlab", loader)
            module = importlib.util.module_from_spec(spec)
            loader.exec_module(module)
            return module
    sys.exit("hhlab is not built; see the module docstring")


def main():
    hh = load()

    x = hh.Poly.variable(2, 0, 0)
    y = hh.Poly(2, 0, [([0, 1], "1/2")])
    p = (x + y) * (x + y)
    assert str(p) == "1*t1^2 + 1*t1*t2 + 1/4*t2^2", str(p)
    assert p.total_degree() == 2
    assert str(p.partial_derivative(0)) == "2*t1 + 1*t2"

    m = hh.Matrix([[1, 2], [2, 4]], 0)
    assert m.rank() == 1 and m.shape == (2, 2)
    assert hh.Matrix([[1, 1], [1, 1]], 2).rank() == 1

    assert hh.chain_homology_rank(2, 0, 1, 1) == 2
    assert hh.chain_homology_rank(2, 2, 2, 2) == 1
    assert hh.pi_induced_rank(2, 2, 2, 2) == 0
    assert [hh.koszul_ext(3, 0, q) for q in range(5)] == [1, 3, 3, 1, 0]
    assert hh.cochain_cohomology_rank(2, 2, 2, 2) == 1
    assert [hh.hkr_scaling_check(3, 0, q) for q in range(4)] == ["1", "1", "2", "6"]

    assert hh.line_bundle_cohomology(1, 0, -2) == [0, 1]
    assert hh.wedge_tangent_cohomology(2, 0, 1) == [8, 0, 0]

    assert hh.hh_affine(2, 0).hh == [1, 2, 1, 0, 0]
    assert hh.hh_projective(2, 0).hh == [1, 8, 10, 0, 0]
    r = hh.hh_projective(2, 2)
    assert r.validity is False and r.hh is None

    w = hh.characteristic_criterion(2, 2, 3, 4)
    assert w.verdict == "fails" and w.witness == (2, 2, 1, 0)
    assert hh.characteristic_criterion(2, 0, 3, 4).verdict == "holds"

    try:
        hh.chain_homology_rank(2, 4, 1, 1)
    except ValueError:
        pass
    else:
        raise AssertionError("characteristic 4 accepted")

    assert all(passed for _, _, passed in hh.selfcheck([3, 5, 7]))
    print("hhlab", hh.__version__, "smoke test passed")


if __name__ == "__main__":
    main()
