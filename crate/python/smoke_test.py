"""Quick end-to-end check of the aybe Python bindings.

Build and install the extension first, for example with
``maturin develop -m crates/python/Cargo.toml`` inside a virtualenv, then run
``python python/smoke_test.py``.
"""

import sys

import aybe


def check(name, ok):
    print(f"{'ok  ' if ok else 'FAIL'} {name}")
    return bool(ok)


def main():
    results = []

    structures = aybe.enumerate(3)
    results.append(check("enumerate(3) has 14 structures", len(structures) == 14))

    bd = aybe.AssocBD([2, 3, 1], [2, 3, 1], [(1, 2)])
    results.append(check("json round trip", aybe.AssocBD.from_json(bd.to_json()) == bd))
    results.append(check("gamma2 of the example", bd.gamma2 == [(2, 3)]))

    r = aybe.trig_r(bd)
    for suite in ["aybe", "unitarity", "s_identity", "cubic"]:
        results.append(check(f"trig_r {suite}", aybe.verify_r(suite, r, seed=7, samples=16)))
    results.append(check("trig_r r0_r1", aybe.verify_r("r0_r1", r, tol=1e-5, seed=7, samples=8)))
    results.append(check("quasi-period", aybe.verify_quasi_period(bd, seed=7, samples=8)))

    bad = r.perturbed(aybe.standard_perturbation(3))
    results.append(check("perturbed trig_r fails aybe", not aybe.verify_r("aybe", bad, seed=7, samples=16)))

    q = aybe.quantum_r(bd)
    results.append(check("quantum_r qybe", aybe.verify_r("qybe", q, seed=7, samples=12)))
    results.append(check("cybe", aybe.verify_cybe(aybe.classical_r0(bd), seed=7, samples=12)))

    rat = aybe.rational_r(2, 1.0)
    results.append(check("rational qybe", aybe.verify_r("qybe", rat, seed=7, samples=12)))
    results.append(check("rational qybe_unitarity", aybe.verify_r("qybe_unitarity", rat, seed=7, samples=12)))

    phi = aybe.phi_a_r([[0.3, 0.0], [0.0, -0.8]], 1.0 + 0.5j)
    results.append(check("phi_a aybe", aybe.verify_r("aybe", phi, seed=7, samples=12)))

    results.append(check("h-equation for 1/v", aybe.verify_h_equation("inverse_v")))
    results.append(check("h-equation for coth(v/2)/2 - v/12", aybe.verify_h_equation("half_coth_linear")))

    m = aybe.example_matrix(3, 4)
    obd = aybe.bd_from_matrix(m)
    results.append(check("example matrix is simple", m.is_simple()))
    results.append(check("matrix structure is realizable", aybe.realizable(obd)))
    results.append(check("massey tensor aybe2", aybe.verify_aybe2(aybe.massey_tensor(m), seed=7, samples=12)))
    gap = aybe.massey_gap(m, 0.4 + 0.3j, 0.7 - 0.2j, -0.5 + 0.9j)
    results.append(check(f"massey tensor matches the structure solution (gap {gap:.1e})", gap < 1e-10))
    t = aybe.r_multiplicative(obd)(0.4 + 0.3j, 0.7 - 0.2j, -0.5 + 0.9j)
    results.append(check("multiplicative solution returns a tensor", t.n == 3))

    passed = sum(results)
    print(f"{passed}/{len(results)} checks passed")
    return 0 if passed == len(results) else 1


if __name__ == "__main__":
    sys.exit(main())
