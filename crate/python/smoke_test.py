"""Smoke test for the nilorb Python extension.

Build and install the module first:

    maturin build --release -m crates/py/Cargo.toml -o dist
    pip install dist/nilorb-*.whl

then run ``python python/smoke_test.py``.
"""

from fractions import Fraction

import nilorb


def check(label, got, want):
    status = "ok  " if got == want else "FAIL"
    print(f"{status} {label}: {got!r}")
    return got == want


def main():
    results = []
    p = nilorb.Pipeline(2)
    results.append(check("A_2(1)", p.a(1), [1]))
    results.append(check("A_2(3)", p.a(3), [0, 2, 3, 0, 1]))
    results.append(check("A_2(4) pretty", p.pretty("A", 4), "q^9 + q^7 + q^6 + 4q^5 + 2q^4 + 7q^3 + 4q^2 + 2q"))
    results.append(check("M_2(1..3)", p.m(3), [[1], [1, 2], [1, 4, 3, 0, 1]]))
    results.append(check("I_2(2)", p.i(2), [0, 2]))

    num, den = nilorb.Pipeline(1).h(2)
    results.append(check("H_1(2) numerator", num, [Fraction(3, 2), 1]))
    results.append(check("H_1(2) denominator", den, [-1, 0, 1]))

    results.append(check("thm5 routes g=2 N=4", p.verify_m_routes(4)["passed"], True))
    results.append(check("kwi g=2 N=3 Q=8", p.verify_kwi(3, 8)["passed"], True))
    results.append(check("g=1 product N=5 Q=8", nilorb.verify_g1_product(5, 8)["passed"], True))
    results.append(check("scan g=2 Nmax=6", p.conjecture_scan(6), []))

    results.append(check("Burnside M_2(2) at q=2", nilorb.burnside_m(2, 2, 2), 5))
    orbits = nilorb.orbits(2, 2, 2)
    results.append(check("orbit sizes", sum(size for size, _, _ in orbits), 16))
    results.append(check("(I, A) at (2,3,2)", nilorb.bruteforce_i_a(2, 3, 2), (32, 32)))
    results.append(check("nilpotent 3x3 over F_2", nilorb.count_nilpotent(3, 2), 64))
    results.append(check("nilcount (2,1), x, q=3", nilorb.count_nilpotent_commutant([2, 1], "x", 3), 27))
    results.append(check("nilcount formula", nilorb.nilcount_formula([2, 1], 1, 3), 27))
    results.append(check("partitions of 4", len(nilorb.enumerate_partitions(4)), 5))

    try:
        nilorb.burnside_m(2, 4, 2)
        results.append(check("size guard raises", False, True))
    except ValueError:
        results.append(check("size guard raises", True, True))

    try:
        nilorb.Pipeline(0)
        results.append(check("g = 0 raises", False, True))
    except ValueError:
        results.append(check("g = 0 raises", True, True))

    failed = results.count(False)
    print(f"{len(results) - failed}/{len(results)} checks passed (nilorb {nilorb.__version__})")
    raise SystemExit(1 if failed else 0)


if __name__ == "__main__":
    main()
