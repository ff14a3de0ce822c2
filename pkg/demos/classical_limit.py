"""The q -> 1 limit: shifted spectral values become lambda_i - i + N.

Prints the q-exact shifted spectral characters, their classical limits, the
limiting multiplicities and the traces of powers of the gl(N) generating matrix.
"""

from qmatspec import classical_limit

for N, lam in [(2, ()), (2, (1,)), (3, (2, 1)), (3, (3,))]:
    res = classical_limit(lam, N, 3)
    print(f"N={N} lambda={res['lambda']}")
    print("  mu_hat       :", res["mu_hat"])
    print("  limits       :", res["mu_hat_limits"])
    print("  multiplicity :", [str(d) for d in res["d_hat"]])
    print("  Tr L^n, n=1..3:", [str(v) for v in res["pp_power_sums"]])
