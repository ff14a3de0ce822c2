"""Characters of power sums on V^lambda, from matrices and from spectral values.

Builds the GL(2) Drinfeld-Jimbo symmetry with symbolic q, forms the power
matrices P_k^n and T_k^n on V^{(x)k}, projects them onto each Young
idempotent and compares with the closed spectral formulas.
"""

from qmatspec import (
    drinfeld_jimbo,
    extract_character,
    power_matrices,
    render_scalar,
    spectral_power_sums,
    spectrum,
    young_idempotents,
)
from qmatspec.heckerep import partitions

H = drinfeld_jimbo(2)
q, m = H.q, H.m
print(f"N = {H.N}, bi-rank m = {m}, q = {render_scalar(q)}")

for k in range(3):
    for lam in partitions(k, m):
        Y = young_idempotents(H, k, lam)[0]
        mu_V = spectrum(lam, m, "V", q).mu
        mu_D = spectrum(lam, m, "V*", q).mu
        print(f"\nlambda = {lam or '()'}  tableau {Y.tableau or '-'}")
        print("  module spectrum:", [render_scalar(x) for x in mu_V])
        print("  dual spectrum:  ", [render_scalar(x) for x in mu_D])
        for n in (1, 2):
            PM = power_matrices(H, k, n)
            t_mat = extract_character(PM.T, Y)
            p_mat = extract_character(PM.P, Y)
            t_spec = spectral_power_sums(mu_V, n, "t", q)
            p_spec = spectral_power_sums(mu_D, n, "p", q)
            print(f"  n={n}: chi(t_n) = {render_scalar(t_mat)}  [{'ok' if t_mat == t_spec else 'MISMATCH'}]")
            print(f"       chi*(p_n) = {render_scalar(p_mat)}  [{'ok' if p_mat == p_spec else 'MISMATCH'}]")
