"""The Cayley-Hamilton identity of the represented generating matrix.

For each Young idempotent on V^{(x)2} and V^{*(x)2} the product
prod_i (L - mu_i) restricted to the isotypic component is the zero operator,
while the spectrum of a different shape leaves a nonzero residual.
"""

from qmatspec import cayley_hamilton_residual, drinfeld_jimbo, represented_generators, spectrum, young_idempotents
from qmatspec.tensor import embed

H = drinfeld_jimbo(2)
k = 2
for side in ("V", "V*"):
    gens = represented_generators(H, k, side)
    print(f"side {side}: reflection equation residual is zero: {gens.re_residual(H.R).is_zero()}")
    for Y in young_idempotents(H, k):
        res = cayley_hamilton_residual(H, k, Y.shape, Y.tableau, side)
        print(f"  {str(Y.tableau):>6}: CH residual zero = {res.is_zero()}")

# a wrong spectrum does not annihilate the component
L = represented_generators(H, k, "V*").assembled()
E = young_idempotents(H, k, (1, 1))[0].E
out = embed(E, 2, k + 1)
for mu in spectrum((2,), 2, "V*", H.q).mu:
    out = L.plus_scalar(-mu) @ out
print(f"spectrum of (2) on the (1,1) component gives zero: {out.is_zero()}")
