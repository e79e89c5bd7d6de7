"""
The quintic and its Galois branches
===================================

y^5 + x1^2 x2^2 y^2 + x2^5 has five roots under omega = (1, sqrt 5).
Three start at exponent (2/3, 2/3) and two at (-1, 3/2); the Galois maps
x_i^(1/6) -> eta^mu_i x_i^(1/6) permute each group, giving two branches.
"""

from omega_puiseux.parsing import parse_poly, parse_quadreal, parse_weight, to_ypoly
from omega_puiseux.semigroup import orbit, partition_branches
from omega_puiseux.series import format_exp, valuation
from omega_puiseux.solver import expand_roots

w = parse_weight("1,sqrt(5)")
f = to_ypoly(parse_poly("y^5 + x1^2*x2^2*y^2 + x2^5"), w)
trunc = parse_quadreal("-16+9*sqrt(5)")
roots = expand_roots(f, trunc)

for i, r in enumerate(roots, 1):
    print(f"xi{i}: nu = {format_exp(valuation(r.series))}")
    print(f"     {r.series} + ...")

# the orbit of xi1 under all 36 maps with k = 6
images = orbit(roots[0].series, 6, trunc)
print(f"\norbit of xi1 has {len(images)} distinct elements")

for b in partition_branches(roots):
    print("branch:", ", ".join(f"xi{m + 1}" for m in b.members))
