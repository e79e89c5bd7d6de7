"""
Value-semigroup windows
=======================

For a root xi of f, the values nu(h(xi)) over h in A[y] form a semigroup.
Only the part below a weight bound can be computed from a truncated root;
that part is what these windows show.
"""

from omega_puiseux.parsing import parse_poly, parse_quadreal, parse_weight, to_ypoly
from omega_puiseux.scalars import rat_str
from omega_puiseux.semigroup import SubringSpec, check_invariance, partition_branches, semigroup_window
from omega_puiseux.series import format_exp
from omega_puiseux.solver import expand_roots

# the cusp y^2 = x^3: values double to the numerical semigroup <2, 3>
w = parse_weight("1")
f = to_ypoly(parse_poly("y^2 - x1^3"), w)
xi = expand_roots(f, 4)[0].series
win = semigroup_window(xi, f, bound=4)
vals = [v[0] for v in win.values]
print("cusp values:", ", ".join(rat_str(v) for v in vals))
print("doubled:    ", ", ".join(rat_str(2 * v) for v in vals))
print("generators: ", ", ".join(format_exp(g) for g in win.generators))

# every root of a branch has the same window
w = parse_weight("1,sqrt(5)")
f = to_ypoly(parse_poly("y^5 + x1^2*x2^2*y^2 + x2^5"), w)
roots = expand_roots(f, parse_quadreal("-16+9*sqrt(5)"))
for b in partition_branches(roots):
    rep = check_invariance(f, roots, b, bound=4)
    names = ", ".join(f"xi{m + 1}" for m in b.members)
    print(f"\nbranch {{{names}}}: invariant = {rep.invariant}")
    print("  ", " ".join(format_exp(v) for v in rep.windows[0].values))

# a larger coefficient ring: allow x1^-1 x2^2 as well
w = parse_weight("1,0+1*sqrt(2)")
f = to_ypoly(parse_poly("y^2 - 2*(x2+1)*y + (x2+1)^2 - x1"), w)
roots = expand_roots(f, 3)
ring = SubringSpec("cone", ((1, 0), (-1, 2), (0, 1)))
for name, A in [("formal", None), ("cone", ring)]:
    win = semigroup_window(roots[0].series, f, A, bound=2)
    print(f"\nessd, {name} ring:", " ".join(format_exp(v) for v in win.values))
