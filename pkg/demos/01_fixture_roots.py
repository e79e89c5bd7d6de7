"""
Roots of the small fixtures
===========================

Expands the roots of four polynomials and prints them next to the
weight vector that orders their terms.
"""

from omega_puiseux.parsing import parse_poly, parse_quadreal, parse_weight, to_ypoly
from omega_puiseux.solver import expand_roots


def show(title, poly, omega, trunc):
    w = parse_weight(omega)
    f = to_ypoly(parse_poly(poly, w.n), w)
    print(f"{title}: f = {poly}, omega = ({omega})")
    for i, r in enumerate(expand_roots(f, parse_quadreal(trunc)), 1):
        tail = "" if r.exact else " + ..."
        print(f"  xi{i} = {r.series}{tail}")
    print()


# both roots terminate, so they come back flagged exact
show("essd", "y^2 - 2*(x2+1)*y + (x2+1)^2 - x1", "1,0+1*sqrt(2)", "3")

show("quartic", "y^4 - 2*(x1+x2)*y^2 + (x1-x2)^2", "1,0+1*sqrt(2)", "3")

# same polynomial, two weights: which of x1 and x2^2 dominates decides
# whether the roots start with a square root
show("sqrt-sum, (4, sqrt2)", "y^2 - (x1 + x2^2)", "4,0+1*sqrt(2)", "20-9*sqrt(2)")
show("sqrt-sum, (1, sqrt2)", "y^2 - (x1 + x2^2)", "1,0+1*sqrt(2)", "-9/2+10*sqrt(2)")
