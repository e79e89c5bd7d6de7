"""Polynomials and weight vectors shared by the test modules."""

from omega_puiseux.parsing import parse_poly, parse_quadreal, parse_weight, to_ypoly

ESSD = "y^2 - 2*(x2+1)*y + (x2+1)^2 - x1"
QUARTIC = "y^4 - 2*(x1+x2)*y^2 + (x1-x2)^2"
SQRT_SUM = "y^2 - (x1 + x2^2)"
QUINTIC = "y^5 + x1^2*x2^2*y^2 + x2^5"
CUSP = "y^2 - x1^3"

W_1_S2 = "1,0+1*sqrt(2)"
W_S2_1 = "0+1*sqrt(2),1"
W_4_S2 = "4,0+1*sqrt(2)"
W_1_S5 = "1,0+1*sqrt(5)"


def load(poly: str, omega: str):
    w = parse_weight(omega)
    return w, to_ypoly(parse_poly(poly, w.n), w)


def q(text: str):
    return parse_quadreal(text)
