"""
Certified enclosures

An `Enclosure` is a closed interval [lo, hi] of rationals known to contain
some real number (a logarithm, an irrational power, a ratio of logarithms).
The arithmetic is exact; only the transcendental functions round, and they
always round outward. No binary float is ever involved.

Logarithms are computed by integer-exponent bracketing: x = 2**k * m with
1 <= m < 2, so that log(x) = k log(2) + 2 atanh((m - 1)/(m + 1)) and the
atanh series converges geometrically with ratio at most 1/9.
"""

import math
import logging
import functools

from fractions import Fraction

import sympy

from schmidtools.arith.rational import as_rational, exact_root, rational_to_json
from schmidtools.defaults import DEFAULTS


logger = logging.getLogger(__name__)


def _exponent(x):
    """
    Integer e with 2**e <= |x| < 2**(e+1) for x != 0.
    """

    x = abs(x)
    e = x.numerator.bit_length() - x.denominator.bit_length()
    if Fraction(2)**e > x:
        e -= 1
    elif Fraction(2)**(e + 1) <= x:
        e += 1

    return e


def round_down(x, bits):
    """
    Largest number with `bits` significant bits below or equal to x.
    """

    x = Fraction(x)
    if x == 0:
        return x

    scale = Fraction(2)**(bits - _exponent(x))

    return Fraction(math.floor(x * scale)) / scale


def round_up(x, bits):
    return -round_down(-Fraction(x), bits)


class Enclosure:
    """
    Closed rational interval containing a real quantity.

    Arithmetic between enclosures (and with rationals) is exact interval
    arithmetic. Comparisons are three-valued through `certainly_le` and
    `possibly_le`.
    """

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        lo = as_rational(lo)
        hi = lo if hi is None else as_rational(hi)

        if lo > hi:
            raise ValueError("Enclosure bounds `{}` > `{}`.".format(lo, hi))

        self.lo = lo
        self.hi = hi

    @staticmethod
    def wrap(x):
        if isinstance(x, Enclosure):
            return x
        return Enclosure(x)

    @property
    def exact(self):
        return self.lo == self.hi

    @property
    def width(self):
        return self.hi - self.lo

    @property
    def midpoint(self):
        return (self.lo + self.hi) / 2

    def __repr__(self):
        return "<Enclosure: [{}, {}]>".format(self.to_decimal()[0],
                                              self.to_decimal()[1])

    def __eq__(self, other):
        if not isinstance(other, Enclosure):
            return NotImplemented
        return self.lo == other.lo and self.hi == other.hi

    def __hash__(self):
        return hash((self.lo, self.hi))

    def __contains__(self, x):
        return self.lo <= x <= self.hi

    def __neg__(self):
        return Enclosure(-self.hi, -self.lo)

    def __add__(self, other):
        other = Enclosure.wrap(other)
        return Enclosure(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-Enclosure.wrap(other))

    def __rsub__(self, other):
        return Enclosure.wrap(other) - self

    def __mul__(self, other):
        other = Enclosure.wrap(other)
        products = [self.lo * other.lo, self.lo * other.hi,
                    self.hi * other.lo, self.hi * other.hi]
        return Enclosure(min(products), max(products))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = Enclosure.wrap(other)
        if other.lo <= 0 <= other.hi:
            raise ZeroDivisionError("Cannot divide by enclosure `{}` containing 0."
                                    .format(other))
        return self * Enclosure(1 / other.hi, 1 / other.lo)

    def __rtruediv__(self, other):
        return Enclosure.wrap(other) / self

    def certainly_le(self, other):
        return self.hi <= Enclosure.wrap(other).lo

    def certainly_lt(self, other):
        return self.hi < Enclosure.wrap(other).lo

    def possibly_le(self, other):
        return self.lo <= Enclosure.wrap(other).hi

    def hull(self, other):
        other = Enclosure.wrap(other)
        return Enclosure(min(self.lo, other.lo), max(self.hi, other.hi))

    def round(self, bits):
        return Enclosure(round_down(self.lo, bits), round_up(self.hi, bits))

    def floor(self):
        """
        Integer floor when it is certified (same for both bounds), else None.
        """

        lo, hi = math.floor(self.lo), math.floor(self.hi)
        return lo if lo == hi else None

    def to_decimal(self, digits=None):
        digits = digits or DEFAULTS["print:digits"]
        return (decimal_string(self.lo, digits, up=False),
                decimal_string(self.hi, digits, up=True))

    def to_json(self, digits=None):
        lo, hi = self.to_decimal(digits)
        return {"lo": rational_to_json(self.lo), "hi": rational_to_json(self.hi),
                "decimal": [lo, hi]}

    @classmethod
    def from_json(cls, data):
        return cls(Fraction(data["lo"]), Fraction(data["hi"]))


def decimal_string(x, digits, up=False):
    """
    Decimal rendering of x with `digits` fractional digits, rounded down or
    up.
    """

    scaled = x * 10**digits
    n = math.ceil(scaled) if up else math.floor(scaled)
    sign = "-" if n < 0 else ""
    whole, frac = divmod(abs(n), 10**digits)

    if digits == 0:
        return "{}{}".format(sign, whole)

    return "{}{}.{:0{}d}".format(sign, whole, frac, digits)


def _atanh_bounds(z, bits):
    # z in [0, 1/3): positive series, tail bounded by a geometric sum
    if z == 0:
        return Fraction(0), Fraction(0)

    z2 = z * z
    power = z
    total = Fraction(0)
    i = 0
    threshold = Fraction(1, 2**(bits + 4))

    while True:
        total += power / (2 * i + 1)
        power *= z2
        i += 1
        tail = power / ((2 * i + 1) * (1 - z2))
        if tail < threshold:
            break

    return total, total + tail


@functools.lru_cache(maxsize=16)
def log2_enclosure(bits=None):
    bits = bits or DEFAULTS["log:bits"]
    lo, hi = _atanh_bounds(Fraction(1, 3), bits + 8)

    return Enclosure(round_down(2 * lo, bits + 4), round_up(2 * hi, bits + 4))


def _log_point(x, bits):
    if x <= 0:
        raise ValueError("Logarithm needs a positive argument, got `{}`.".format(x))
    if x == 1:
        return Enclosure(0)

    # x = 2**k * m with 1 <= m < 2
    k = _exponent(x)
    m = x / Fraction(2)**k

    work = bits + 12
    m_lo = round_down(m, work)
    m_hi = round_up(m, work)

    lo, _ = _atanh_bounds((m_lo - 1) / (m_lo + 1), work)
    _, hi = _atanh_bounds((m_hi - 1) / (m_hi + 1), work)

    result = k * log2_enclosure(work) + Enclosure(2 * lo, 2 * hi)

    return result.round(bits + 4)


def log_enclosure(x, bits=None):
    """
    Certified enclosure of the natural logarithm.

    :param x: positive rational or enclosure with positive lower bound.
    :param bits: significant bits kept by the outward rounding.
    :rtype: Enclosure
    """

    bits = bits or DEFAULTS["log:bits"]

    if isinstance(x, Enclosure):
        return Enclosure(_log_point(x.lo, bits).lo, _log_point(x.hi, bits).hi)

    return _log_point(as_rational(x), bits)


def _exp_point(y, bits):
    if y == 0:
        return Enclosure(1)

    # halve the argument until |u| <= 1/4, then square back
    s = 0
    while abs(y) / 2**s > Fraction(1, 4):
        s += 1
    u = y / 2**s

    work = bits + s + 12
    threshold = Fraction(1, 2**work)

    total = Fraction(0)
    term = Fraction(1)
    i = 0
    while True:
        total += term
        i += 1
        term = term * u / i
        # remainder of the tail for |u| <= 1/4
        if abs(term) * Fraction(4, 3) < threshold:
            break

    remainder = abs(term) * Fraction(4, 3)
    lo = round_down(total - remainder, work)
    hi = round_up(total + remainder, work)

    for _ in range(s):
        lo = round_down(lo * lo, work)
        hi = round_up(hi * hi, work)

    return Enclosure(round_down(lo, bits + 4), round_up(hi, bits + 4))


def exp_enclosure(y, bits=None):
    """
    Certified enclosure of exp(y) for a rational or an enclosure y.
    """

    bits = bits or DEFAULTS["log:bits"]

    if isinstance(y, Enclosure):
        return Enclosure(_exp_point(y.lo, bits).lo, _exp_point(y.hi, bits).hi)

    return _exp_point(as_rational(y), bits)


def power_enclosure(x, c, bits=None):
    """
    Certified enclosure of x**c for x >= 0.

    Integer exponents are exact. Otherwise x**c = exp(c log x), the exponent
    `c` being a rational or an enclosure.
    """

    x = as_rational(x)

    if isinstance(c, Enclosure) and c.exact:
        c = c.lo

    if not isinstance(c, Enclosure):
        c = as_rational(c)
        if c.denominator == 1 and (c >= 0 or x != 0):
            return Enclosure(x**int(c))

    if x < 0:
        raise ValueError("Power needs a non-negative base, got `{}`.".format(x))
    if x == 0:
        lo = c.lo if isinstance(c, Enclosure) else c
        if lo > 0:
            return Enclosure(0)
        raise ValueError("Power 0**c needs c > 0.")
    if x == 1:
        return Enclosure(1)

    return exp_enclosure(Enclosure.wrap(c) * log_enclosure(x, bits + 8 if bits else None),
                         bits)


def _prime_exponents(x):
    exps = dict(sympy.factorint(x.numerator))
    for p, e in sympy.factorint(x.denominator).items():
        exps[p] = exps.get(p, 0) - e

    return exps


def exact_log_ratio(x, y):
    """
    Return log(x)/log(y) as a fraction when it is rational, else None.

    The ratio is rational exactly when the prime exponent vectors of x and y
    are proportional.
    """

    x = as_rational(x)
    y = as_rational(y)

    if x == 1:
        return Fraction(0)
    if y == 1:
        return None

    # factoring huge numbers is pointless here
    if max(x.numerator, x.denominator, y.numerator, y.denominator) > 2**64:
        return None

    ex = _prime_exponents(x)
    ey = _prime_exponents(y)

    if set(ex) != set(ey):
        return None

    ratio = None
    for p, e in ey.items():
        r = Fraction(ex[p], e)
        if ratio is None:
            ratio = r
        elif ratio != r:
            return None

    return ratio


def log_ratio(x, y, bits=None):
    """
    Certified enclosure of log(x)/log(y), exact when the ratio is rational.
    """

    exact = exact_log_ratio(x, y)
    if exact is not None:
        return Enclosure(exact)

    return log_enclosure(x, bits) / log_enclosure(y, bits)


def power_sum_leq(terms, bound, c):
    """
    Decide sum(t**c for t in terms) <= bound**c.

    For c = 0 every term counts for one and the bound for one. Integer
    exponents are compared exactly, as are sums of equal terms: with
    c = p/q, n t**c <= b**c is equivalent to n**q t**p <= b**p. Terms which
    are all q-th powers of rationals are compared exactly too. Otherwise the
    powers are enclosed with increasing precision; a comparison that stays
    undecided is answered False.

    :param terms: non-negative rationals.
    :param bound: non-negative rational.
    :param c: non-negative rational exponent.
    :rtype: bool
    """

    terms = [as_rational(t) for t in terms]
    bound = as_rational(bound)
    c = as_rational(c)

    if c < 0:
        raise ValueError("Exponent `{}` must be non-negative.".format(c))

    if not terms:
        return True

    if c == 0:
        return len(terms) <= 1

    terms = [t for t in terms if t != 0]
    if not terms:
        return True

    if c.denominator == 1:
        e = int(c)
        return sum(t**e for t in terms) <= bound**e

    p, q = c.numerator, c.denominator

    if len(set(terms)) == 1:
        n = len(terms)
        return n**q * terms[0]**p <= bound**p

    # q-th roots of rational powers: sum r**p <= bound**(p/q) iff (sum r**p)**q <= bound**p
    roots = [exact_root(t, q) for t in terms]
    if None not in roots:
        return sum(r**p for r in roots)**q <= bound**p

    for bits in DEFAULTS["budget:refine_bits"]:
        total = sum((power_enclosure(t, c, bits) for t in terms), Enclosure(0))
        rhs = power_enclosure(bound, c, bits)
        if total.certainly_le(rhs):
            return True
        if rhs.certainly_lt(total):
            return False

    logger.warning("Undecided power budget comparison (c = %s); answered False.", c)

    return False
