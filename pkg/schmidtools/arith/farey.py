"""
Farey sequences

Enumeration of the rationals of bounded denominator lying in an interval.
The walk starts from the Farey neighbours of the left endpoint, found by a
Stern-Brocot descent whose steps are batched (a single step may move the
pointer by an arbitrary number of mediants), so that denominators of size
1e12 are reached in a few dozen iterations.
"""

import math

from fractions import Fraction

from schmidtools.arith.rational import as_rational


def farey_neighbors(x, order):
    """
    Position of x in the Farey sequence of the given order.

    Args:
        x: rational number.
        order: maximal denominator N >= 1.

    Returns:
        (member, left, right): whether x belongs to the sequence, and the
        largest element < x and smallest element > x.
    """

    x = as_rational(x)

    if order < 1:
        raise ValueError("Farey order `{}` must be positive.".format(order))

    if x.denominator == 1:
        return (True, x - Fraction(1, order), x + Fraction(1, order))

    p, q = x.numerator, x.denominator
    n0 = math.floor(x)

    # a/b < x < c/d, adjacent: c b - a d = 1
    a, b = n0, 1
    c, d = n0 + 1, 1

    while b + d <= order:
        ma, mb = a + c, b + d
        cmp = ma * q - p * mb

        if cmp == 0:
            j = (order - b) // mb
            left = Fraction(a + j * ma, b + j * mb)
            j = (order - d) // mb
            right = Fraction(c + j * ma, d + j * mb)
            return (True, left, right)
        elif cmp < 0:
            num = p * b - a * q
            den = c * q - p * d
            k = min((num - 1) // den, (order - b) // d)
            a, b = a + k * c, b + k * d
        else:
            num = c * q - p * d
            den = p * b - a * q
            k = min((num - 1) // den, (order - d) // b)
            c, d = c + k * a, d + k * b

    return (False, Fraction(a, b), Fraction(c, d))


def farey_between(lo, hi, order):
    """
    All rationals p/q in [lo, hi] with 1 <= q <= order, increasing.

    :param lo: left end of the interval.
    :param hi: right end of the interval.
    :param order: maximal denominator.
    :rtype: list of Fraction
    """

    lo = as_rational(lo)
    hi = as_rational(hi)

    if lo > hi:
        return []

    member, left, right = farey_neighbors(lo, order)

    if member:
        prev, current = left, lo
    else:
        prev, current = left, right

    result = []

    while current <= hi:
        result.append(current)

        a, b = prev.numerator, prev.denominator
        c, d = current.numerator, current.denominator
        k = (order + b) // d
        prev, current = current, Fraction(k * c - a, k * d - b)

    return result
