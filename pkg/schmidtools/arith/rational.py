"""
Exact scalars

Every scalar of the package is a `fractions.Fraction`. This module converts
inputs to fractions without ever going through binary floats, serializes
them as "p/q" strings, and offers the integer-root helpers used when a
strategy needs the integer part of an irrational quantity.
"""

import math

from collections import namedtuple
from fractions import Fraction


TernaryExpansion = namedtuple("TernaryExpansion",
                              ["digits", "exact", "integer_part"])


def parse_rational(text):
    """
    Parse a string into an exact fraction.

    Accepted forms are "p/q", integers, decimals and scientific notation:
    "1e-8" is 1/10**8 exactly.

    :param text: string to parse.
    :type text: str
    :return: parsed value.
    :rtype: Fraction
    """

    if not isinstance(text, str):
        raise TypeError("Cannot parse rational from `{}`.".format(type(text)))

    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ValueError("Cannot parse `{}` as an exact rational.".format(text))


def as_rational(x):
    """
    Convert `x` to a fraction.

    Integers and fractions are taken as is, strings are parsed with
    `parse_rational`. Floats are refused: their binary value is almost never
    the number the caller had in mind.
    """

    if isinstance(x, Fraction):
        return x
    elif isinstance(x, bool):
        raise TypeError("Cannot use boolean `{}` as a rational.".format(x))
    elif isinstance(x, int):
        return Fraction(x)
    elif isinstance(x, str):
        return parse_rational(x)
    else:
        raise TypeError("Cannot convert `{}` to an exact rational."
                        .format(type(x)))


def rational_to_json(x):
    x = as_rational(x)
    return "{}/{}".format(x.numerator, x.denominator)


def rational_from_json(s):
    if isinstance(s, int) and not isinstance(s, bool):
        return Fraction(s)
    return parse_rational(s)


def iroot(n, k):
    """
    Largest integer r >= 0 with r**k <= n.
    """

    if n < 0:
        raise ValueError("Cannot take integer root of negative `{}`.".format(n))
    if k == 1 or n < 2:
        return n
    if k == 2:
        return math.isqrt(n)

    # initial guess above the root, then Newton iterations downward
    r = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        s = ((k - 1) * r + n // r**(k - 1)) // k
        if s >= r:
            break
        r = s

    while r**k > n:
        r -= 1
    while (r + 1)**k <= n:
        r += 1

    return r


def exact_root(x, k):
    """
    The rational r >= 0 with r**k = x, or None when x >= 0 is not a k-th
    power of a rational.
    """

    x = as_rational(x)
    a = iroot(x.numerator, k)
    b = iroot(x.denominator, k)

    if a**k == x.numerator and b**k == x.denominator:
        return Fraction(a, b)
    return None


def floor_root(x, k=2):
    """
    Largest integer r >= 0 with r**k <= x for a rational x >= 0.
    """

    x = as_rational(x)
    return iroot(math.floor(x), k)


def ceil_root(x, k=2):
    """
    Smallest integer r >= 0 with r**k >= x for a rational x >= 0.
    """

    x = as_rational(x)
    c = math.ceil(x)
    if c <= 0:
        return 0
    r = iroot(c, k)

    return r if r**k == c else r + 1


def max_int_power_below(x, k):
    """
    Largest integer q >= 0 with q**k < x (strict), or -1 if x <= 0.
    """

    x = as_rational(x)
    if x <= 0:
        return -1

    return iroot(math.ceil(x) - 1, k)


def is_power_of(n, base):
    """
    Return the exponent m with base**m == n, or None.
    """

    if n < 1:
        return None

    m = 0
    while n % base == 0:
        n //= base
        m += 1

    return m if n == 1 else None


def ternary_digits(x, n):
    """
    First `n` base-3 digits of x in [0, 1].

    When x has two expansions, the terminating one is returned (trailing
    zeros). The value 1 is returned with integer part 1 and zero digits
    instead of the expansion 0.222... .

    :param x: rational in [0, 1].
    :param n: number of digits.
    :return: digits, exactness flag (x * 3**n is an integer) and integer part.
    :rtype: TernaryExpansion
    """

    x = as_rational(x)

    if x < 0 or x > 1:
        raise ValueError("Ternary digits need `x` in [0, 1], got `{}`.".format(x))

    exact = (x * 3**n).denominator == 1

    if x == 1:
        return TernaryExpansion([0] * n, exact, 1)

    digits = []
    num, den = x.numerator, x.denominator

    for _ in range(n):
        d, num = divmod(3 * num, den)
        digits.append(d)

    return TernaryExpansion(digits, exact, 0)


def ternary_value(digits, integer_part=0):
    return integer_part + sum(Fraction(d, 3**(i + 1)) for i, d in enumerate(digits))
