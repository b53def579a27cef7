"""
Continued fractions of rationals

Expansions are computed with the Euclidean algorithm and kept in canonical
form: the last partial quotient is at least 2 (the dual form [..., a, 1] is
normalized to [..., a + 1]). Cylinders are enclosed by the rational
interval with endpoints [0; w, 1] and [0; w, n + 1].
"""

from collections import namedtuple
from dataclasses import InitVar, dataclass
from fractions import Fraction

from schmidtools.arith.interval import Interval
from schmidtools.arith.rational import as_rational, is_power_of


CylinderSet = namedtuple("CylinderSet", ["lo", "hi", "lo_closed", "hi_closed"])


@dataclass(frozen=True)
class CFWord:
    """
    Finite continued fraction [a0; a1, ..., ar].

    The word is normalized on construction so that equal values have equal
    words.
    """

    a0: int
    quotients: tuple = ()
    normalize: InitVar[bool] = True

    def __post_init__(self, normalize):
        quotients = tuple(int(a) for a in self.quotients)

        if any(a < 1 for a in quotients):
            raise ValueError("Partial quotients `{}` must be positive."
                             .format(quotients))

        a0 = int(self.a0)
        if normalize and quotients and quotients[-1] == 1:
            if len(quotients) == 1:
                a0, quotients = a0 + 1, ()
            else:
                quotients = quotients[:-2] + (quotients[-2] + 1,)

        object.__setattr__(self, "a0", a0)
        object.__setattr__(self, "quotients", quotients)

    def __len__(self):
        return len(self.quotients)

    def __str__(self):
        if not self.quotients:
            return "[{}]".format(self.a0)
        return "[{};{}]".format(self.a0, ",".join(str(a) for a in self.quotients))

    def __repr__(self):
        return "<CFWord: {}>".format(self)

    @property
    def value(self):
        return cf_value(self)

    def max_quotient(self):
        return max(self.quotients) if self.quotients else 0

    def to_json(self):
        return [self.a0] + list(self.quotients)

    @classmethod
    def from_json(cls, data):
        return cls(data[0], tuple(data[1:]), normalize=False)


@dataclass(frozen=True)
class GoodRational:
    value: Fraction
    cf: CFWord
    power_of_3_exponent: int


def cf_expand(x):
    """
    Canonical continued fraction of a rational.

    :param x: rational number.
    :rtype: CFWord
    """

    x = as_rational(x)
    num, den = x.numerator, x.denominator

    a0, num = divmod(num, den)
    quotients = []

    while num:
        den, (a, num) = num, divmod(den, num)
        quotients.append(a)

    return CFWord(a0, tuple(quotients))


def convergents(word):
    """
    Convergents (p_k, q_k) of [a0; a1, ..., ar] for k = 0..r.

    Accepts a `CFWord` or a sequence [a0, a1, ..., ar] (not necessarily
    canonical).
    """

    if isinstance(word, CFWord):
        terms = [word.a0] + list(word.quotients)
    else:
        terms = list(word)

    p_prev, q_prev = 1, 0
    p, q = terms[0], 1
    result = [(p, q)]

    for a in terms[1:]:
        p, p_prev = a * p + p_prev, p
        q, q_prev = a * q + q_prev, q
        result.append((p, q))

    return result


def cf_value(word):
    p, q = convergents(word)[-1]
    return Fraction(p, q)


def cylinder_interval(omega, n):
    """
    Rational enclosure of the cylinder of the word omega for the alphabet
    {1, ..., n}.

    Args:
        omega: non-empty sequence of partial quotients a1, ..., ar.
        n: largest allowed partial quotient.

    Returns:
        `Interval` with endpoints [0; omega, 1] and [0; omega, n + 1].
    """

    omega = tuple(omega)

    if not omega:
        raise ValueError("Cylinder word must be non-empty.")
    if any(a < 1 or a > n for a in omega):
        raise ValueError("Cylinder word `{}` must use letters in 1..{}."
                         .format(omega, n))

    a = cf_value((0,) + omega + (1,))
    b = cf_value((0,) + omega + (n + 1,))

    return Interval(min(a, b), max(a, b))


def exact_cylinder(word):
    """
    Set of the numbers whose canonical expansion begins with the quotients
    of `word`.

    The set is the interval between [a0; a1, ..., ar] (included when ar >= 2)
    and [a0; a1, ..., ar + 1] (excluded).

    :rtype: CylinderSet
    """

    terms = [word.a0] + list(word.quotients) if isinstance(word, CFWord) else list(word)

    if len(terms) == 1:
        return CylinderSet(Fraction(terms[0]), Fraction(terms[0] + 1), True, False)

    near = cf_value(terms)
    far = cf_value(terms[:-1] + [terms[-1] + 1])
    near_closed = terms[-1] >= 2

    if near < far:
        return CylinderSet(near, far, near_closed, False)

    return CylinderSet(far, near, False, near_closed)


def cf_prefix_of_interval(I):
    """
    Longest word w such that the expansion of every x in I begins with w.

    Cylinders are intervals, so the expansions of all points of I share a
    prefix exactly when those of the two endpoints do.

    :param I: interval inside (0, 1).
    :rtype: CFWord
    """

    if I.lo <= 0 or I.hi >= 1:
        raise ValueError("Interval `{}` must lie inside (0, 1).".format(I))

    lo = cf_expand(I.lo).quotients
    hi = cf_expand(I.hi).quotients

    common = []
    for a, b in zip(lo, hi):
        if a != b:
            break
        common.append(a)

    return _prefix_word(common)


def _prefix_word(quotients):
    # a prefix ending with 1 is a word, not a value: no normalization
    return CFWord(0, tuple(quotients), normalize=False)


def folding_step(x):
    """
    Folding map p/q -> p/q - 1/(3 q**2).
    """

    x = as_rational(x)

    return x - Fraction(1, 3 * x.denominator**2)


GoodCheck = namedtuple("GoodCheck", ["good", "rational", "reason"])


def is_good(x):
    """
    Check whether x is a good rational.

    The conditions are: the denominator is a power of 3, the expansion is
    [0; 1, 1, a3, ..., ah] with h >= 4 quotients in total, h is odd, ah >= 2
    and ai <= 3 for all i >= 3.

    :rtype: GoodCheck
    """

    x = as_rational(x)

    if not 0 < x < 1:
        return GoodCheck(False, None, "outside (0, 1)")

    m = is_power_of(x.denominator, 3)
    if m is None:
        return GoodCheck(False, None, "denominator is not a power of 3")

    word = cf_expand(x)
    a = word.quotients
    h = len(a)

    if h < 4:
        return GoodCheck(False, None, "fewer than 4 partial quotients")
    if a[0] != 1 or a[1] != 1:
        return GoodCheck(False, None, "expansion does not begin [0;1,1,...]")
    if h % 2 == 0:
        return GoodCheck(False, None, "even number of partial quotients")
    if a[-1] < 2:
        return GoodCheck(False, None, "last partial quotient below 2")
    if any(ai > 3 for ai in a[2:]):
        return GoodCheck(False, None, "partial quotient above 3")

    return GoodCheck(True, GoodRational(x, word, m), "good")


def quotient_bound_holds(word, n):
    """
    Whether all partial quotients a1, a2, ... of the word are at most n.
    """

    return all(a <= n for a in word.quotients)

