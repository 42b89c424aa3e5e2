"""Exact rational scalars.

Everything in this package computes over Q; there is no floating point
anywhere.  The default backend is gmpy2.mpq when importable (noticeably
faster on the row-reduction workloads), otherwise fractions.Fraction.
Set CURFUSION_RATIONAL=fraction or =gmpy2 to force a backend; the two are
interchangeable (equal values compare and hash identically).
"""

import os
from fractions import Fraction

_choice = os.environ.get("CURFUSION_RATIONAL", "").strip().lower()

if _choice == "fraction":
    QQ = Fraction
    BACKEND = "fraction"
elif _choice in ("", "gmpy2"):
    try:
        from gmpy2 import mpq as QQ

        BACKEND = "gmpy2"
    except ImportError:
        if _choice == "gmpy2":
            raise
        QQ = Fraction
        BACKEND = "fraction"
else:
    raise ValueError("CURFUSION_RATIONAL must be 'fraction' or 'gmpy2', got %r" % _choice)

ZERO = QQ(0)
ONE = QQ(1)


def rat(p, q=1):
    return QQ(p, q)


def rat_str(x):
    """Canonical 'p' or 'p/q' rendering, lowest terms."""
    return str(QQ(x))


def rat_parse(s):
    """Inverse of rat_str; accepts 'p' and 'p/q'."""
    s = s.strip()
    if "/" in s:
        p, q = s.split("/")
        return QQ(int(p), int(q))
    return QQ(int(s))


def is_integer(x):
    return QQ(x).denominator == 1
