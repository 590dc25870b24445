"""Expected Euler characteristic of Erdos-Renyi graphs.

The expectation is the alternating sum over k-cliques weighted by the
probability ``p**C(k,2)`` that a given k-subset is complete. The sum
cancels catastrophically in floating point, so it is evaluated exactly and
only rendered as a decimal at the end.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from math import comb

from . import _rng
from .errors import CapacityError, InputError
from .graph import as_probability, erdos_renyi
from .morse import mean_and_stderr
from .topology import euler_characteristic_ph

DECIMAL_DIGITS = 50


@dataclass(frozen=True)
class ErExpectation:
    n: int
    p: Fraction
    value: Fraction
    decimal: Decimal
    terms: tuple[Fraction, ...] | None = None

    def __float__(self):
        return float(self.decimal)


def to_decimal(q: Fraction, digits: int = DECIMAL_DIGITS) -> Decimal:
    """``q`` rounded to ``digits`` significant digits.

    Scales to a short integer quotient first; building a Decimal from a
    many-thousand-digit integer directly is quadratic.
    """
    num, den = q.numerator, q.denominator
    if num == 0:
        return Decimal(0)
    # 10**shift * |num| / den keeps about ten guard digits past the target
    shift = digits + 10 - int((abs(num).bit_length() - den.bit_length()) * 0.30102999566398120) + 1
    if shift >= 0:
        scaled = abs(num) * 10**shift // den
    else:
        scaled = abs(num) // (den * 10**-shift)
    with localcontext() as ctx:
        ctx.prec = digits
        d = (Decimal(-scaled if num < 0 else scaled) / 1).scaleb(-shift).normalize()
        # drop the exponent form normalize gives to whole numbers
        if d.as_tuple().exponent > 0 and d.adjusted() < digits:
            d = d.quantize(Decimal(1))
        return d


def expected_chi_exact(n: int, p, keep_terms: bool = False) -> ErExpectation:
    if not isinstance(n, int) or n < 1:
        raise InputError("n must be a positive integer")
    p = as_probability(p)
    a, b = p.numerator, p.denominator
    top = comb(n, 2)
    # numerator over the common denominator b**C(n,2), by Horner from k = n down:
    # acc_k = sign_k C(n,k) b**(C(n,2)-C(k,2)) + a**k acc_{k+1}
    numerator = 0
    b_pow = 1
    for k in range(n, 0, -1):
        c = comb(n, k) if k % 2 else -comb(n, k)
        numerator = c * b_pow + a**k * numerator
        b_pow *= b ** (k - 1)
    terms = None
    if keep_terms:
        terms = [Fraction((1 if k % 2 else -1) * comb(n, k) * a ** comb(k, 2), b ** comb(k, 2)) for k in range(1, n + 1)]
    value = Fraction(numerator, b**top)
    return ErExpectation(n, p, value, to_decimal(value), None if terms is None else tuple(terms))


MC_MAX_N = 64
MC_MAX_P = Fraction(7, 10)


def expected_chi_mc(
    n: int,
    p,
    samples: int,
    seed: int = 0,
    max_n: int = MC_MAX_N,
    max_p=MC_MAX_P,
) -> tuple[float, float]:
    """Monte Carlo mean of chi over sampled graphs; sample ``i`` uses the seed derived from ``(seed, i)``."""
    p = as_probability(p)
    if samples < 1:
        raise InputError("samples must be >= 1")
    if p in (0, 1):
        # one possible graph, so every sample agrees; memoized PH is linear on K_n
        return float(euler_characteristic_ph(erdos_renyi(n, p, seed), memoize=True)), 0.0
    if n > max_n or p > as_probability(max_p):
        raise CapacityError(
            f"Monte Carlo chi for n={n}, p={p} exceeds cap n <= {max_n}, p <= {max_p}",
            progress={"n": n, "p": str(p)},
        )
    values = [float(euler_characteristic_ph(erdos_renyi(n, p, _rng.derive_seed(seed, i)))) for i in range(samples)]
    return mean_and_stderr(values)


def log_pm(x) -> float:
    """``sign(x) * log|x|``, with ``log_pm(0) = 0``."""
    if x == 0:
        return 0.0
    sign = 1.0 if x > 0 else -1.0
    if isinstance(x, Fraction):
        mag = abs(x)
        return sign * (math.log(mag.numerator) - math.log(mag.denominator))
    if isinstance(x, Decimal):
        return sign * float(abs(x).ln())
    if isinstance(x, int):
        return sign * math.log(abs(x))
    return sign * math.log(abs(float(x)))


@dataclass(frozen=True)
class SweepRow:
    n: int
    p: Fraction
    value: Fraction
    log_pm: float


def sweep(n_max: int, p_values) -> list[SweepRow]:
    if n_max < 1:
        raise InputError("n_max must be >= 1")
    ps = sorted({as_probability(p) for p in p_values})
    rows = []
    for n in range(1, n_max + 1):
        for p in ps:
            value = expected_chi_exact(n, p).value
            rows.append(SweepRow(n, p, value, log_pm(value)))
    return rows


def evenly_spaced_probabilities(count: int) -> list[Fraction]:
    """``count`` rationals ``k/(count+1)`` strictly inside (0, 1)."""
    return [Fraction(k, count + 1) for k in range(1, count + 1)]


def sweep_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "p", "expected_chi", "log_pm"])
    for r in rows:
        w.writerow([r.n, str(r.p), format(to_decimal(r.value), ".15g"), format(r.log_pm, ".15g")])
    return buf.getvalue()
