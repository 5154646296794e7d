"""Schwinger pair-production rate per unit volume and time (SI units)."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .constants import c, e, hbar, m_e

DEFAULT_KMAX = 20
# log of the smallest positive subnormal double
_LOG_TINY = math.log(5e-324)


@dataclass(frozen=True)
class VacuumDecayQuery:
    E: float
    m: float = m_e
    q: float = e
    kmax: int = DEFAULT_KMAX

    def __post_init__(self):
        if not self.E >= 0:
            raise ValueError("E must be >= 0")
        if not self.m > 0 or not self.q > 0:
            raise ValueError("m and q must be positive")
        if int(self.kmax) != self.kmax or self.kmax < 1:
            raise ValueError("kmax must be an integer >= 1")


def critical_field(m: float = m_e, q: float = e) -> float:
    """Field at which the leading exponential equals exp(-pi): m^2 c^3 / (hbar q)."""
    if m <= 0 or q <= 0:
        raise ValueError("m and q must be positive")
    return m * m * c**3 / (hbar * q)


def _log_terms(query: VacuumDecayQuery, kmax: int):
    log_pref = 2.0 * math.log(query.q * query.E) - 2.0 * math.log(math.pi) - 2.0 * math.log(hbar) - math.log(c)
    x = math.pi * critical_field(query.m, query.q) / query.E
    for k in range(1, kmax + 1):
        yield log_pref - 2.0 * math.log(k) - k * x


def _rate(query: VacuumDecayQuery, kmax: int) -> float:
    if query.E == 0:
        return 0.0
    terms = [math.exp(lt) for lt in _log_terms(query, kmax) if lt > _LOG_TINY]
    return math.fsum(terms)


def pair_production_rate(query: VacuumDecayQuery) -> float:
    """Full series truncated at query.kmax, in pairs m^-3 s^-1.

    Every term is formed in the log domain; terms below the smallest
    double are dropped, so laboratory fields return exactly 0.0.
    """
    return _rate(query, int(query.kmax))


def dominant_term_rate(query: VacuumDecayQuery) -> float:
    """The k = 1 term alone."""
    return _rate(query, 1)


def rate_exponent(query: VacuumDecayQuery) -> float:
    """Exponent of the k = 1 suppression factor, -pi E_c / E (-inf for E = 0)."""
    if query.E == 0:
        return -math.inf
    return -math.pi * critical_field(query.m, query.q) / query.E


def vacuum_persists(query: VacuumDecayQuery) -> bool:
    """True when the rate underflows to zero in double precision."""
    return pair_production_rate(query) == 0.0
