"""Pinned reference data for the table emitters and the regression suite.

Every constant here was computed independently (exhaustive eigenvalue
enumeration for the small-order table, extended-precision evaluation of
the closed forms elsewhere) and then frozen, so the CLI table commands
can report PASS/FAIL against a fixed target instead of merely printing
whatever the library currently produces.

Display conventions: the threshold strings keep four decimal digits and
the ratio strings three, both truncated (not rounded); the tabulated
margins carry three significant digits.
"""

from __future__ import annotations

## l0 and hat_l for odd 3 <= m <= 55; l0 is None below 15 where every
## class is Ramanujan and hat_l = m - 2 sits outside the dichotomy.
TABLE1 = {
    3: (None, 1), 5: (None, 3), 7: (None, 5), 9: (None, 7),
    11: (None, 9), 13: (None, 11),
    15: (5, 7), 17: (5, 7), 19: (5, 7), 21: (7, 7), 23: (7, 9),
    25: (7, 9), 27: (7, 7), 29: (7, 9),
    31: (9, 9), 33: (9, 9), 35: (9, 11), 37: (9, 11), 39: (9, 9),
    41: (9, 11), 43: (11, 11), 45: (11, 11), 47: (11, 13), 49: (11, 13),
    51: (11, 11), 53: (11, 13), 55: (11, 13),
}

## analytic threshold constants, truncated to four decimals
TABLE2_GAMMAS = ("1.3843", "1.5765", "1.7579", "1.7925")
TABLE2_XBAR1 = {-5: "1.4300", -3: "1.5313", -1: "1.6327",
                1: "1.7340", 3: "1.8353", 5: "1.9366"}
TABLE2_GAMMA5 = {-5: "1.8297", -3: "1.8653", -1: "1.8980",
                 1: "1.9284", 3: "1.9570", 5: "1.9839"}
TABLE2_XUNDER2 = {-5: "1.8575", -3: "1.8828", -1: "1.9081",
                  1: "1.9335", 3: "1.9588", 5: "1.9841"}

## classification chart of k^2 + 5k + c for 4 <= k <= 50, columns in
## C_OFFSETS order (-5,-3,-1,1,3,5):
##   '-' not in the candidate set (c = -5 needs k >= 19)
##   '.' member, ordinary
##   '1' exceptional, prime
##   '2' exceptional, semiprime
##   '3' exceptional, square (25 and 49 only; both are below this range,
##       so '3' never occurs here)
TABLE3_COLUMNS = (-5, -3, -1, 1, 3, 5)
TABLE3_MARKS = {
    4: "-.21.1", 5: "-13.12", 6: "-.21.1", 7: "-.1..1", 8: "-11.11",
    9: "-..1.1", 10: "-.11..", 11: "-1..11", 12: "-....2", 13: "-.1..1",
    14: "-1..11", 15: "-.2...", 16: "-..1.2", 17: "-.1.21", 18: "-....1",
    19: "...1.1", 20: "..1.1.", 21: "1..1.2", 22: "2.1..1", 23: ".11.1.",
    24: "1..2.1", 25: "...1..", 26: "....11", 27: "1.1...", 28: "1....1",
    29: ".1..21", 30: "..11..", 31: "...1.2", 32: ".1..12", 33: "1....1",
    34: "1..1..", 35: "..1.2.", 36: "1....1", 37: "1.1..1", 38: "..2.1.",
    39: "2....1", 40: "...1..", 41: "....12", 42: "..1..1", 43: "2.1..1",
    44: ".1...1", 45: "...1..", 46: "1..1.1", 47: ".1..12", 48: "1.1..1",
    49: "...1..", 50: ".21.1.",
}

## semiprime family for a = 1, c = -5 (p = 9y^2-39y-59, q = 16y^2-72y-99):
## (y, p, q, q/p truncated, (mu0-rb, mu1-rb, mu2-rb)), margins to three
## significant digits; every member is exceptional (all margins negative).
TABLE4_ROWS = (
    (7, 109, 181, "1.660", (-1.11e-2, -8.21e-2, -2.17e-2)),
    (17, 1879, 3301, "1.756", (-7.58e-4, -4.86e-3, -1.09e-3)),
    (25, 4591, 8101, "1.764", (-3.11e-4, -1.98e-3, -4.42e-4)),
    (35, 9601, 16981, "1.768", (-1.49e-4, -9.50e-4, -2.09e-4)),
    ## the source table shows 1.768 here, but 22621/12781 = 1.76989...
    (40, 12781, 22621, "1.769", (-1.12e-4, -7.13e-4, -1.57e-4)),
    (62, 32119, 56941, "1.772", (-4.46e-5, -2.83e-4, -6.20e-5)),
    (82, 57259, 101581, "1.774", (-2.50e-5, -1.59e-4, -3.47e-5)),
    (104, 93229, 165469, "1.774", (-1.53e-5, -9.77e-5, -2.12e-5)),
)

## the contrasting family with the offset shifted to -7: the product
## leaves the candidate set, and indeed the window margin flips sign.
## These polynomials are outside the admissible-offset domain, so the
## emitter evaluates them directly rather than through family_eval.
TABLE5_POLY_P = (9, -39, -77)
TABLE5_POLY_Q = (16, -72, -131)
TABLE5_ROWS = (
    (13, 937, 1637, "1.747", (1.07e-4, -8.13e-3, -6.21e-4)),
    (43, 14887, 26357, "1.770", (4.70e-6, -5.11e-4, -3.36e-5)),
    (60, 29983, 53149, "1.772", (2.30e-6, -2.54e-4, -1.64e-5)),
    (81, 55813, 99013, "1.774", (1.22e-6, -1.36e-4, -8.73e-6)),
    (158, 218437, 387917, "1.775", (3.11e-7, -3.48e-5, -2.19e-6)),
    (211, 392383, 697013, "1.776", (1.73e-7, -1.93e-5, -1.21e-6)),
    (225, 446773, 793669, "1.776", (1.52e-7, -1.70e-5, -1.06e-6)),
    (249, 548221, 973957, "1.776", (1.23e-7, -1.38e-5, -8.69e-7)),
)

## family for a = 64, c = 5: the ratio limit 1.9845... exceeds
## gamma5(5), so mu1 lands above the Ramanujan bound and every member
## is ordinary.  The margins need extended precision (>= 40 digits).
TABLE6_ROWS = (
    (39, 103507276549, 407634920449, "3.938",
     (-5.79e-11, 2.17e-13, -6.61e-11)),
    (134, 1223336627269, 4817774691329, "3.938",
     (-4.90e-12, 1.84e-14, -5.59e-12)),
    (165, 1854993585541, 7305381823489, "3.938",
     (-3.23e-12, 1.21e-14, -3.69e-12)),
    (178, 2158870385989, 8502116992001, "3.938",
     (-2.77e-12, 1.04e-14, -3.17e-12)),
    (279, 5304571299589, 20890594526209, "3.938",
     (-1.13e-12, 4.25e-15, -1.29e-12)),
    (433, 12777690072709, 50321416668161, "3.938",
     (-4.69e-13, 1.76e-15, -5.35e-13)),
    (468, 14927014718149, 58785940423681, "3.938",
     (-4.02e-13, 1.51e-15, -4.58e-13)),
    (499, 16970160763909, 66832308978689, "3.938",
     (-3.53e-13, 1.32e-15, -4.03e-13)),
)

## the first five primes whose Jacobi symbol is -1 against every c'
AVOIDS_FIRST5 = (97, 577, 827, 853, 947)

## truncated singular series prod_{p >= 3} (1 - (c'/p)/(p-1)).  The
## published list repeats the c = -5 value in the c = -3 slot; the
## product itself gives 0.62143 there (37 is a QR mod 3, so the p = 3
## factor is 1/2) and two independent evaluations agree, so we pin the
## computed value.
HL_CONSTANTS = {-5: 1.18219, -3: 0.621429, -1: 1.12674,
                1: 0.927881, 3: 0.807233, 5: 1.77328}
HL_TOLERANCE = 0.02

## every exceptional order up to 100 (rho_E(100) = 18)
EXCEPTIONAL_ORDERS_100 = (15, 17, 19, 23, 25, 29, 35, 37, 41, 47, 49,
                          53, 55, 65, 67, 71, 83, 89)


def truncate(value: float, places: int) -> str:
    """Decimal truncation toward zero, as a fixed-point string."""
    scaled = int(abs(value) * 10 ** places)
    sign = "-" if value < 0 else ""
    digits = str(scaled).rjust(places + 1, "0")
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def truncate_ratio(q: int, p: int, places: int = 3) -> str:
    """q/p truncated to the given places, in exact integer arithmetic."""
    scaled = q * 10 ** places // p
    digits = str(scaled).rjust(places + 1, "0")
    return f"{digits[:-places]}.{digits[-places:]}"


def margin_close(computed: float, target: float) -> bool:
    """Three-significant-digit agreement, one display ulp of slack."""
    import math

    if target == 0.0:
        return abs(computed) < 1e-15
    ulp = 10.0 ** (math.floor(math.log10(abs(target))) - 2)
    return abs(computed - target) <= 1.0000001 * ulp
