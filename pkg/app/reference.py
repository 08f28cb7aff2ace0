"""Published values every check compares against."""

from __future__ import annotations

from fractions import Fraction

# sucker's bets with three decks of n cards each, n = 1..12
SUCKERS_SEQUENCE = [
    0,
    0,
    15,
    39,
    5196,
    32115,
    2093199,
    19618353,
    960165789,
    11272949151,
    479538890271,
    6504453085104,
]

REDUCED_SEQUENCE = [
    0,
    0,
    5,
    13,
    1732,
    10705,
    697733,
    6539451,
    320055263,
    3757649717,
    159846296757,
    2168151028368,
]

PROBABILITY_DECIMALS = [
    "0.",
    "0.",
    "0.008928571429",
    "0.001125541126",
    "0.006866149723",
    "0.001872252397",
    "0.005245153668",
    "0.002072614083",
    "0.004213592531",
    "0.002030797274",
    "0.003512410777",
    "0.001921704153",
]

MAGIC_SQUARE_WORD = "132321213"
MAGIC_SQUARE_DECKS = ((1, 6, 8), (3, 5, 7), (2, 4, 9))

EFRON_DICE = (
    (1, 1, 5, 5, 5, 5),
    (4, 4, 4, 4, 4, 4),
    (3, 3, 3, 3, 7, 7),
    (2, 2, 2, 6, 6, 6),
)
EFRON_POINTS = (
    (0, 0, 0, 0),
    (2, 0, 0, 0),
    (2, 0, 0, 3),
    (2, 0, 4, 3),
    (2, 6, 4, 3),
    (6, 6, 4, 3),
    (6, 6, 4, 6),
    (6, 6, 6, 6),
)
SIX_DENOMINATION_DICE = (
    (1, 1, 5, 5, 5, 5),
    (4, 4, 4, 4, 4, 4),
    (3, 3, 3, 3, 3, 3),
    (2, 2, 2, 2, 6, 6),
)
# reduced tie-less 4-dice sets with six faces per die, by number of denominations
TIELESS_COUNTS = {6: 1, 7: 38, 8: 755}

# limiting scaled mixed moments S(i1, i2, i3), i1 <= i2 <= i3 <= 5, even total
SCALED_LIMITS = {
    (0, 0, 0): Fraction(1),
    (0, 0, 2): Fraction(1),
    (0, 0, 4): Fraction(3),
    (0, 1, 1): Fraction(-1, 2),
    (0, 1, 3): Fraction(-3, 2),
    (0, 1, 5): Fraction(-15, 2),
    (0, 2, 2): Fraction(3, 2),
    (0, 2, 4): Fraction(6),
    (0, 3, 3): Fraction(-21, 4),
    (0, 3, 5): Fraction(-30),
    (0, 4, 4): Fraction(57, 2),
    (0, 5, 5): Fraction(-765, 4),
    (1, 1, 2): Fraction(0),
    (1, 1, 4): Fraction(3, 2),
    (1, 2, 3): Fraction(-3, 4),
    (1, 2, 5): Fraction(-15, 2),
    (1, 3, 4): Fraction(3, 2),
    (1, 4, 5): Fraction(-45, 4),
    (2, 2, 2): Fraction(3, 2),
    (2, 2, 4): Fraction(6),
    (2, 3, 3): Fraction(-3),
    (2, 3, 5): Fraction(-45, 2),
    (2, 4, 4): Fraction(45, 2),
    (2, 5, 5): Fraction(-135),
    (3, 3, 4): Fraction(0),
    (3, 4, 5): Fraction(-135, 4),
    (4, 4, 4): Fraction(135, 2),
    (4, 5, 5): Fraction(-945, 4),
}

# M(4,5,5) as published: n^3 (c_18 n^18 + ... + c_0) / 2837835, coefficients in descending powers.
# With s_i as defined here (covariance -n^3/3, S(4,5,5) < 0) the moment is the negative of
# this expression; see M455_SIGN.
M455_DENOMINATOR = 2837835
M455_LOW_POWER = 3
M455_PUBLISHED = [
    39239200,
    66146080,
    -816055240,
    1114633520,
    3208398492,
    -13589761044,
    25028291837,
    -38043392560,
    62580129596,
    -103184180072,
    157753326632,
    -224678523360,
    293133737664,
    -336053442624,
    322828696448,
    -243844376832,
    132045454336,
    -44452356096,
    6864979968,
]
M455_SIGN = -1
