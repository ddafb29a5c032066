"""Worked-example matrices used across the test suite."""

from fractions import Fraction

from pmeq import Matrix, RationalField

Q = RationalField()

# the pair of 6x6 single-cycle permutation matrices with no common cut
INTRO_A6 = Matrix(Q, [
    [0, 1, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 0],
    [0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, 1],
    [1, 0, 0, 0, 0, 0],
])

INTRO_B6 = Matrix(Q, [
    [0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 0, 1],
    [0, 0, 0, 0, 1, 0],
    [0, 1, 0, 0, 0, 0],
    [1, 0, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 0],
])

# cut-transpose of INTRO_B6 along {1, 4}
INTRO_B6_PRIME = Matrix(Q, [
    [0, 0, 0, 1, 0, 0],
    [1, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 1],
    [0, 0, 0, 0, 1, 0],
    [0, 0, 1, 0, 0, 0],
    [0, 1, 0, 0, 0, 0],
])

LABELS5 = ("a", "b", "c", "d", "e")

FIVE_A = Matrix(Q, [
    [1, 3, 1, 1, 1],
    [2, 1, -1, -1, -1],
    [1, 2, 2, 1, 1],
    [2, 4, -2, 3, 4],
    [-1, -2, 1, 5, 6],
], LABELS5, LABELS5)

FIVE_B = Matrix(Q, [
    [1, 2, 1, 2, -1],
    [3, 1, 2, 4, -2],
    [1, -1, 2, 2, -1],
    [1, -1, -1, 3, 5],
    [1, -1, -1, 4, 6],
], LABELS5, LABELS5)

# the intermediate matrix after cut-transposing FIVE_A along {a, b, c}
FIVE_MID = Matrix(Q, [
    [1, 3, 1, 2, -1],
    [2, 1, -1, -2, 1],
    [1, 2, 2, 2, -1],
    [1, 2, -1, 3, 5],
    [1, 2, -1, 4, 6],
], LABELS5, LABELS5)

FIVE_SEQUENCE = (("a", "b", "c"), ("c", "d", "e"))

LABELS4 = ("b", "c", "d", "e")

# the submatrices displayed for the 5x5 decomposition
FIVE_A1 = Matrix(Q, [
    [1, 3, 1],
    [2, 1, -1],
    [1, 2, 2],
], ("a", "b", "c"), ("a", "b", "c"))

FIVE_B2 = Matrix(Q, [
    [1, 2, 4, -2],
    [-1, 2, 2, -1],
    [-1, -1, 3, 5],
    [-1, -1, 4, 6],
], LABELS4, LABELS4)

FIVE_A2 = Matrix(Q, [
    [1, -1, -1, -1],
    [2, 2, 1, 1],
    [4, -2, 3, 4],
    [-2, 1, 5, 6],
], LABELS4, LABELS4)

# cut-transpose of FIVE_B2 along {b, c}
FIVE_B2_TWISTED = Matrix(Q, [
    [1, 2, -1, -1],
    [-1, 2, Fraction(-1, 2), Fraction(-1, 2)],
    [4, 4, 3, 4],
    [-2, -2, 5, 6],
], LABELS4, LABELS4)
