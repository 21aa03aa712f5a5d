"""Published counts and closed-form coefficients used as regression targets."""

# Coefficients (lowest degree first) of P_n and Q_n for n = 1..5, where
# B(m, n) = 2**(m-2) P_n(m) / (n-1)! and A(m, n) = 2**(m-2) Q_n(m) / (n-1)!.
BIMONOTONE_POLYS = {
    1: [1],
    2: [0, 1],
    3: [-6, 3, 1],
    4: [-60, -4, 9, 1],
    5: [-600, -258, 47, 18, 1],
}
ALL_POLYS = {
    1: [1],
    2: [1, 1],
    3: [2, 5, 1],
    4: [6, 29, 12, 1],
    5: [24, 206, 131, 22, 1],
}

# 2 x n grids (two rows of n points): n -> (bimonotone, all)
TWO_BY_N = {
    2: (2, 3),
    3: (12, 26),
    4: (88, 252),
    5: (720, 2568),
    6: (6304, 26928),
}

# 3 x n grids: n -> (bimonotone, all); the all-count for n = 4 was never published.
THREE_BY_N = {
    2: (12, 26),
    3: (528, 2224),
    4: (34152, None),
}
