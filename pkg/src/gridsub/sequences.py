"""Large Schroeder and central Delannoy numbers, and the identities tying them
to two-row subdivision counts."""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

from .tworow import count_two_row_all, count_two_row_bimonotone


class IdentityViolation(AssertionError):
    """A proven identity failed to hold for some n."""


_schroeder_cache: list[int] = [1]
_schroeder_lock = threading.Lock()


def schroeder(n: int) -> int:
    """Large Schroeder number via S_n = S_{n-1} + sum_k S_k S_{n-1-k}."""
    if n < 0:
        raise ValueError("n must be >= 0")
    s = _schroeder_cache
    with _schroeder_lock:
        while len(s) <= n:
            k = len(s)
            s.append(s[k - 1] + sum(s[i] * s[k - 1 - i] for i in range(k)))
    return s[n]


def schroeder_path_oracle(n: int) -> int:
    """Count E/N/NE unit-step paths (0,0) -> (n,n) that never go above y = x."""
    if n < 0:
        raise ValueError("n must be >= 0")
    ways = [[0] * (n + 1) for _ in range(n + 1)]
    ways[0][0] = 1
    for x in range(n + 1):
        for y in range(x + 1):
            if x == y == 0:
                continue
            w = 0
            if x > 0 and y <= x - 1:
                w += ways[x - 1][y]
            if y > 0:
                w += ways[x][y - 1]
            if x > 0 and y > 0:
                w += ways[x - 1][y - 1]
            ways[x][y] = w
    return ways[n][n]


def delannoy(i: int, j: int) -> int:
    """D(i, j) = D(i-1, j) + D(i, j-1) + D(i-1, j-1) with D(0, .) = D(., 0) = 1."""
    if i < 0 or j < 0:
        raise ValueError("indices must be >= 0")
    row = [1] * (j + 1)
    for _ in range(i):
        new = [1] * (j + 1)
        for c in range(1, j + 1):
            new[c] = row[c] + new[c - 1] + row[c - 1]
        row = new
    return row[j]


def delannoy_central(n: int) -> int:
    return delannoy(n, n)


@dataclass
class IdentityReport:
    name: str
    status: str = "pass"
    rows: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r["match"] for r in self.rows)

    def to_dict(self) -> dict:
        return {"identity": self.name, "status": self.status, "rows": self.rows}


def verify_schroeder_identity(n_max: int) -> IdentityReport:
    """Check B(n, n) = 2**(n-2) * S_{n-1} for 2 <= n <= n_max.

    Raises :class:`IdentityViolation` naming the first failing n.
    """
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    report = IdentityReport("two-row bimonotone = 2^(n-2) * schroeder(n-1)")
    for n in range(2, n_max + 1):
        lhs = count_two_row_bimonotone(n, n)
        rhs = 2 ** (n - 2) * schroeder(n - 1)
        report.rows.append({"n": n, "count": str(lhs), "identity": str(rhs), "match": lhs == rhs})
        if lhs != rhs:
            raise IdentityViolation(f"identity fails at n={n}: {lhs} != {rhs}")
    return report


def check_delannoy_conjecture(n_max: int) -> IdentityReport:
    """Compare A(n, n) with 2**(n-2) * D_{n-1}; mismatches are reported, not raised."""
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    report = IdentityReport("CONJECTURE: two-row all = 2^(n-2) * delannoy(n-1)")
    for n in range(2, n_max + 1):
        lhs = count_two_row_all(n, n)
        rhs = 2 ** (n - 2) * delannoy_central(n - 1)
        report.rows.append({"n": n, "count": str(lhs), "identity": str(rhs), "match": lhs == rhs})
    report.status = "CONJECTURE-CONSISTENT" if report.ok else "CONJECTURE-MISMATCH"
    return report
