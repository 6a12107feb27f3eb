"""Pure-Python LCS-length kernel, used when the compiled extension is absent."""

from __future__ import annotations


def lcs_length(a, b) -> int:
    """Length of the longest common subsequence of two int sequences."""
    n, m = len(a), len(b)
    if n == 0 or m == 0:
        return 0
    if m > n:
        a, b, n, m = b, a, m, n
    prev = [0] * (m + 1)
    for x in a:
        cur = [0] * (m + 1)
        row = 0
        for j in range(1, m + 1):
            if x == b[j - 1]:
                row = prev[j - 1] + 1
            else:
                row = cur[j - 1]
                if prev[j] > row:
                    row = prev[j]
            cur[j] = row
        prev = cur
    return prev[m]
