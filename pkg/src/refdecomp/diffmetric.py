"""Token-level differencing and the normalized explanation score.

The delta between two token sequences is the count of tokens outside a
longest common subsequence; the score of an intermediate version is

    score = 1 - delta(mid, right) / delta(left, right)

so 1 means the remaining difference is fully explained and 0 means nothing
was explained. The LCS inner loop runs in the compiled extension when it is
available and otherwise in a pure-Python fallback with the same contract.
"""

from __future__ import annotations

from dataclasses import dataclass

from .minij import MethodAst, Token, print_method, tokenize

try:  # pragma: no cover - exercised via KERNEL in tests
    from ._lcs import lcs_length

    KERNEL = "cython"
except ImportError:  # pragma: no cover
    from ._lcs_fallback import lcs_length

    KERNEL = "python"


class BaselineZeroError(Exception):
    """left and right are token-identical but mid still differs from right."""


@dataclass(frozen=True)
class DeltaSize:
    added: int
    deleted: int

    @property
    def total(self) -> int:
        return self.added + self.deleted


@dataclass(frozen=True)
class SimScore:
    value: float


def _keys(tokens: list[Token]) -> list[tuple[str, str]]:
    return [(t.kind, t.lexeme) for t in tokens]


def token_delta(a: list[Token], b: list[Token]) -> DeltaSize:
    """Added/deleted token counts between two sequences, via an exact LCS.

    Tokens compare by (kind, lexeme); positions and alignment ties do not
    affect the counts.
    """
    ka, kb = _keys(a), _keys(b)
    # Trim the common prefix and suffix before running the quadratic kernel.
    lo = 0
    hi_a, hi_b = len(ka), len(kb)
    while lo < hi_a and lo < hi_b and ka[lo] == kb[lo]:
        lo += 1
    while hi_a > lo and hi_b > lo and ka[hi_a - 1] == kb[hi_b - 1]:
        hi_a -= 1
        hi_b -= 1
    mid_a, mid_b = ka[lo:hi_a], kb[lo:hi_b]
    if mid_a and mid_b:
        ids: dict[tuple[str, str], int] = {}
        ia = [ids.setdefault(k, len(ids)) for k in mid_a]
        ib = [ids.setdefault(k, len(ids)) for k in mid_b]
        common = lcs_length(ia, ib)
    else:
        common = 0
    common += lo + (len(ka) - hi_a)
    return DeltaSize(added=len(kb) - common, deleted=len(ka) - common)


def method_tokens(ast: MethodAst) -> list[Token]:
    """Tokens of the canonical printed form of a method."""
    return tokenize(print_method(ast))


def sim(mid: MethodAst, left: MethodAst, right: MethodAst) -> SimScore:
    """Normalized explanation score of ``mid`` between ``left`` and ``right``.

    Raises BaselineZeroError when left and right are token-identical while
    mid is not: the score is undefined there. Identical (left, right, mid)
    triples score 1.
    """
    right_tokens = method_tokens(right)
    numer = token_delta(method_tokens(mid), right_tokens).total
    denom = token_delta(method_tokens(left), right_tokens).total
    if denom == 0:
        if numer == 0:
            return SimScore(1.0)
        raise BaselineZeroError(
            "left and right are token-identical but mid differs from right"
        )
    return SimScore(1.0 - numer / denom)
