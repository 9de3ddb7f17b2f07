"""Permutations in single-line notation, permutation codes, and the
brute-force verifier every construction in this package is checked against.

Words are tuples over the symbols ``1..n``; ``word[x - 1]`` is the image of x.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    CellConflict,
    DistanceTooSmall,
    LengthMismatch,
    NotIdempotent,
    PermCodeError,
)

Word = tuple[int, ...]
INFINITE = math.inf


def identity(n: int) -> Word:
    return tuple(range(1, n + 1))


def is_permutation(word: Sequence[int]) -> bool:
    return sorted(word) == list(range(1, len(word) + 1))


def inverse(word: Sequence[int]) -> Word:
    inv = [0] * len(word)
    for x, y in enumerate(word, 1):
        inv[y - 1] = x
    return tuple(inv)


def compose(a: Sequence[int], b: Sequence[int]) -> Word:
    """``a after b``: x -> a(b(x))."""
    return tuple(a[y - 1] for y in b)


def hamming_distance(a: Sequence[int], b: Sequence[int]) -> int:
    if len(a) != len(b):
        raise LengthMismatch(f"words of length {len(a)} and {len(b)}")
    return sum(x != y for x, y in zip(a, b))


def fixed_points(word: Sequence[int]) -> set[int]:
    return {x for x, y in enumerate(word, 1) if x == y}


@dataclass(frozen=True)
class PermutationCode:
    """An ordered set of distinct words of length n.

    Words are range-checked but not required to be bijections here, so that a
    damaged code can still be loaded and diagnosed by :func:`verify_ripc`.
    """

    n: int
    words: tuple[Word, ...]
    claimed_d: int | None = None
    claimed_r: int | None = None

    def __post_init__(self):
        words = tuple(tuple(int(s) for s in w) for w in self.words)
        object.__setattr__(self, "words", words)
        for idx, w in enumerate(words):
            if len(w) != self.n:
                raise LengthMismatch(f"word {idx} has length {len(w)}, expected {self.n}")
            if any(s < 1 or s > self.n for s in w):
                raise PermCodeError(f"word {idx} has a symbol outside 1..{self.n}")
        if len(set(words)) != len(words):
            raise PermCodeError("code contains repeated words")

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self):
        return iter(self.words)

    def array(self) -> np.ndarray:
        if not self.words:
            return np.zeros((0, self.n), dtype=np.int32)
        return np.array(self.words, dtype=np.int32)

    def with_claims(self, d=None, r=None) -> "PermutationCode":
        return PermutationCode(self.n, self.words, d, r)


def _min_distance_rows(W: np.ndarray, rows: range) -> tuple[int, tuple[int, int] | None]:
    n = W.shape[1]
    best, witness = n + 1, None
    for i in rows:
        if i + 1 >= len(W):
            break
        dist = n - (W[i + 1 :] == W[i]).sum(axis=1)
        j = int(dist.argmin())
        if dist[j] < best:
            best, witness = int(dist[j]), (i, i + 1 + j)
    return best, witness


def min_distance_with_witness(
    code: PermutationCode, threads: int = 1
) -> tuple[float | int, tuple[int, int] | None]:
    """Exact pairwise minimum distance and the first pair attaining it.

    Rows may be split across ``threads`` workers; the merge takes the smallest
    distance, ties broken by the lexicographically first pair.
    """
    N = len(code)
    if N < 2:
        return INFINITE, None
    W = code.array()
    if threads <= 1:
        return _min_distance_rows(W, range(N - 1))
    chunks = [range(s, N - 1, threads) for s in range(threads)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        results = list(pool.map(lambda rows: _min_distance_rows(W, rows), chunks))
    results = [r for r in results if r[1] is not None]
    return min(results, key=lambda r: (r[0], r[1]))


def min_distance(code: PermutationCode, threads: int = 1) -> float | int:
    return min_distance_with_witness(code, threads)[0]


def pairwise_distances(code: PermutationCode) -> np.ndarray:
    """Full N x N distance matrix; only for small codes."""
    W = code.array()
    return code.n - (W[:, None, :] == W[None, :, :]).sum(axis=2)


@dataclass
class VerificationReport:
    n: int
    size: int
    min_distance: float | int
    witness: tuple[int, int] | None
    is_idempotent: bool
    fixed_point_counts: dict[int, int]
    regularity: int | None
    non_bijective: list[int] = field(default_factory=list)
    bad_fixed: list[tuple[int, int]] = field(default_factory=list)
    expected_r: int | None = None
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems

    def summary(self) -> str:
        d = "inf" if self.min_distance == INFINITE else str(self.min_distance)
        r = "-" if self.regularity is None else str(self.regularity)
        head = f"n={self.n} size={self.size} d={d} r={r} idempotent={self.is_idempotent}"
        if self.ok:
            return head + " OK"
        return head + " FAIL: " + "; ".join(self.problems)


def _census(code: PermutationCode, threads: int = 1) -> VerificationReport:
    d, witness = min_distance_with_witness(code, threads)
    counts = {s: 0 for s in range(1, code.n + 1)}
    non_bij, bad_fixed = [], []
    for idx, w in enumerate(code.words):
        if not is_permutation(w):
            non_bij.append(idx)
        fp = fixed_points(w)
        for s in fp:
            counts[s] += 1
        if len(fp) != 1:
            bad_fixed.append((idx, len(fp)))
    values = set(counts.values())
    return VerificationReport(
        n=code.n,
        size=len(code),
        min_distance=d,
        witness=witness,
        is_idempotent=not bad_fixed,
        fixed_point_counts=counts,
        regularity=values.pop() if len(values) == 1 else None,
        non_bijective=non_bij,
        bad_fixed=bad_fixed,
    )


def verify_pc(code: PermutationCode, d: int, threads: int = 1) -> VerificationReport:
    """Check that every word is a permutation and the minimum distance is >= d."""
    rep = _census(code, threads)
    if rep.non_bijective:
        rep.problems.append(f"word {rep.non_bijective[0]} is not a permutation")
    if rep.min_distance < d:
        i, j = rep.witness
        rep.problems.append(f"words {i} and {j} are at distance {rep.min_distance} < {d}")
    return rep


def verify_ripc(code: PermutationCode, r: int, threads: int = 1) -> VerificationReport:
    """Check the r-IPC(n, n-1) conditions; failures are reported, never raised."""
    rep = verify_pc(code, code.n - 1, threads)
    rep.expected_r = r
    if rep.bad_fixed:
        idx, cnt = rep.bad_fixed[0]
        rep.problems.append(f"word {idx} has {cnt} fixed points")
    off = [s for s, c in rep.fixed_point_counts.items() if c != r]
    if off:
        s = off[0]
        rep.problems.append(
            f"symbol {s} is fixed by {rep.fixed_point_counts[s]} words, expected {r}"
        )
    if len(code) != r * code.n and not off:
        rep.problems.append(f"size {len(code)} != r*n = {r * code.n}")
    return rep


def _require_idempotent(code: PermutationCode) -> None:
    for idx, w in enumerate(code.words):
        k = len(fixed_points(w))
        if k != 1:
            raise NotIdempotent(f"word {idx} has {k} fixed points")


def adjoin_identity(code: PermutationCode) -> PermutationCode:
    """Add the identity word to an idempotent PC(n, n-1); it sits at distance
    exactly n-1 from every word."""
    _require_idempotent(code)
    return PermutationCode(code.n, code.words + (identity(code.n),), claimed_d=code.n - 1)


def trim_regularity(code: PermutationCode, r: int) -> PermutationCode:
    """Keep, per fixed-point symbol, the first r words in code order."""
    _require_idempotent(code)
    kept, seen = [], {}
    for w in code.words:
        (s,) = fixed_points(w)
        if seen.get(s, 0) < r:
            seen[s] = seen.get(s, 0) + 1
            kept.append(w)
    return PermutationCode(code.n, kept, code.claimed_d, r)


def agreement_profile(code: PermutationCode) -> np.ndarray:
    """``A[s, i]`` = number of other words agreeing with word s at position i."""
    W = code.array()
    A = np.empty_like(W)
    for i in range(code.n):
        counts = np.bincount(W[:, i], minlength=code.n + 1)
        A[:, i] = counts[W[:, i]] - 1
    return A


def extract_ripc(
    code: PermutationCode, sigma: Sequence[int] | None = None
) -> tuple[int, PermutationCode]:
    """Pull a regular idempotent subcode out of a PC(n, n-1).

    r is the largest, over centre words sigma, of the smallest per-position
    agreement count with sigma.  The least maximizing sigma (lexicographic) is
    used unless ``sigma`` is given, in which case it must be a word of the code.
    Per position i the first r agreeing words are kept and relabelled through
    sigma^-1, which turns the agreement at i into a fixed point at i.
    """
    n = code.n
    if len(code) >= 2:
        d = min_distance(code)
        if d < n - 1:
            raise DistanceTooSmall(f"minimum distance {d} < {n - 1}")
    if len(code) == 0:
        return 0, PermutationCode(n, ())
    per_word = agreement_profile(code).min(axis=1)
    if sigma is None:
        best = int(per_word.max())
        s_idx = min((w, k) for k, w in enumerate(code.words) if per_word[k] == best)[1]
    else:
        sigma = tuple(sigma)
        try:
            s_idx = code.words.index(sigma)
        except ValueError:
            raise PermCodeError("sigma must be a word of the code") from None
    r = int(per_word[s_idx])
    sigma = code.words[s_idx]
    sigma_inv = inverse(sigma)
    out = []
    for i in range(n):
        taken = 0
        for k, w in enumerate(code.words):
            if taken == r:
                break
            if k != s_idx and w[i] == sigma[i]:
                out.append(compose(sigma_inv, w))
                taken += 1
    return r, PermutationCode(n, out, claimed_d=n - 1, claimed_r=r)


def partition_into_sharp(code: PermutationCode) -> list[PermutationCode]:
    """Greedy first-fit split into classes of pairwise disagreeing words."""
    classes: list[list[Word]] = []
    for w in code.words:
        for cls in classes:
            if all(hamming_distance(w, v) == code.n for v in cls):
                cls.append(w)
                break
        else:
            classes.append([w])
    return [PermutationCode(code.n, cls, claimed_d=code.n) for cls in classes]


def code_to_partial_squares(classes: Iterable[PermutationCode], labels=None):
    """Turn each agreement-free class into a partial latin square.

    A word with label i (by default its unique fixed point) writes i into
    every cell (x, word(x)).  ``labels`` may map words to labels explicitly.
    """
    from .latin import PartialLatinSquare

    squares = []
    for cls in classes:
        n = cls.n
        cells: list[list[int | None]] = [[None] * n for _ in range(n)]
        for w in cls.words:
            if labels is not None:
                label = labels[w]
            else:
                fp = fixed_points(w)
                if len(fp) != 1:
                    raise NotIdempotent(f"word {w} has {len(fp)} fixed points")
                (label,) = fp
            for x, y in enumerate(w):
                if cells[x][y - 1] is not None:
                    raise CellConflict(f"cell ({x + 1}, {y}) filled twice")
                cells[x][y - 1] = label
        squares.append(PartialLatinSquare(n, cells))
    return squares
