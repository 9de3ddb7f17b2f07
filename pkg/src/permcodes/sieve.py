"""Parameter selection n = m*t + u by congruence avoidance, and the full
synthesis pipeline built on it.

Nothing asymptotic is claimed: the scan either finds an admissible t for
the given n or reports that none exists.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Iterable, Mapping

from .compose import compose_via_pbd
from .design import PairwiseBalancedDesign, truncated_td_pbd
from .errors import (
    IngredientFailure,
    NoAdmissibleT,
    NoPrimePowerInWindow,
    PermCodeError,
)
from .extend import baer_ipc
from .latin import field_idempotent_mols, macneish_mols, mols_to_ipc
from .numtheory import is_prime, is_prime_power, primes_upto
from .perm import PermutationCode, trim_regularity

GAMMA = 0.0797
BETA = 4.2665


@dataclass(frozen=True)
class SynthesisPlan:
    n: int
    r: int
    q: int
    m: int
    t: int
    u: int
    gamma: float = GAMMA
    beta: float = BETA

    def to_json(self) -> dict:
        d = asdict(self)
        return {k: d[k] for k in ("n", "r", "q", "m", "t", "u")}


def choose_q(n: int, r: int) -> int:
    """Least prime power q in [r+1, 2(r+1)] of parity opposite to n."""
    for q in range(r + 1, 2 * (r + 1) + 1):
        if q % 2 != n % 2 and is_prime_power(q):
            return q
    raise NoPrimePowerInWindow(f"no prime power q in [{r + 1}, {2 * (r + 1)}] with q != n mod 2")


def admissible(n: int, m: int, t: int, primes: Iterable[int] | None = None) -> bool:
    if primes is None:
        primes = primes_upto(m)
    return all(t % p and (m * t - n) % p for p in primes)


def find_admissible_t(n: int, m: int) -> int | None:
    """First t in [ceil(n/(m+1)), floor(n/m)] with t and n - m*t free of
    residues 0 modulo every prime p <= m; None if there is none."""
    if m < 2 or n <= m:
        return None
    primes = primes_upto(m)
    lo = -(-n // (m + 1))
    for t in range(lo, n // m + 1):
        u = n - m * t
        if 0 <= u <= t and admissible(n, m, t, primes):
            return t
    return None


def buchstab_count(x: int, y: int, omega: Mapping[int, Iterable[int]]) -> int:
    """Number of z in 1..x avoiding every residue class ``omega[p]`` mod p.

    ``omega`` maps primes p <= y to the residues excluded modulo p (one or two
    in the sieve's setting, any number accepted).
    """
    excluded = {}
    for p, residues in omega.items():
        if p > y or not is_prime(p):
            raise PermCodeError(f"modulus {p} is not a prime <= {y}")
        excluded[p] = {r % p for r in residues}
    return sum(
        1 for z in range(1, x + 1) if all(z % p not in res for p, res in excluded.items())
    )


def sieve_omega(n: int, m: int) -> dict[int, set[int]]:
    """Residues t' must avoid so that t = t' + floor(n/(m+1)) is admissible.

    For a prime p dividing m the second condition does not involve t; it then
    excludes every residue when p | n and nothing otherwise.
    """
    shift = n // (m + 1)
    omega = {}
    for p in primes_upto(m):
        res = {-shift % p}
        if m % p:
            res.add((pow(m, -1, p) * n - shift) % p)
        elif n % p == 0:
            res = set(range(p))
        omega[p] = res
    return omega


def ipc_ingredient(k: int, r: int, q: int | None = None) -> PermutationCode:
    """An r-IPC(k, k-1): from q^2 + 1 = k via extension, otherwise from
    MacNeish products of idempotent field MOLS."""
    if q is not None and k == q * q + 1:
        code = baer_ipc(q)
        if q - 1 < r:
            raise IngredientFailure(k, f"extension gives only {q - 1}-regular codes")
        return trim_regularity(code, r)
    mols = macneish_mols(k, idempotent=True, count=r)
    if len(mols) < r:
        raise IngredientFailure(k, f"MacNeish gives {len(mols)} idempotent squares, need {r}")
    return mols_to_ipc(mols)


def plan_synthesis(n: int, r: int) -> SynthesisPlan:
    if n < 10 or r < 1:
        raise PermCodeError(f"synthesis needs n >= 10 and r >= 1, got n={n}, r={r}")
    q = choose_q(n, r)
    m = q * q
    t = find_admissible_t(n, m)
    if t is None:
        raise NoAdmissibleT(f"no admissible t for n={n}, m={m}")
    return SynthesisPlan(n, r, q, m, t, n - m * t)


def synthesize_with_design(
    n: int, r: int
) -> tuple[SynthesisPlan, PermutationCode, PairwiseBalancedDesign]:
    plan = plan_synthesis(n, r)
    m, t, u, q = plan.m, plan.t, plan.u, plan.q
    ingredients: dict[int, PermutationCode] = {}
    ingredients[m] = mols_to_ipc(field_idempotent_mols(m, count=r))
    ingredients[m + 1] = ipc_ingredient(m + 1, r, q)
    for k in (t, u):
        if k >= 2 and k not in ingredients:
            ingredients[k] = ipc_ingredient(k, r)
    pbd = truncated_td_pbd(m, t, u)
    code = compose_via_pbd(pbd, ingredients, r)
    return plan, code, pbd


def synthesize_ipc(n: int, r: int) -> tuple[SynthesisPlan, PermutationCode]:
    """r-IPC(n, n-1) glued along the truncated transversal design for the
    plan chosen by :func:`plan_synthesis`."""
    plan, code, _ = synthesize_with_design(n, r)
    return plan, code
