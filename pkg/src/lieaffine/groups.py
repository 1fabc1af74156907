"""Structure of small concrete finite groups."""

from __future__ import annotations

from collections import Counter
from typing import Callable, Hashable, Sequence

from .exactmath import InvariantFactors


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def power(x, k: int, mul: Callable, identity):
    result, base = identity, x
    while k:
        if k & 1:
            result = mul(result, base)
        base = mul(base, base)
        k >>= 1
    return result


def is_abelian(elements: Sequence, mul: Callable) -> bool:
    return all(mul(a, b) == mul(b, a) for i, a in enumerate(elements) for b in elements[i + 1 :])


def abelian_invariants(elements: Sequence[Hashable], mul: Callable, identity) -> InvariantFactors:
    """Invariant factors of a finite abelian group given by its full element list.

    For each prime p the counts |{x : x^(p^k) = 1}| = p^(sum_i min(k, e_i))
    pin down the exponents e_i of the p-primary part; the invariant factors
    are then assembled across primes.
    """
    order = len(elements)
    if len(set(elements)) != order:
        raise ValueError("element list has duplicates")
    if not is_abelian(elements, mul):
        raise ValueError("group is not abelian")
    primary: dict[int, list[int]] = {}
    for p in _prime_factors(order):
        logs = [0]
        k = 1
        while True:
            count = sum(1 for x in elements if power(x, p**k, mul, identity) == identity)
            s = 0
            while count % p == 0 and count > 1:
                count //= p
                s += 1
            if count != 1:
                raise ArithmeticError("p-torsion count is not a power of p")
            logs.append(s)
            if s == logs[-2]:
                break
            k += 1
        # number of cyclic factors with exponent >= k is logs[k] - logs[k-1]
        at_least = [logs[k] - logs[k - 1] for k in range(1, len(logs))]
        exps = Counter()
        for k, c in enumerate(at_least, start=1):
            nxt = at_least[k] if k < len(at_least) else 0
            exps[k] = c - nxt
        primary[p] = sorted((e for e, c in exps.items() for _ in range(c) if e > 0), reverse=True)
    width = max((len(v) for v in primary.values()), default=0)
    factors = []
    for i in range(width):
        d = 1
        for p, es in primary.items():
            if i < len(es):
                d *= p ** es[i]
        factors.append(d)
    result = InvariantFactors(tuple(sorted(f for f in factors if f > 1)))
    if result.order != order:
        raise ArithmeticError("invariant factors do not account for the group order")
    return result


def conjugacy_class_count(elements: Sequence[Hashable], mul: Callable, inverse: Callable) -> int:
    remaining = set(elements)
    count = 0
    while remaining:
        x = next(iter(remaining))
        cls = {mul(mul(g, x), inverse(g)) for g in elements}
        remaining -= cls
        count += 1
    return count
