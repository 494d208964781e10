"""Dense polynomials over F_p as coefficient lists, lowest degree first.

Only what the root-structure computation needs: arithmetic, division with
remainder, gcd, powering modulo a polynomial and root multiplicities.
"""

from __future__ import annotations


def trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def reduce(a, p: int) -> list[int]:
    return trim([x % p for x in a])


def degree(a: list[int]) -> int:
    return len(a) - 1


def sub(a, b, p):
    n = max(len(a), len(b))
    return trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return reduce(out, p)


def divmod_poly(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        c = a[-1] * inv % p
        q[shift] = c
        for i, y in enumerate(b):
            a[i + shift] = (a[i + shift] - c * y) % p
        trim(a)
    return trim(q), a


def monic(a, p):
    if not a:
        return []
    inv = pow(a[-1], -1, p)
    return [x * inv % p for x in a]


def gcd(a, b, p):
    a, b = reduce(a, p), reduce(b, p)
    while b:
        a, b = b, divmod_poly(a, b, p)[1]
    return monic(a, p)


def derivative(a, p):
    return reduce([i * a[i] for i in range(1, len(a))], p)


def powmod(base, e: int, mod, p):
    result = [1]
    base = divmod_poly(base, mod, p)[1]
    while e:
        if e & 1:
            result = divmod_poly(mul(result, base, p), mod, p)[1]
        base = divmod_poly(mul(base, base, p), mod, p)[1]
        e >>= 1
    return result


def evaluate(a, x: int, p: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def root_multiplicity(a, r: int, p: int) -> int:
    m = 0
    a = reduce(a, p)
    while a and evaluate(a, r, p) == 0:
        # synthetic division by (X - r)
        q = [0] * (len(a) - 1)
        carry = 0
        for i in range(len(a) - 1, 0, -1):
            carry = (carry * r + a[i]) % p
            q[i - 1] = carry
        a = trim(q)
        m += 1
    return m


def split_part(a, p):
    """``gcd(a, X^p - X)``: the product of the distinct linear factors of ``a``."""
    a = reduce(a, p)
    xp = powmod([0, 1], p, a, p)
    return gcd(a, sub(xp, [0, 1], p), p)


def roots(a, p):
    """Distinct roots in F_p, via the split part then trial evaluation on it."""
    s = split_part(a, p)
    if degree(s) < 1:
        return []
    found = []
    for x in range(p):
        if evaluate(s, x, p) == 0:
            found.append(x)
            if len(found) == degree(s):
                break
    return found
