"""Brute-force twisted-endomorphism counts on the projective line.

Every vector bundle on P^1 splits as O(a_1) + ... + O(a_r), so groupoid
counts over F_q0 reduce to finite sums over splitting types with all a_i >= 0
(the positivity truncation: every Harder-Narasimhan slope nonnegative).  A map
E -> E(l) is a matrix whose (i,j) entry is a polynomial of degree at most
a_i - a_j + l, and it is nilpotent iff its r-th power vanishes identically.

This module is deliberately independent of the residue machinery; it only
needs modular arithmetic, and serves as ground truth for it.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .errors import EnumerationCapExceeded
from .scalars import QuadValue
from .series import Window

DEFAULT_CAP = 10**7


def splitting_types(r, d):
    """Nonincreasing tuples a_1 >= ... >= a_r >= 0 with sum d."""
    if r < 0 or d < 0:
        raise ValueError("rank and degree must be nonnegative")
    if r == 0:
        return [()] if d == 0 else []
    out = []

    def rec(prefix, remaining, slots, bound):
        if slots == 1:
            if remaining <= bound:
                out.append(prefix + (remaining,))
            return
        # leading part at least ceil(remaining/slots), at most bound
        lo = -(-remaining // slots)
        for a in range(min(bound, remaining), lo - 1, -1):
            rec(prefix + (a,), remaining - a, slots - 1, a)

    rec((), d, r, d)
    return out


def hom_dim(a, b, l):
    """dim Hom(+O(a_i), +O(b_j)(l*pt)) = sum max(0, b_j - a_i + l + 1)."""
    return sum(max(0, bj - ai + l + 1) for ai in a for bj in b)


def gl_order(m, q0):
    out = 1
    for k in range(m):
        out *= q0**m - q0**k
    return out


def aut_count(a, q0):
    """Order of Aut(+O(a_i)): GL blocks per repeated twist, unipotent rest."""
    mult = {}
    for ai in a:
        mult[ai] = mult.get(ai, 0) + 1
    n = hom_dim(a, a, 0) - sum(m * m for m in mult.values())
    out = q0**n
    for m in mult.values():
        out *= gl_order(m, q0)
    return out


def _poly_mul(f, g, q0):
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, ci in enumerate(f):
        if ci:
            for j, cj in enumerate(g):
                out[i + j] = (out[i + j] + ci * cj) % q0
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _poly_add(f, g, q0):
    n = max(len(f), len(g))
    out = [(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n)]
    out = [c % q0 for c in out]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _mat_mul(x, y, r, q0):
    return [
        [
            _tuple_sum([_poly_mul(x[i][k], y[k][j], q0) for k in range(r)], q0)
            for j in range(r)
        ]
        for i in range(r)
    ]


def _tuple_sum(polys, q0):
    acc = ()
    for p in polys:
        acc = _poly_add(acc, p, q0)
    return acc


def _is_zero_matrix(x):
    return all(not e for row in x for e in row)


def nil_count(a, l, q0, cap=DEFAULT_CAP):
    """Number of nilpotent maps +O(a_i) -> (+O(a_i))(l*pt) over F_q0."""
    if l > 0:
        raise ValueError("nilpotent enumeration is for twist degree l <= 0")
    r = len(a)
    slots = []
    for i in range(r):
        for j in range(r):
            dim = max(0, a[i] - a[j] + l + 1)
            if dim:
                slots.append((i, j, dim))
    total = sum(dim for _, _, dim in slots)
    size = q0**total
    if size > cap:
        raise EnumerationCapExceeded(
            f"enumeration of {size} maps exceeds cap {cap}", required_cap=size
        )
    if not slots:
        return 1
    count = 0
    zero_row = [()] * r
    for coeffs in product(range(q0), repeat=total):
        theta = [list(zero_row) for _ in range(r)]
        pos = 0
        for i, j, dim in slots:
            entry = coeffs[pos:pos + dim]
            pos += dim
            while entry and entry[-1] == 0:
                entry = entry[:-1]
            theta[i][j] = tuple(entry)
        power = theta
        ok = False
        for _ in range(r - 1):
            if _is_zero_matrix(power):
                ok = True
                break
            power = _mat_mul(power, theta, r, q0)
        if ok or _is_zero_matrix(power):
            count += 1
    return count


def twist_sign_power(l, r, q0):
    """(-sqrt(q0))^(-l r^2) as an exact quadratic value."""
    m = -l * r * r
    root = QuadValue(q0, 0, 1)
    return (-root) ** m


def oracle_series(l, q0, window, nil_only=True, cap=DEFAULT_CAP):
    """Ground-truth counts: dict (r,d) -> QuadValue on the window.

    Entry (r,d) is (-sqrt(q0))^(-l r^2) * sum over splitting types of
    (#nilpotent maps or #all maps) / #Aut.  (0,0) is 1; other r=0 keys absent.
    """
    if l > 0:
        raise ValueError("oracle covers twist degree l <= 0")
    out = {(0, 0): QuadValue(q0, 1)}
    for r in range(1, window.rmax + 1):
        pref = twist_sign_power(l, r, q0)
        for d in range(window.dmax + 1):
            acc = Fraction(0)
            for a in splitting_types(r, d):
                if nil_only:
                    num = nil_count(a, l, q0, cap=cap)
                else:
                    num = q0 ** hom_dim(a, a, l)
                acc += Fraction(num, aut_count(a, q0))
            out[(r, d)] = pref * acc
    return out


def oracle_breakdown(r, d, l, q0, nil_only=True, cap=DEFAULT_CAP):
    """Per-splitting-type contributions, for mismatch witnesses."""
    rows = []
    for a in splitting_types(r, d):
        num = nil_count(a, l, q0, cap=cap) if nil_only else q0 ** hom_dim(a, a, l)
        rows.append((a, num, aut_count(a, q0), Fraction(num, aut_count(a, q0))))
    return rows
