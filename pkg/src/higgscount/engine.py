"""Residue engine: the closed formula for nilpotent twisted endomorphism counts.

The kernel L on variables z_1..z_n is a symmetrization over S_n.  For a
partition lambda of n, variables are grouped into blocks of equal parts
(parts of size i occupy z_{1+r_<i}..z_{r_<=i}, where r_i is the multiplicity
of i); an iterated residue collapses each block onto the geometric chain
z_j = q^{b-j} z_b and leaves one variable per block, which H_lambda then sends
to z^i q^{-r_<i}.  Together with the cell-wise zeta product J_lambda and the
prefactor (-v)^{(2g-2-l)<lambda,lambda>} this yields the rank-|lambda| part of
the series; ranks are assembled over all partitions up to the window bound.

Residue convention (frozen after calibration against the genus-0 brute-force
oracle; both the variable carrying the residue and the orientation matter):
within each block the eliminated variables are the non-maximal indices j,
taken highest first, each by a positive-orientation residue in z_j at
z_j = q^{b-j} z_b with the measure dz_j/z_j; the surviving block maximum is
then renamed q^{-(r_i-1)} z_{1+r_<i} so the lowest index represents its block.

Degree bookkeeping: the residue formula naturally grades strata by
sum_i i*deg(alpha_i), which exceeds the actual bundle degree by
l*sum_i C(i,2) r_i (each part of size p contributes C(p,2) twists while
climbing its kernel chain).  With l <= 0 this means the lambda-term enters
the honest degree grading multiplied by z^(-l * sum_p C(p,2)); the genus-0
oracle pins this down at l = -1, where the correction first bites.
"""

from __future__ import annotations

import itertools
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from threading import Lock

from .curve import point_count, zeta_at, zeta_star_at
from .errors import UnsupportedRegime
from .partitions import Partition
from .ratfun import MvRatFun
from .scalars import ScalarExpr
from .series import GradedSeries, Window

CACHE_DIR_ENV = "HIGGSCOUNT_CACHE_DIR"

_l_cache = {}
_jh_cache = {}
_cache_lock = Lock()


@dataclass(frozen=True)
class LambdaTerm:
    """One partition's contribution: prefactor * J * H at rank |lambda|."""

    lam: Partition
    J: MvRatFun
    H: MvRatFun
    prefactor: ScalarExpr


def _ph(curve, ia, ib, nz):
    """Homogenized zeta numerator sum_k (-1)^k e_k z_ia^k z_ib^(2g-k)."""
    g2 = curve.g2
    za = MvRatFun.z(ia, g2, nz)
    zb = MvRatFun.z(ib, g2, nz)
    out = zb**g2
    for k in range(1, g2 + 1):
        term = ScalarExpr.e(k, g2) * za**k * zb ** (g2 - k)
        out = out - term if k % 2 else out + term
    return out


def build_l(n, curve):
    """The symmetrized kernel as one reduced rational function of z_1..z_n.

    Per permutation only the inverted zeta ratios survive the division by
    the fixed product of Z~(z_a/z_b) over a<b; each inverted pair {a<b}
    contributes  -PH(b,a)(z_b - q z_a) / (PH(a,b)(z_a - q z_b))  where PH is
    the homogenized numerator, so every sigma-term is rational from the start.
    """
    if n < 1:
        raise ValueError("need at least one variable")
    key = (curve.genus, n)
    with _cache_lock:
        cached = _l_cache.get(key)
    if cached is not None:
        return cached
    g2 = curve.g2
    one = MvRatFun.one(g2, n)
    q = MvRatFun.q_power(1, g2, n)
    zs = {i: MvRatFun.z(i, g2, n) for i in range(1, n + 1)}
    lin = {}
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            if a != b:
                lin[(a, b)] = zs[a] - q * zs[b]
    ratio = {}
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            ratio[(a, b)] = -(_ph(curve, b, a, n) * lin[(b, a)]) / _ph(curve, a, b, n) / lin[(a, b)]

    total = MvRatFun.zero(g2, n)
    for sigma in itertools.permutations(range(1, n + 1)):
        pos = {val: i for i, val in enumerate(sigma)}
        term = one / (one - zs[sigma[0]])
        for i in range(n - 1):
            term = term * zs[sigma[i]] / lin[(sigma[i], sigma[i + 1])]
        for a in range(1, n + 1):
            for b in range(a + 1, n + 1):
                if pos[b] < pos[a]:
                    term = term * ratio[(a, b)]
        total = total + term
    total = total.reduced()
    with _cache_lock:
        _l_cache[key] = total
    return total


def _blocks(lam):
    """(part size i, lowest index, highest index) for each nonempty block."""
    out = []
    for i in range(1, lam.max_part() + 1):
        if lam.multiplicity(i):
            out.append((i, 1 + lam.r_below(i), lam.r_upto(i)))
    return out


def res_lambda(lam, curve):
    """Iterated residue of L, expressed in the block representatives."""
    if lam.size() == 0:
        raise ValueError("need a nonempty partition")
    n = lam.length()
    g2 = curve.g2
    f = build_l(n, curve)
    blocks = _blocks(lam)
    maxima = {hi for _, _, hi in blocks}
    for j in range(n, 0, -1):
        if j in maxima:
            continue
        b = next(hi for _, lo, hi in blocks if lo <= j <= hi)
        center = MvRatFun.q_power(b - j, g2, n) * MvRatFun.z(b, g2, n)
        f = f.residue_at(j, center, with_dlog=True)
    for i, lo, hi in blocks:
        if hi == lo:
            continue
        rep = MvRatFun.q_power(-(hi - lo), g2, n) * MvRatFun.z(lo, g2, n)
        f = f.substitute(hi, rep)
    return f


def h_lambda(lam, curve):
    """res_lambda with representative of block i sent to z^i q^(-r_<i)."""
    n = lam.length()
    g2 = curve.g2
    f = res_lambda(lam, curve)
    z1 = MvRatFun.z(1, g2, n)
    for i, lo, _ in _blocks(lam):
        target = MvRatFun.q_power(-lam.r_below(i), g2, n) * z1**i
        if lo == 1 and i == 1:
            continue  # target is z_1 itself
        f = f.substitute(lo, target)
    return f.with_context(1)


def j_lambda(lam, curve):
    """Cell product: legs with empty arms give regularized scalar values."""
    g2 = curve.g2
    out = MvRatFun.one(g2, 1)
    z = MvRatFun.z(1, g2, 1)
    for cell in lam.cells():
        a, leg = lam.arm_leg(cell)
        if a == 0:
            out = out * MvRatFun.from_scalar(zeta_star_at(curve, leg), 1)
        else:
            arg = MvRatFun.q_power(-1 - leg, g2, 1) * z**a
            out = out * zeta_at(curve, arg)
    return out


def lambda_term(lam, curve, l):
    return LambdaTerm(
        lam=lam,
        J=j_lambda(lam, curve),
        H=h_lambda(lam, curve),
        prefactor=ScalarExpr.minus_v_power((2 * curve.genus - 2 - l) * lam.pairing(), curve.g2),
    )


def _cache_path(genus, lam, dmax):
    root = os.environ.get(CACHE_DIR_ENV)
    if not root:
        return None
    name = f"jh_g{genus}_p{'-'.join(map(str, lam.parts))}_d{dmax}.json"
    return os.path.join(root, name)


def lambda_coeffs(lam, curve, dmax):
    """z-expansion coefficients of J_lambda * H_lambda, cached per (g, lambda)."""
    key = (curve.genus, lam.parts, dmax)
    with _cache_lock:
        cached = _jh_cache.get(key)
    if cached is not None:
        return cached
    path = _cache_path(curve.genus, lam, dmax)
    if path and os.path.exists(path):
        with open(path) as fh:
            data = json.load(fh)
        coeffs = tuple(ScalarExpr.parse(s, curve.g2) for s in data["coeffs"])
    else:
        jh = j_lambda(lam, curve).mul_unreduced(h_lambda(lam, curve))
        coeffs = tuple(jh.expand_at_zero(dmax))
        if path:
            os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
            tmp = path + ".tmp"
            with open(tmp, "w") as fh:
                json.dump({"coeffs": [c.render() for c in coeffs]}, fh)
            os.replace(tmp, path)
    with _cache_lock:
        _jh_cache[key] = coeffs
    return coeffs


def nil_bundle_series(l, curve, window, workers=1):
    """Generating series of nilpotent-pair counts over (rank, degree)."""
    if l > 0:
        raise UnsupportedRegime(f"nilpotent counting needs twist degree l <= 0, got {l}")
    lams = []
    for r in range(1, window.rmax + 1):
        lams.extend(Partition.all_of_size(r))
    if workers > 1 and lams:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(lambda lam: lambda_coeffs(lam, curve, window.dmax), lams))
    g2 = curve.g2
    coeffs = {(0, 0): ScalarExpr.one(g2)}
    for lam in sorted(lams, key=lambda p: p.parts):
        pref = ScalarExpr.minus_v_power((2 * curve.genus - 2 - l) * lam.pairing(), g2)
        expansion = lambda_coeffs(lam, curve, window.dmax)
        shift = -l * sum(p * (p - 1) // 2 for p in lam.parts)
        r = lam.size()
        for d in range(shift, window.dmax + 1):
            key = (r, d)
            term = pref * expansion[d - shift]
            coeffs[key] = coeffs.get(key, ScalarExpr.zero(g2)) + term
    return GradedSeries(g2, window, coeffs)


def torsion_factor(curve, window):
    """Exp of [X]/(q-1) * (z + z^2 + ...) on the window."""
    g2 = curve.g2
    c = point_count(curve) / (ScalarExpr.q(g2) - 1)
    inner = GradedSeries(g2, window, {(0, d): c for d in range(1, window.dmax + 1)})
    return inner.pleth_exp()


def coh_nil_series(l, curve, window, workers=1):
    """Coherent-sheaf variant: bundle series times the torsion factor."""
    return nil_bundle_series(l, curve, window, workers=workers).mul(torsion_factor(curve, window))


def clear_caches():
    with _cache_lock:
        _l_cache.clear()
        _jh_cache.clear()
