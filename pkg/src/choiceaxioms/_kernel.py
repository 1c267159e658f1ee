"""Compiled predicate evaluation for exhaustive scans.

Each correspondence is reduced to an 8-bit pattern of predicate outcomes,
evaluated directly from the definitions on the raw choice table. The Python
checkers in :mod:`choiceaxioms.axioms` and :mod:`choiceaxioms.relations` are
the reference; the test suite cross-checks both routes.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .core import proper_menus
from .generators import deposit, radix_bases

TAU = 1 << 0  # Axiom tau holds
PREF = 1 << 1  # strict revealed preference is asymmetric and negatively transitive
RHO = 1 << 2  # Axiom rho holds
RAT = 1 << 3  # strict revealed preference rationalizes the correspondence
WARP = 1 << 4
VAX = 1 << 5  # V-axiom (normality)
DELTA = 1 << 6
WEAKV = 1 << 7  # weak revealed preference equals V
N_PATTERNS = 256

PREDICATES = {
    "tau": TAU,
    "preference": PREF,
    "rho": RHO,
    "rationalized": RAT,
    "warp": WARP,
    "v-axiom": VAX,
    "delta": DELTA,
    "weak-equals-v": WEAKV,
}


@njit(cache=True)
def _popcount(v):
    c = 0
    while v:
        v &= v - 1
        c += 1
    return c


@njit(cache=True)
def _binary_part(table, n, dom, weak):
    """Fill ``dom``/``weak`` masks from pair menus; return TAU|PREF bits."""
    beats = np.zeros(n, dtype=np.int64)
    for x in range(n):
        dom[x] = 0
        weak[x] = 1 << x
    for x in range(n):
        for y in range(n):
            if x == y:
                continue
            c = table[(1 << x) | (1 << y)]
            if c == (1 << x):
                beats[x] |= 1 << y
                dom[y] |= 1 << x
            if c & (1 << x):
                weak[x] |= 1 << y
    bits = 0
    tau = True
    for x in range(n):
        bx = 1 << x
        for y in range(n):
            for z in range(n):
                if z == x:
                    continue
                p1 = (table[(1 << z) | (1 << y)] >> z) & 1
                p2 = table[bx | (1 << z)] == bx
                concl = table[bx | (1 << y)] == bx
                if p1 and p2 and not concl:
                    tau = False
                    break
            if not tau:
                break
        if not tau:
            break
    if tau:
        bits |= TAU
    pref = True
    for x in range(n):
        for y in range(n):
            if (beats[x] >> y) & 1 and (beats[y] >> x) & 1:
                pref = False
    if pref:
        for x in range(n):
            for y in range(n):
                if (beats[x] >> y) & 1:
                    continue
                for z in range(n):
                    if not (beats[y] >> z) & 1 and (beats[x] >> z) & 1:
                        pref = False
    if pref:
        bits |= PREF
    return bits


@njit(cache=True)
def _rationalized(table, n, proper, dom):
    for i in range(proper.shape[0]):
        A = proper[i]
        und = 0
        for x in range(n):
            if (A >> x) & 1 and (dom[x] & A) == 0:
                und |= 1 << x
        if und != table[A]:
            return False
    return True


@njit(cache=True)
def _rho(table, n):
    size = 1 << n
    for x in range(n):
        bx = 1 << x
        for y in range(n):
            bxy = bx | (1 << y)
            in_pair = (table[bxy] >> x) & 1
            for B in range(size):
                left = in_pair and (table[B | bx] >> x) & 1
                right = (table[B | bxy] >> x) & 1
                if left != right:
                    return False
    return True


@njit(cache=True)
def _warp(table, proper):
    m = proper.shape[0]
    for i in range(m):
        A = proper[i]
        cA = table[A]
        for j in range(m):
            B = proper[j]
            common = A & B
            if _popcount(common) < 2:
                continue
            cB = table[B]
            if (cA & common & ~cB) and (cB & common):
                return False
    return True


@njit(cache=True)
def _normal_part(table, n, weak):
    """VAX|WEAKV bits from the 'at least as good' relation."""
    size = 1 << n
    V = np.zeros(n, dtype=np.int64)
    for A in range(1, size):
        c = table[A]
        for x in range(n):
            if (c >> x) & 1:
                V[x] |= A
    bits = VAX
    for A in range(1, size):
        vm = 0
        for x in range(n):
            if (A >> x) & 1 and (A & ~V[x]) == 0:
                vm |= 1 << x
        if vm != table[A]:
            bits = 0
            break
    same = True
    for x in range(n):
        if weak[x] != V[x]:
            same = False
    if same:
        bits |= WEAKV
    return bits


@njit(cache=True)
def _delta(table, proper):
    m = proper.shape[0]
    for i in range(m):
        T = proper[i]
        cT = table[T]
        if _popcount(cT) != 1:
            continue
        for j in range(m):
            S = proper[j]
            if S == T or (S & ~T) != 0:
                continue
            cS = table[S]
            if (cS & cT) and _popcount(cS) >= 2:
                return False
    return True


@njit(cache=True)
def _rest(table, n, proper, dom, weak):
    bits = 0
    if _rationalized(table, n, proper, dom):
        bits |= RAT
    if _rho(table, n):
        bits |= RHO
    if _warp(table, proper):
        bits |= WARP
    bits |= _normal_part(table, n, weak)
    if _delta(table, proper):
        bits |= DELTA
    return bits


@njit(cache=True)
def evaluate_table(table, n, proper):
    dom = np.zeros(n, dtype=np.int64)
    weak = np.zeros(n, dtype=np.int64)
    return _binary_part(table, n, dom, weak) | _rest(table, n, proper, dom, weak)


@njit(cache=True)
def scan(n, proper, options, bases, start, count, bad, max_bad, keep):
    """Evaluate ``count`` consecutive correspondences starting at digits ``start``.

    Returns ``(histogram, examples, scanned)``; ``examples[p]`` holds the
    offsets of the first ``keep`` correspondences with pattern ``p``
    (``-1`` padded). Stops early once ``max_bad`` patterns flagged in ``bad``
    have been seen.
    """
    m = proper.shape[0]
    n_pairs = n * (n - 1) // 2
    table = np.zeros(1 << n, dtype=np.int64)
    for x in range(n):
        table[1 << x] = 1 << x
    digits = start.copy()
    for i in range(m):
        table[proper[i]] = options[i, digits[i]]
    hist = np.zeros(N_PATTERNS, dtype=np.int64)
    examples = np.full((N_PATTERNS, keep), -1, dtype=np.int64)
    n_bad = 0
    scanned = 0
    dom = np.zeros(n, dtype=np.int64)
    weak = np.zeros(n, dtype=np.int64)
    low = 0
    binary_bits = 0
    while scanned < count:
        if low < n_pairs or scanned == 0:
            binary_bits = _binary_part(table, n, dom, weak)
        bits = binary_bits | _rest(table, n, proper, dom, weak)
        if hist[bits] < keep:
            examples[bits, hist[bits]] = scanned
        hist[bits] += 1
        scanned += 1
        if bad[bits]:
            n_bad += 1
            if n_bad >= max_bad:
                break
        i = m - 1
        while i >= 0:
            digits[i] += 1
            if digits[i] < bases[i]:
                table[proper[i]] = options[i, digits[i]]
                break
            digits[i] = 0
            table[proper[i]] = options[i, 0]
            i -= 1
        low = i if i >= 0 else 0
    return hist, examples, scanned


def layout(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Arrays describing the enumeration: proper menus, digit options, bases."""
    proper = np.array(proper_menus(n), dtype=np.int64)
    bases = np.array(radix_bases(n), dtype=np.int64)
    width = int(bases.max()) if len(bases) else 1
    options = np.zeros((len(proper), width), dtype=np.int64)
    for i, menu in enumerate(proper.tolist()):
        for d in range(int(bases[i])):
            options[i, d] = deposit(d + 1, menu)
    return proper, options, bases


def predicate_bits(table, n: int) -> int:
    """Pattern bits for a single choice table (sequence indexed by menu mask)."""
    return int(
        evaluate_table(np.asarray(table, dtype=np.int64), n, np.array(proper_menus(n), dtype=np.int64))
    )
