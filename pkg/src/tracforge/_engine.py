"""Buchberger core over free modules S^r, S a polynomial ring over a field.

A module monomial x^e * e_pos is encoded as one Python int whose natural
ordering is the module monomial order.  The encoding is linear in the
exponent vector, so multiplying by a monomial is adding an integer shift.

Vectors are dicts ``{key: coefficient}``; ``p`` is the field characteristic
(0 for QQ, where coefficients are Fractions).
"""

from __future__ import annotations

import heapq
from fractions import Fraction

DIGIT_BITS = 24
POS_BITS = 20


def _invert(rows):
    n = len(rows)
    a = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(rows)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        a[col] = [v / pv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


class Encoder:
    """Integer keys for a module monomial order.

    ``mode`` is ``"top"`` (term over position), ``"pot"`` (position over
    term) or an int ``s``: positions ``< s`` form a block that dominates the
    rest, term-over-position inside each block.  Within a block lower
    positions are larger: e_0 > e_1 > ...
    """

    def __init__(self, rows, mode="top"):
        self.rows = tuple(tuple(r) for r in rows)
        self.n = len(self.rows[0]) if self.rows else 0
        self.R = len(self.rows)
        self.B = 1 << DIGIT_BITS
        self.P = 1 << POS_BITS
        self.BIG = 2 * self.P * self.B ** max(self.R, 1)
        self.mode = mode
        self._minv = _invert(self.rows) if self.R else []
        self._decoded = {}
        self._mono = {}

    def mono(self, exps):
        k = self._mono.get(exps)
        if k is None:
            k = 0
            B = self.B
            for row in self.rows:
                k = k * B + sum(r * e for r, e in zip(row, exps))
            self._mono[exps] = k
        return k

    def block(self, pos):
        mode = self.mode
        if mode == "top":
            return 0
        if mode == "pot":
            return pos
        return 1 if pos >= mode else 0

    def encode(self, exps, pos):
        return self.P * self.mono(exps) - pos - self.block(pos) * self.BIG

    def shift(self, exps):
        return self.P * self.mono(exps)

    def decode(self, key):
        """Return (exps, pos, mask)."""
        hit = self._decoded.get(key)
        if hit is not None:
            return hit
        BIG = self.BIG
        r = key % BIG
        if r >= BIG // 2:
            r -= BIG
        pos = (-r) % self.P
        mk = (r + pos) // self.P
        B = self.B
        half = B // 2
        digits = []
        for _ in range(self.R):
            d = mk % B
            if d >= half:
                d -= B
            digits.append(d)
            mk = (mk - d) // B
        digits.reverse()
        exps = tuple(int(sum(m * d for m, d in zip(row, digits))) for row in self._minv)
        mask = 0
        for i, e in enumerate(exps):
            if e:
                mask |= 1 << i
        hit = (exps, pos, mask)
        self._decoded[key] = hit
        return hit


class Basis:
    """Reducer table: elements grouped by leading position, insertion order kept."""

    def __init__(self, enc, p):
        self.enc = enc
        self.p = p
        self.elems = []  # list of (lead_key, exps, pos, mask, tail_items)
        self.by_pos = {}

    def add(self, vec):
        lk = max(vec)
        exps, pos, mask = self.enc.decode(lk)
        tail = [(k, c) for k, c in vec.items() if k != lk]
        rec = (lk, exps, pos, mask, tail)
        self.elems.append(rec)
        self.by_pos.setdefault(pos, []).append(rec)
        return rec

    def find(self, exps, pos, mask):
        cands = self.by_pos.get(pos)
        if not cands:
            return None
        for rec in cands:
            if rec[3] & ~mask == 0:
                ge = rec[1]
                for a, b in zip(ge, exps):
                    if a > b:
                        break
                else:
                    return rec
        return None


def reduce_vector(f, basis, full=True):
    """Normal form of ``f`` by a table of monic reducers."""
    if not f or not basis.elems:
        return dict(f)
    p = basis.p
    decode = basis.enc.decode
    find = basis.find
    f = dict(f)
    out = {}
    heap = [-k for k in f]
    heapq.heapify(heap)
    pop = heapq.heappop
    push = heapq.heappush
    while heap:
        k = -pop(heap)
        c = f.pop(k, None)
        if c is None:
            continue
        exps, pos, mask = decode(k)
        rec = find(exps, pos, mask)
        if rec is None:
            out[k] = c
            if not full:
                for kk, cc in f.items():
                    out[kk] = cc
                return out
            continue
        s = k - rec[0]
        if p:
            for gk, gc in rec[4]:
                nk = gk + s
                old = f.get(nk)
                if old is None:
                    f[nk] = (-c * gc) % p
                    push(heap, -nk)
                else:
                    v = (old - c * gc) % p
                    if v:
                        f[nk] = v
                    else:
                        del f[nk]
        else:
            for gk, gc in rec[4]:
                nk = gk + s
                old = f.get(nk)
                if old is None:
                    f[nk] = -c * gc
                    push(heap, -nk)
                else:
                    v = old - c * gc
                    if v:
                        f[nk] = v
                    else:
                        del f[nk]
    return out


def make_monic(vec, p):
    if not vec:
        return vec
    lc = vec[max(vec)]
    if lc == 1:
        return vec
    if p:
        inv = pow(lc, -1, p)
        return {k: c * inv % p for k, c in vec.items()}
    inv = 1 / Fraction(lc)
    return {k: c * inv for k, c in vec.items()}


def scale_shift(vec, shift, c, p):
    if p:
        return {k + shift: v * c % p for k, v in vec.items()}
    return {k + shift: v * c for k, v in vec.items()}


def s_vector(g1, g2, enc, p):
    """S-vector of two monic vectors with equal leading position (None otherwise)."""
    k1, k2 = max(g1), max(g2)
    e1, pos1, _ = enc.decode(k1)
    e2, pos2, _ = enc.decode(k2)
    if pos1 != pos2:
        return None
    lcm = tuple(max(a, b) for a, b in zip(e1, e2))
    s1 = enc.shift(tuple(a - b for a, b in zip(lcm, e1)))
    s2 = enc.shift(tuple(a - b for a, b in zip(lcm, e2)))
    c1 = g1[k1]
    c2 = g2[k2]
    out = scale_shift(g1, s1, c2, p)
    for k, v in g2.items():
        nk = k + s2
        w = out.get(nk, 0) - v * c1
        if p:
            w %= p
        if w:
            out[nk] = w
        else:
            out.pop(nk, None)
    return out


class GBStats:
    __slots__ = ("pairs_processed", "pairs_reduced_to_zero")

    def __init__(self):
        self.pairs_processed = 0
        self.pairs_reduced_to_zero = 0


def groebner(vectors, enc, p, product_criterion=False, stats=None):
    """Reduced Groebner basis of the module spanned by ``vectors``.

    Normal selection (smallest lcm degree, then smallest lcm in the order)
    with the Gebauer-Moeller installation of Buchberger's chain criterion.
    The coprime-leading-term criterion is only sound for ideals, so callers
    enable it explicitly.  Output: monic vectors sorted by ascending leading key.
    """
    stats = stats if stats is not None else GBStats()
    decode = enc.decode
    G = []  # monic vectors
    info = []  # (lead_key, exps, pos)
    active = []
    basis = Basis(enc, p)
    pairs = {}  # (i, j) -> (deg, lcm_key)
    heap = []

    def lcm_of(i, j):
        e1, e2 = info[i][1], info[j][1]
        return tuple(max(a, b) for a, b in zip(e1, e2))

    def divides(a, b):
        return all(x <= y for x, y in zip(a, b))

    def install(h):
        hidx = len(G)
        lk = max(h)
        exps, pos, _ = decode(lk)
        G.append(h)
        info.append((lk, exps, pos))
        active.append(True)
        basis.add(h)
        # candidate new pairs with active elements at the same position
        cands = []
        for i in range(hidx):
            if active[i] and info[i][2] == pos:
                L = lcm_of(i, hidx)
                coprime = product_criterion and all(not (a and b) for a, b in zip(info[i][1], exps))
                cands.append((i, L, coprime))
        kept = []
        for idx, (i, L, coprime) in enumerate(cands):
            if coprime:
                kept.append((i, L, coprime))
                continue
            dominated = False
            for jdx, (j, L2, _) in enumerate(cands[idx + 1:], start=idx + 1):
                if divides(L2, L):
                    dominated = True
                    break
            if not dominated:
                for (j, L2, _) in kept:
                    if divides(L2, L):
                        dominated = True
                        break
            if not dominated:
                kept.append((i, L, coprime))
        # chain criterion on old pairs
        for (i, j) in list(pairs):
            if info[i][2] != pos:
                continue
            L = lcm_of(i, j)
            if divides(exps, L) and lcm_of(i, hidx) != L and lcm_of(j, hidx) != L:
                del pairs[(i, j)]
        for (i, L, coprime) in kept:
            if coprime:
                continue
            key = enc.encode(L, pos)
            deg = sum(L)
            pairs[(i, hidx)] = (deg, key)
            heapq.heappush(heap, (deg, key, i, hidx))
        for i in range(hidx):
            if active[i] and info[i][2] == pos and divides(exps, info[i][1]):
                active[i] = False

    inputs = [dict(v) for v in vectors if v]
    inputs.sort(key=lambda v: max(v))
    for v in inputs:
        r = reduce_vector(v, basis)
        if r:
            install(make_monic(r, p))

    while heap:
        deg, key, i, j = heapq.heappop(heap)
        if (i, j) not in pairs:
            continue
        del pairs[(i, j)]
        stats.pairs_processed += 1
        s = s_vector(G[i], G[j], enc, p)
        r = reduce_vector(s, basis)
        if r:
            install(make_monic(r, p))
        else:
            stats.pairs_reduced_to_zero += 1

    # minimal basis, then inter-reduce tails; an element never divides its
    # own tail terms, so one table of all minimal elements serves every tail
    mins = [G[i] for i in range(len(G)) if active[i]]
    mins.sort(key=lambda v: max(v))
    table = Basis(enc, p)
    for h in mins:
        table.add(h)
    out = []
    for g in mins:
        lk = max(g)
        tail = {k: c for k, c in g.items() if k != lk}
        red = reduce_vector(tail, table)
        red[lk] = g[lk]
        out.append(red)
    out.sort(key=lambda v: max(v))
    return out


def s_pair_audit(gb, enc, p, sample=None, rng=None):
    """Check every (or a sampled subset of) S-vector reduces to zero.

    Returns (checked, failures).
    """
    basis = Basis(enc, p)
    for g in gb:
        basis.add(g)
    pairs = []
    for i in range(len(gb)):
        for j in range(i + 1, len(gb)):
            pairs.append((i, j))
    if sample is not None and pairs:
        k = max(1, int(len(pairs) * sample))
        pairs = rng.sample(pairs, k)
    failures = 0
    for i, j in pairs:
        s = s_vector(gb[i], gb[j], enc, p)
        if s is None:
            continue
        if reduce_vector(s, basis):
            failures += 1
    return len(pairs), failures
