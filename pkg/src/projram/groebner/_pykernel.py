"""Reference reduction kernel in pure Python.

Polynomials are ``(keys, coeffs)`` pairs of lists with keys strictly
descending. Reduction keeps the work polynomial in a dict and pulls its
leading monomial from a max-heap (keys are pushed negated).
"""

from __future__ import annotations

import heapq

from ..ff import inv_mod
from .monomials import ExponentOverflowError

NAME = "python"


class Kernel:
    name = NAME

    def __init__(self, enc, p):
        self.enc = enc
        self.p = p
        self.steps = 0

    def pair_set(self):
        return PairSet(self.enc)

    # -- conversion
    def from_terms(self, keys, coeffs):
        return (list(keys), [c % self.p for c in coeffs])

    def to_terms(self, f):
        return list(f[0]), list(f[1])

    def nterms(self, f):
        return len(f[0])

    def lead(self, f):
        return f[0][0]

    def monic(self, f):
        keys, cs = f
        if not keys or cs[0] == 1:
            return f
        s = inv_mod(cs[0], self.p)
        p = self.p
        return (keys, [c * s % p for c in cs])

    # -- arithmetic
    def spoly(self, f, g, lcm):
        """``(lcm/lm f) f - (lcm/lm g) g`` for monic ``f`` and ``g``."""
        enc, p = self.enc, self.p
        sf = lcm - f[0][0]
        sg = lcm - g[0][0]
        acc = {}
        for k, c in zip(f[0][1:], f[1][1:]):
            acc[k + sf] = c
        for k, c in zip(g[0][1:], g[1][1:]):
            kk = k + sg
            v = (acc.get(kk, 0) - c) % p
            if v:
                acc[kk] = v
            else:
                acc.pop(kk, None)
        keys = sorted(acc, reverse=True)
        if keys and max(enc.degree(k) for k in keys) > 127:
            raise ExponentOverflowError("monomial degree overflow")
        return (keys, [acc[k] for k in keys])

    def reduce(self, f, basis, full=True, max_steps=None):
        """Normal form of ``f`` by monic ``basis``; ``None`` if ``max_steps`` ran out."""
        enc, p = self.enc, self.p
        fm, h = enc.field_mask, enc.guard
        drl = enc.kind == "degrevlex"
        divs = [(g[0][0] & fm, g) for g in basis]
        acc = dict(zip(f[0], f[1]))
        heap = [-k for k in f[0]]
        heapq.heapify(heap)
        out_k, out_c = [], []
        steps = 0
        while heap:
            k = -heapq.heappop(heap)
            while heap and -heap[0] == k:
                heapq.heappop(heap)
            c = acc.pop(k, 0)
            if not c:
                continue
            kf = k & fm
            hit = None
            for lk, g in divs:
                if drl:
                    if ((lk | h) - kf) & h == h:
                        hit = g
                        break
                elif ((kf | h) - lk) & h == h:
                    hit = g
                    break
            if hit is None:
                out_k.append(k)
                out_c.append(c)
                if not full:
                    # top reduction only: the rest is already final
                    rest = sorted((kk for kk, vv in acc.items() if vv), reverse=True)
                    out_k.extend(rest)
                    out_c.extend(acc[kk] for kk in rest)
                    break
                continue
            steps += 1
            if max_steps is not None and steps > max_steps:
                self.steps += steps
                return None
            shift = k - hit[0][0]
            gk, gc = hit
            if not drl and enc.degree(k) - enc.degree(gk[0]) + max(map(enc.degree, gk)) > 127:
                raise ExponentOverflowError("monomial degree overflow")
            for kk, cc in zip(gk[1:], gc[1:]):
                kk += shift
                old = acc.get(kk)
                v = ((old or 0) - c * cc) % p
                if old is None:
                    heapq.heappush(heap, -kk)
                acc[kk] = v
        self.steps += steps
        return (out_k, out_c)


class PairSet:
    """Critical pairs with the Gebauer-Moeller update, smallest lcm first.

    Also tracks the active (minimal) basis as a list of polynomial indices.
    """

    def __init__(self, enc):
        self.enc = enc
        self.leads = []
        self.active = []
        self.heap = []
        self.seq = 0
        self.pruned = 0

    def __len__(self):
        return len(self.heap)

    def update(self, hm):
        enc = self.enc
        leads = self.leads
        hi = len(leads)
        leads.append(hm)
        cand = []
        for i in self.active:
            cand.append((enc.lcm(leads[i], hm), i, enc.coprime(leads[i], hm)))
        # chain criterion on the new pairs, one survivor per lcm; a class
        # containing a coprime pair is dropped entirely
        survivors = []
        for n, (l, i, cop) in enumerate(cand):
            proper = any(enc.divides(l2, l) and l2 != l for l2, _, _ in cand)
            if proper:
                self.pruned += 1
                continue
            same = [c for c in cand if c[0] == l]
            if any(c[2] for c in same) or same[-1][1] != i:
                self.pruned += 1
                continue
            survivors.append((l, i))
        kept = []
        for entry in self.heap:
            l, _, i, j = entry
            if (enc.divides(hm, l) and enc.lcm(leads[i], hm) != l
                    and enc.lcm(leads[j], hm) != l):
                self.pruned += 1
                continue
            kept.append(entry)
        for l, i in survivors:
            kept.append((l, self.seq, i, hi))
            self.seq += 1
        heapq.heapify(kept)
        self.heap = kept
        self.active = [i for i in self.active if not enc.divides(hm, leads[i])] + [hi]
        return hi

    def pop(self):
        l, _, i, j = heapq.heappop(self.heap)
        return l, i, j
