#!/usr/bin/env python3
"""Independent oracle for the vendored B(2,4) power-commutator presentation.

Builds G = <a, b | w^4 for all cyclically reduced words w of length <= 4>
by Todd-Coxeter coset enumeration (sympy), checks that every element of G
has order dividing 4 (so G is the free Burnside group B(2,4)), then refines
the lower central series of G to a composition series with factors of
order 2 and writes the resulting pc presentation in the `.pcp` text format.

Also evaluates the two relators of the Whitehead-link half-cabling
presentation and compares them with left-normed commutators of weight 5.

Usage: python3 b24_oracle.py OUT.pcp
"""
import itertools
import sys

import numpy as np
from sympy.combinatorics.coset_table import coset_enumeration_r
from sympy.combinatorics.fp_groups import FpGroup
from sympy.combinatorics.free_groups import free_group


def short_fourth_powers(F, a, b, max_len):
    gens = {"a": a, "b": b}
    seen = set()
    rels = []

    def canon(w):
        inv = tuple((s, -e) for (s, e) in reversed(w))
        return min(t[i:] + t[:i] for t in (w, inv) for i in range(len(t)))

    for n in range(1, max_len + 1):
        for w in itertools.product([("a", 1), ("a", -1), ("b", 1), ("b", -1)], repeat=n):
            if n > 1 and any(
                w[i][0] == w[(i + 1) % n][0] and w[i][1] == -w[(i + 1) % n][1] for i in range(n)
            ):
                continue
            k = canon(w)
            if k in seen:
                continue
            seen.add(k)
            g = F.identity
            for s, e in w:
                g = g * gens[s] ** e
            rels.append(g ** 4)
    return rels


class Cayley:
    """Right-regular representation of a finite group given by a coset table."""

    def __init__(self, table, col_a, col_b):
        self.n = len(table)
        t = np.array(table, dtype=np.int64)
        self.ta = t[:, col_a]
        self.tb = t[:, col_b]
        n = self.n
        perms = [None] * n
        perms[0] = np.arange(n, dtype=np.int64)
        queue = [0]
        while queue:
            g = queue.pop()
            for tab in (self.ta, self.tb):
                p = tab[perms[g]]
                h = int(p[0])
                if perms[h] is None:
                    perms[h] = p
                    queue.append(h)
        assert all(p is not None for p in perms)
        self.perms = np.stack(perms)
        self.inv = np.empty(n, dtype=np.int64)
        for g in range(n):
            self.inv[g] = int(np.nonzero(self.perms[g] == 0)[0][0])
        self.a = int(self.ta[0])
        self.b = int(self.tb[0])

    def mul(self, g, h):
        return int(self.perms[h][g])

    def comm(self, g, h):
        return self.mul(self.mul(self.inv[g], self.inv[h]), self.mul(g, h))

    def power(self, g, k):
        r = 0
        for _ in range(k):
            r = self.mul(r, g)
        return r

    def subgroup(self, gens):
        elems = {0}
        frontier = [0]
        gens = list(gens)
        while frontier:
            x = frontier.pop()
            for s in gens:
                y = self.mul(x, s)
                if y not in elems:
                    elems.add(y)
                    frontier.append(y)
        return elems

    def normal_closure(self, gens):
        gens = set(gens)
        while True:
            h = self.subgroup(gens)
            more = set()
            for x in gens:
                for t in (self.a, self.b):
                    c = self.mul(self.mul(self.inv[t], x), t)
                    if c not in h:
                        more.add(c)
            if not more:
                return h, gens
            gens |= more


def eval_word(cay, text):
    g = 0
    for tok in text.split():
        sym, _, exp = tok.partition("^")
        gen = {"x": cay.a, "y": cay.b}[sym]
        k = int(exp) if exp else 1
        step = gen if k > 0 else int(cay.inv[gen])
        for _ in range(abs(k)):
            g = cay.mul(g, step)
    return g


def left_normed(cay, gens):
    g = gens[0]
    for h in gens[1:]:
        g = cay.comm(g, h)
    return g


def check_w_relators(cay):
    r1 = eval_word(cay, "x y^-2 x^2 y^-2 x^3 y^-2 x^2 y^-2")
    r2 = eval_word(cay, "y x y^-2 x^2 y^-2 x y x^-2 y^2 x^-2")
    a, b = cay.a, cay.b
    c1 = left_normed(cay, [a, b, a, b, a])
    c2 = left_normed(cay, [b, a, b, a, b])
    print("R1 == [x,y,x,y,x]:", r1 == c1)
    print("R2 == [y,x,y,x,y]:", r2 == c2)
    print("R2 == [x,y,x,y,x][y,x,y,x,y]:", r2 == cay.mul(c1, c2))
    print("<<R1, R2>> order:", len(cay.normal_closure([r1, r2])[0]))


def main():
    out = sys.argv[1]
    F, a, b = free_group("a b")
    G = FpGroup(F, short_fourth_powers(F, a, b, 4))
    C = coset_enumeration_r(G, [], max_cosets=2_000_000)
    C.compress()
    C.standardize()
    col_a = C.A.index(a)
    col_b = C.A.index(b)
    cay = Cayley(C.table, col_a, col_b)
    n = cay.n
    print("order", n)
    for g in range(n):
        assert cay.power(g, 4) == 0, "element of order > 4"
    print("exponent 4 verified on all elements")
    check_w_relators(cay)

    # lower central series with generating sets
    layers = []  # list of (element set, generator list)
    cur_set = set(range(n))
    cur_gens = [cay.a, cay.b]
    while True:
        layers.append((cur_set, cur_gens))
        if len(cur_set) == 1:
            break
        cgens = {cay.comm(x, t) for x in cur_gens for t in (cay.a, cay.b)} - {0}
        nxt, nxt_gens = cay.normal_closure(cgens)
        cur_set, cur_gens = nxt, sorted(nxt_gens)
    print("lower central orders", [len(s) for s, _ in layers])

    pcgens = []
    weights = []
    for w in range(len(layers) - 1):
        top, gens = layers[w]
        below = layers[w + 1][0]
        cands = list(gens)
        powers = list(gens)
        while True:
            powers = [cay.mul(x, x) for x in powers]
            powers = [x for x in powers if x not in below]
            if not powers:
                break
            cands.extend(powers)
        h = set(below)
        kept = []
        for c in reversed(cands):
            if c in h:
                continue
            # h is normal in G and c^2 lies in h, so <h, c> = h u hc
            h2 = h | {cay.mul(x, c) for x in h}
            assert cay.mul(c, c) in h and len(h2) == 2 * len(h)
            h = h2
            kept.append(c)
        assert len(h) == len(top)
        kept.reverse()
        pcgens.extend(kept)
        weights.extend([w + 1] * len(kept))
    m = len(pcgens)
    assert pcgens[0] == cay.a and pcgens[1] == cay.b
    assert 2 ** m == n

    # chain G_j = <g_j, ..., g_m>
    chain = [None] * (m + 1)
    chain[m] = {0}
    for j in range(m - 1, -1, -1):
        chain[j] = chain[j + 1] | {cay.mul(x, pcgens[j]) for x in chain[j + 1]}
        assert len(chain[j]) == 2 * len(chain[j + 1])

    def sift(x):
        v = [0] * m
        for j in range(m):
            if x not in chain[j + 1]:
                v[j] = 1
                x = cay.mul(cay.inv[pcgens[j]], x)
        assert x == 0
        return v

    with open(out, "w") as f:
        f.write("# B(2,4): free Burnside group of rank 2 and exponent 4, order 2^12\n")
        f.write("# generated by tools/b24_oracle.py (coset enumeration + lower central refinement)\n")
        f.write("prime 2\n")
        f.write(f"ngens {m}\n")
        f.write("weights " + ",".join(str(w) for w in weights) + "\n")
        for i in range(m):
            v = sift(cay.mul(pcgens[i], pcgens[i]))
            assert all(e == 0 for e in v[: i + 1])
            f.write(f"p {i + 1} = " + ",".join(map(str, v)) + "\n")
        for i in range(m):
            for j in range(i):
                v = sift(cay.comm(pcgens[i], pcgens[j]))
                assert all(e == 0 for e in v[: i + 1])
                f.write(f"c {i + 1} {j + 1} = " + ",".join(map(str, v)) + "\n")
    print("weights", weights)


if __name__ == "__main__":
    main()
