#!/usr/bin/env python3
"""Writes pc presentations for the free Burnside groups B(r,3), r = 2, 3, 4.

Levi-van der Waerden structure: B(r,3) has class <= 3 with pc generators
  x_i                      (weight 1, i = 1..r)
  c_ij = [x_j, x_i]        (weight 2, i < j)
  d_ijk = [c_ij, x_k]      (weight 3, i < j < k)
where (a, b, c) -> [x_a, x_b, x_c] is central and alternating. So
  [x_j, x_i]  = c_ij                         (j > i)
  [c_ij, x_k] = d_sorted ^ sign(sorting permutation of (i, j, k))
and every other commutator and every p-th power is trivial.

The Rust engine accepts the files only after its consistency checker and
exponent-3 checks pass.

Usage: python3 b3_oracle.py OUTDIR
"""
import itertools
import os
import sys


def perm_sign(seq):
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def write(r, path):
    xs = [("x", i) for i in range(r)]
    cs = [("c", i, j) for i, j in itertools.combinations(range(r), 2)]
    ds = [("d",) + t for t in itertools.combinations(range(r), 3)]
    gens = xs + cs + ds
    index = {g: n for n, g in enumerate(gens)}
    m = len(gens)
    weights = [1] * len(xs) + [2] * len(cs) + [3] * len(ds)

    def vec(entries):
        v = [0] * m
        for g, e in entries:
            v[index[g]] = e % 3
        return v

    comm = {}
    for i, j in itertools.combinations(range(r), 2):
        comm[(index[("x", j)], index[("x", i)])] = vec([(("c", i, j), 1)])
    for i, j in itertools.combinations(range(r), 2):
        for k in range(r):
            if k in (i, j):
                continue
            s = tuple(sorted((i, j, k)))
            comm[(index[("c", i, j)], index[("x", k)])] = vec([(("d",) + s, perm_sign((i, j, k)))])

    names = [
        "x%d" % (g[1] + 1) if g[0] == "x"
        else "[x%d,x%d]" % (g[2] + 1, g[1] + 1) if g[0] == "c"
        else "[x%d,x%d,x%d]" % (g[2] + 1, g[1] + 1, g[3] + 1)
        for g in gens
    ]
    with open(path, "w") as f:
        f.write("# B(%d,3): free Burnside group of rank %d and exponent 3, order 3^%d\n" % (r, r, m))
        f.write("# generated by tools/b3_oracle.py\n")
        f.write("# pc generators: " + " ".join(names) + "\n")
        f.write("prime 3\n")
        f.write("ngens %d\n" % m)
        f.write("weights " + ",".join(map(str, weights)) + "\n")
        for a in range(m):
            f.write("p %d = %s\n" % (a + 1, ",".join(["0"] * m)))
        for a in range(m):
            for b in range(a):
                v = comm.get((a, b), [0] * m)
                f.write("c %d %d = %s\n" % (a + 1, b + 1, ",".join(map(str, v))))


def main():
    out = sys.argv[1]
    for r in (2, 3, 4):
        write(r, os.path.join(out, "b%d3.pcp" % r))


if __name__ == "__main__":
    main()
