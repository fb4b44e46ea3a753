"""Brute-force reference implementations used as independent test oracles.

Everything here works one scalar at a time through the field's add/mul
methods, deliberately avoiding the vectorized enumeration machinery the
package uses, so agreement is meaningful.
"""

import itertools


def brute_codewords(field, rows):
    rows = [list(int(v) for v in r) for r in rows]
    k = len(rows)
    n = len(rows[0]) if k else 0
    out = []
    for combo in itertools.product(range(field.order), repeat=k):
        word = [0] * n
        for cf, row in zip(combo, rows):
            if cf == 0:
                continue
            for j in range(n):
                word[j] = field.add(word[j], field.mul(cf, row[j]))
        out.append(tuple(word))
    return out


def weight(word):
    return sum(1 for v in word if v)


def brute_min_distance(field, rows):
    best = None
    for w in brute_codewords(field, rows):
        if not any(w):
            continue
        best = weight(w) if best is None else min(best, weight(w))
    return best


def brute_weight_multiset(field, rows):
    return sorted(weight(w) for w in brute_codewords(field, rows))


def brute_min_outside(field, rows, member):
    best = None
    for w in brute_codewords(field, rows):
        if not any(w) or member(w):
            continue
        best = weight(w) if best is None else min(best, weight(w))
    return best


def brute_matmul(field, A, B):
    m, kk = len(A), len(A[0])
    n = len(B[0])
    out = [[0] * n for _ in range(m)]
    for i in range(m):
        for j in range(n):
            acc = 0
            for t in range(kk):
                acc = field.add(acc, field.mul(int(A[i][t]), int(B[t][j])))
            out[i][j] = acc
    return out
