"""Independent reference computations used as test oracles.

Nothing here calls into the package's fast paths: set systems are plain
lists of frozensets and ribbon graphs are read only through their
rotation words.
"""

from itertools import combinations


def powerset(ground):
    s = list(ground)
    for r in range(len(s) + 1):
        yield from (frozenset(c) for c in combinations(s, r))


def naive_width(family):
    sizes = [len(x) for x in family]
    return max(sizes) - min(sizes)


def naive_twist(family, A):
    return {x ^ A for x in family}


def naive_max_twist_width(n, family):
    return max(naive_width(naive_twist(family, A)) for A in powerset(range(1, n + 1)))


def naive_axiom(family):
    fam = set(family)
    for X in fam:
        for Y in fam:
            for u in X ^ Y:
                if not any(X ^ {u, v} in fam for v in X ^ Y):
                    return False
    return True


def gf2_rank(rows):
    """Rank over GF(2) of a matrix given as a list of int bit-rows."""
    rows = [r for r in rows]
    rank = 0
    width = max((r.bit_length() for r in rows), default=0)
    for bit in range(width):
        pivot = next((i for i in range(rank, len(rows)) if rows[i] >> bit & 1), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i] >> bit & 1:
                rows[i] ^= rows[rank]
        rank += 1
    return rank


def bouquet_matrix(word, twisted):
    """Interlacement matrix of a one-vertex rotation word (1-based labels).

    Off-diagonal entry (a, b) is 1 when the ends of loops a and b
    alternate around the vertex; the diagonal carries the twist flags.
    """
    pos = {}
    for i, label in enumerate(word):
        pos.setdefault(label, []).append(i)
    labels = sorted(pos)
    m = {a: {b: 0 for b in labels} for a in labels}
    for a in labels:
        m[a][a] = 1 if a in twisted else 0
        for b in labels:
            if a == b:
                continue
            a0, a1 = pos[a]
            inside = sum(a0 < p < a1 for p in pos[b])
            m[a][b] = 1 if inside == 1 else 0
    return labels, m


def bouquet_feasible(word, twisted):
    """Feasible sets of a bouquet: principal submatrices that are nonsingular."""
    labels, m = bouquet_matrix(word, twisted)
    out = set()
    for A in powerset(labels):
        idx = sorted(A)
        rows = [sum(m[a][b] << j for j, b in enumerate(idx)) for a in idx]
        if gf2_rank(rows) == len(idx):
            out.add(A)
    return out


def bouquet_genus(word, twisted):
    labels, m = bouquet_matrix(word, twisted)
    rows = [sum(m[a][b] << j for j, b in enumerate(labels)) for a in labels]
    return gf2_rank(rows)
