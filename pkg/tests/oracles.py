"""Brute-force reference computations, written straight from the definitions.

They use only the operation tables (as Python lists) or the open-set family,
never the package's derived structure.
"""

from itertools import product


def lists(B):
    J, M, C = B.tables
    return J.tolist(), M.tolist(), C.tolist()


def leq_table(B):
    J, _, _ = lists(B)
    n = len(J)
    return [[J[x][y] == y for y in range(n)] for x in range(n)]


def atoms(B):
    L = leq_table(B)
    n = len(L)
    zero = B.zero
    return [
        x
        for x in range(n)
        if x != zero and not any(y not in (zero, x) and L[y][x] for y in range(n))
    ]


def is_filter(B, S):
    J, M, C = lists(B)
    L = leq_table(B)
    if not S:
        return False
    for x in S:
        for y in S:
            if M[x][y] not in S:
                return False
        for y in range(len(J)):
            if L[x][y] and y not in S:
                return False
    return True


def all_filters(B):
    n = B.size
    out = []
    for bits in range(1, 1 << n):
        S = {i for i in range(n) if (bits >> i) & 1}
        if is_filter(B, S):
            out.append(frozenset(S))
    return out


def ultrafilters(B):
    _, _, C = lists(B)
    return [
        F
        for F in all_filters(B)
        if B.zero not in F and all((x in F) != (C[x] in F) for x in range(B.size))
    ]


def homs_to_z2(B):
    J, M, C = lists(B)
    n = B.size
    out = []
    for vals in product((0, 1), repeat=n):
        if vals[B.zero] != 0 or vals[B.one] != 1:
            continue
        if all(vals[J[x][y]] == (vals[x] | vals[y]) and vals[M[x][y]] == (vals[x] & vals[y])
               for x in range(n) for y in range(n)):
            out.append(vals)
    return out


def ring_prime_ideals(R):
    A = R.add_table.tolist()
    Mu = R.mul_table.tolist()
    n = R.size
    out = []
    for bits in range(1, 1 << n):
        I = {i for i in range(n) if (bits >> i) & 1}
        if R.one in I:
            continue
        if not all(A[x][y] in I for x in I for y in I):
            continue
        if not all(Mu[r][x] in I for r in range(n) for x in I):
            continue
        if all(x in I or y in I for x in range(n) for y in range(n) if Mu[x][y] in I):
            out.append(frozenset(I))
    return out


def closure(S, opens, full):
    closed = [full ^ u for u in opens]
    out = full
    for c in closed:
        if S & ~c == 0:
            out &= c
    return out


def is_connected_subset(S, opens):
    """No two opens split ``S`` into two nonempty disjoint pieces."""
    for u in opens:
        for v in opens:
            a, b = u & S, v & S
            if a and b and a & b == 0 and a | b == S:
                return False
    return True


def components(n, opens):
    comps = []
    for x in range(n):
        best = 1 << x
        for S in range(1 << n):
            if (S >> x) & 1 and is_connected_subset(S, opens):
                best |= S
        comps.append(best)
    return sorted(set(comps), key=lambda c: (c & -c).bit_length())


def hausdorff(n, opens):
    for x in range(n):
        for y in range(x + 1, n):
            if not any((u >> x) & 1 and (v >> y) & 1 and u & v == 0 for u in opens for v in opens):
                return False
    return True


def continuous(f, opens_x, opens_y):
    ox = set(opens_x)
    for v in opens_y:
        pre = 0
        for p, q in enumerate(f):
            if (v >> q) & 1:
                pre |= 1 << p
        if pre not in ox:
            return False
    return True
