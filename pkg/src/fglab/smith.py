"""Exact integer linear algebra: Smith normal form, lattice bases and kernels.

Matrices are lists of rows of Python ints.  Lattices are spanned by the
columns of a matrix.
"""
from __future__ import annotations


def zeros(n, m):
    return [[0] * m for _ in range(n)]


def identity(n):
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = 1
    return out


def transpose(A, ncols=None):
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def matmul(A, B, mod=None):
    if not A or not B:
        return zeros(len(A), len(B[0]) if B else 0)
    Bt = transpose(B)
    out = []
    for row in A:
        nz = [(k, a) for k, a in enumerate(row) if a]
        r = []
        for col in Bt:
            s = 0
            for k, a in nz:
                b = col[k]
                if b:
                    s += a * b
            r.append(s % mod if mod else s)
        out.append(r)
    return out


def is_zero_matrix(A, mod=None):
    if mod:
        return all(x % mod == 0 for row in A for x in row)
    return all(x == 0 for row in A for x in row)


def smith_diagonal(A):
    """Invariant factors d_1 | d_2 | ... (positive, zeros dropped) of an integer matrix."""
    M = [list(r) for r in A]
    n = len(M)
    m = len(M[0]) if n else 0
    diag = []
    t = 0
    while t < min(n, m):
        # pivot: smallest nonzero absolute value in the remaining block
        best = None
        for i in range(t, n):
            row = M[i]
            for j in range(t, m):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        M[t], M[i] = M[i], M[t]
        if j != t:
            for row in M:
                row[t], row[j] = row[j], row[t]
        while True:
            p = M[t][t]
            done = True
            # clear column t
            for i in range(t + 1, n):
                x = M[i][t]
                if x:
                    q = x // p
                    ri, rt = M[i], M[t]
                    for j in range(t, m):
                        if rt[j]:
                            ri[j] -= q * rt[j]
                    if ri[t]:
                        done = False
            # clear row t
            rt = M[t]
            for j in range(t + 1, m):
                x = rt[j]
                if x:
                    q = x // p
                    for i in range(t, n):
                        if M[i][t]:
                            M[i][j] -= q * M[i][t]
                    if rt[j]:
                        done = False
            if done:
                # divisibility: p must divide every remaining entry
                bad = None
                for i in range(t + 1, n):
                    for j in range(t + 1, m):
                        if M[i][j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                for j in range(t, m):
                    M[t][j] += M[bad][j]
                continue
            # move the smallest entry of row/column t to the pivot
            best = (abs(M[t][t]), t, t)
            for i in range(t + 1, n):
                x = M[i][t]
                if x and abs(x) < best[0]:
                    best = (abs(x), i, t)
            for j in range(t + 1, m):
                x = M[t][j]
                if x and abs(x) < best[0]:
                    best = (abs(x), t, j)
            _, i, j = best
            if i != t:
                M[t], M[i] = M[i], M[t]
            if j != t:
                for row in M:
                    row[t], row[j] = row[j], row[t]
        diag.append(abs(M[t][t]))
        t += 1
    return diag


def rank(A):
    return len(smith_diagonal(A))


def column_echelon(G, track=False):
    """Column-reduce an n x k integer matrix.

    Returns (E, V, pivots): E = G V with the nonzero columns of E first, each
    with a positive pivot in a strictly increasing row; V unimodular (only
    when ``track``).  The nonzero columns of E are a basis of the lattice
    spanned by the columns of G; the columns of V past the pivots span the
    integer kernel of G.
    """
    n = len(G)
    k = len(G[0]) if n else 0
    cols = [[G[i][j] for i in range(n)] for j in range(k)]
    vcols = [[1 if i == j else 0 for i in range(k)] for j in range(k)] if track else None
    pivots = []
    c = 0
    for r in range(n):
        if c >= k:
            break
        while True:
            nz = [j for j in range(c, k) if cols[j][r]]
            if not nz:
                break
            j = min(nz, key=lambda j: abs(cols[j][r]))
            cols[c], cols[j] = cols[j], cols[c]
            if track:
                vcols[c], vcols[j] = vcols[j], vcols[c]
            pc = cols[c]
            p = pc[r]
            again = False
            for j in range(c + 1, k):
                x = cols[j][r]
                if x:
                    q = x // p
                    cj = cols[j]
                    for i in range(r, n):
                        if pc[i]:
                            cj[i] -= q * pc[i]
                    if track:
                        vj, vc = vcols[j], vcols[c]
                        for i in range(k):
                            if vc[i]:
                                vj[i] -= q * vc[i]
                    if cj[r]:
                        again = True
            if not again:
                if p < 0:
                    cols[c] = [-x for x in pc]
                    if track:
                        vcols[c] = [-x for x in vcols[c]]
                # reduce earlier pivot columns modulo this one (Hermite form)
                p = cols[c][r]
                for j in range(c):
                    x = cols[j][r]
                    q = x // p
                    if q:
                        cj, pc = cols[j], cols[c]
                        for i in range(r, n):
                            if pc[i]:
                                cj[i] -= q * pc[i]
                        if track:
                            vj, vc = vcols[j], vcols[c]
                            for i in range(k):
                                if vc[i]:
                                    vj[i] -= q * vc[i]
                pivots.append(r)
                c += 1
                break
    E = transpose(cols, n) if cols else zeros(n, 0)
    V = transpose(vcols, k) if track and vcols else (zeros(k, 0) if track else None)
    return E, V, pivots


def lattice_basis(G):
    """Columns forming a basis (Hermite form) of the lattice spanned by the columns of G."""
    E, _, piv = column_echelon(G)
    return [row[: len(piv)] for row in E], piv


def kernel_basis(A, ncols=None):
    """Basis (as columns) of {x in Z^m : A x = 0}."""
    m = len(A[0]) if A else (ncols or 0)
    if not A:
        return identity(m)
    _, V, piv = column_echelon(A, track=True)
    return [row[len(piv):] for row in V]


def solve_in_lattice(B, piv, v):
    """Integer x with B x = v for a Hermite basis (B, piv), or None if v is not in the lattice."""
    n = len(v)
    v = list(v)
    x = [0] * len(piv)
    for c, r in enumerate(piv):
        if v[r] % B[r][c]:
            return None
        q = v[r] // B[r][c]
        x[c] = q
        if q:
            for i in range(r, n):
                if B[i][c]:
                    v[i] -= q * B[i][c]
    if any(v):
        return None
    return x


def columns(A):
    return [list(c) for c in zip(*A)] if A and A[0] else []


def quotient_invariants(L_gens, I_gens, n):
    """Invariant factors of L / I for lattices I <= L <= Z^n given by generators (as columns).

    Returns (free_rank, factors): factors are the invariant factors > 1,
    free_rank counts the Z summands.
    """
    if L_gens and L_gens[0]:
        B, piv = lattice_basis(L_gens)
    else:
        B, piv = zeros(n, 0), []
    coords = []
    for g in (columns(I_gens) if I_gens and I_gens[0] else []):
        x = solve_in_lattice(B, piv, g)
        if x is None:
            raise ArithmeticError("sublattice generator outside the lattice")
        coords.append(x)
    r = len(piv)
    if not coords:
        return r, []
    X = transpose(coords, r)
    d = smith_diagonal(X)
    return r - len(d), [x for x in d if x != 1]
