"""Independent brute-force oracles used by the tests.

None of these share code with the package: they enumerate, count
monomials or expand permutations directly.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


def brute_kernel_size(A, p):
    """Number of vectors v in F_p^n with A v = 0 (exhaustive)."""
    n = len(A[0]) if A else 0
    count = 0
    for v in itertools.product(range(p), repeat=n):
        if all(sum(a * b for a, b in zip(row, v)) % p == 0 for row in A):
            count += 1
    return count


def monomials(d):
    return [(a, b, d - a - b) for a in range(d, -1, -1) for b in range(d - a, -1, -1)]


def divides(m, n):
    return all(a <= b for a, b in zip(m, n))


def monomial_standard(gens, d):
    """Degree-d monomials outside the monomial ideal generated by ``gens``."""
    return [m for m in monomials(d) if not any(divides(g, m) for g in gens)]


def monomial_hilbert(gens, top=60):
    out = []
    for d in range(top):
        h = len(monomial_standard(gens, d))
        if h == 0:
            return out
        out.append(h)
    raise ValueError("not Artinian within range")


def monomial_socle(gens):
    """``{degree: count}`` of standard monomials killed by every variable."""
    soc = {}
    for d, _ in enumerate(monomial_hilbert(gens)):
        for m in monomial_standard(gens, d):
            ups = [tuple(m[k] + (k == v) for k in range(3)) for v in range(3)]
            if all(any(divides(g, u) for g in gens) for u in ups):
                soc[d] = soc.get(d, 0) + 1
    return soc


def minimal_monomial_gens(gens):
    gens = sorted(set(gens), key=sum)
    return [g for i, g in enumerate(gens) if not any(divides(h, g) for h in gens[:i])]


def leibniz_det(M, p=None):
    """Determinant by the permutation expansion (exact)."""
    n = len(M)
    total = Fraction(0) if p is None else 0
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = -1 if inv % 2 else 1
        for i in range(n):
            term *= M[i][perm[i]]
        total += term
    return total % p if p is not None else total


def perfect_matching_pfaffian(M, p):
    """Pfaffian as the signed sum over perfect matchings (crossing-number sign)."""
    n = len(M)

    def matchings(idx):
        if not idx:
            yield []
            return
        a = idx[0]
        for k in range(1, len(idx)):
            b = idx[k]
            rest = idx[1:k] + idx[k + 1:]
            for m in matchings(rest):
                yield [(a, b)] + m

    total = 0
    for match in matchings(tuple(range(n))):
        crossings = sum(
            1 for (a, b), (c, d) in itertools.combinations(match, 2)
            if a < c < b < d or c < a < d < b
        )
        term = -1 if crossings % 2 else 1
        for a, b in match:
            term *= M[a][b]
        total += term
    return total % p
