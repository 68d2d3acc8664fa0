"""Slow, independent reference computations used to cross-check the library.

Nothing here calls into the vectorized paths of the package: field
arithmetic is schoolbook polynomial arithmetic, spans are enumerated
explicitly, and root counts loop over points one at a time.
"""

import itertools


def poly_mulmod(a, b, p, modulus):
    """Product of coefficient lists (low to high) modulo a monic modulus given high to low."""
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    low = list(reversed(modulus))  # low to high, leading 1 last
    e = len(low) - 1
    for k in range(len(prod) - 1, e - 1, -1):
        c = prod[k]
        if c:
            for i in range(e + 1):
                prod[k - e + i] = (prod[k - e + i] - c * low[i]) % p
    out = prod[:e] + [0] * max(0, e - len(prod))
    return out


def code_to_digits(v, p, e):
    return [(v // p**i) % p for i in range(e)]


def digits_to_code(d, p):
    return sum(c * p**i for i, c in enumerate(d))


def ext_mul(a, b, p, e, modulus):
    return digits_to_code(poly_mulmod(code_to_digits(a, p, e), code_to_digits(b, p, e), p, modulus), p)


def ext_add(a, b, p, e):
    return digits_to_code([(x + y) % p for x, y in zip(code_to_digits(a, p, e), code_to_digits(b, p, e))], p)


def mu_naive(monos):
    m = len(monos[0])
    top = [max(M[j] for M in monos) for j in range(m)]
    return sum(
        1
        for N in itertools.product(*(range(t + 1) for t in top))
        if any(all(a <= b for a, b in zip(N, M)) for M in monos)
    )


def sigma_naive(caps, monos):
    return sum(
        1
        for N in itertools.product(*(range(c) for c in caps))
        if any(all(a <= b for a, b in zip(M, N)) for M in monos)
    )


def eval_scalar(F, poly, point):
    """Evaluate term by term with scalar field operations."""
    acc = F.zero
    for M, c in poly.terms.items():
        t = c
        for x, a in zip(point, M):
            for _ in range(a):
                t = F.mul(t, x)
        acc = F.add(acc, t)
    return acc


def common_roots(F, polys, points):
    return sum(1 for P in points if all(eval_scalar(F, f, P) == 0 for f in polys))


def span(F, rows, n):
    """Every vector in the span, as a set of tuples."""
    rows = [tuple(int(x) for x in r) for r in rows]
    out = set()
    for coefs in itertools.product(range(F.q), repeat=len(rows)):
        v = [0] * n
        for c, r in zip(coefs, rows):
            for i in range(n):
                v[i] = F.add(v[i], F.mul(c, r[i]))
        out.add(tuple(v))
    return out


def rank_by_span(F, rows, n):
    size = len(span(F, rows, n))
    k = 0
    while F.q**k < size:
        k += 1
    return k


def rghw_naive(F, C1_rows, C2_rows, n, k):
    """M_k(C1, C2) by trying every k-tuple of codewords of C1."""
    words = sorted(span(F, C1_rows, n))
    c2 = span(F, C2_rows, n) if len(C2_rows) else {tuple([0] * n)}
    zero = tuple([0] * n)
    best = None
    for tup in itertools.combinations([w for w in words if w != zero], k):
        D = span(F, tup, n)
        if len(D) != F.q**k:
            continue
        if len(D & c2) != 1:
            continue
        w = sum(1 for i in range(n) if any(v[i] for v in tup))
        if best is None or w < best:
            best = w
    return best


def forney_dims_naive(p, rows, n, A):
    """Dimensions entering both duality identities, by enumeration over GF(p)."""
    q = p
    rows = [[int(x) for x in r] for r in rows]
    words = set()
    for coefs in itertools.product(range(q), repeat=len(rows)):
        words.add(tuple(sum(c * r[i] for c, r in zip(coefs, rows)) % q for i in range(n)))

    def log(size):
        k = 0
        while q**k < size:
            k += 1
        return k

    Aset = set(A)
    dual_on_A = 0
    for v in itertools.product(range(q), repeat=len(A)):
        if all(sum(x * r[i] for x, i in zip(v, A)) % q == 0 for r in rows):
            dual_on_A += 1
    return {
        "dim_C": log(len(words)),
        "dim_C_Abar": log(sum(1 for w in words if all(w[i] == 0 for i in Aset))),
        "dim_P_A": log(len({tuple(w[i] for i in A) for w in words})),
        "dim_Cdual_A": log(dual_on_A),
    }
