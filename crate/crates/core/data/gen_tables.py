#!/usr/bin/env python3
"""Regenerates the embedded generator tables sz8.grp and psu3_3.grp.

Sz(8): matrices of the Suzuki group acting on column vectors of GF(8)^4,
restricted to the 65 points of the Tits ovoid
    {(0,0,0,1)} u {(1, a, b, a^(2+t) + ab + b^t)},   x^t = x^4.
PSU(3,3): SU(3,3) over GF(9) with the antidiagonal hermitian form
    h(u, v) = u0 v2^3 + u1 v1^3 + u2 v0^3,
acting on its 28 isotropic points.

Both tables are checked by closure: the printed order must be 29120 resp. 6048.
Run from this directory: python3 gen_tables.py
"""
import itertools


class Field:
    def __init__(self, p, poly):
        # poly: coefficients of the monic modulus, low degree first (without leading 1)
        self.p, self.f = p, len(poly)
        self.q = p ** self.f
        self.poly = poly
        self.mul_t = [[self._mul(a, b) for b in range(self.q)] for a in range(self.q)]
        self.add_t = [[self._add(a, b) for b in range(self.q)] for a in range(self.q)]
        self.neg_t = [self._neg(a) for a in range(self.q)]
        self.inv_t = [0] * self.q
        for a in range(1, self.q):
            for b in range(1, self.q):
                if self.mul_t[a][b] == 1:
                    self.inv_t[a] = b

    def digits(self, a):
        return [(a // self.p ** i) % self.p for i in range(self.f)]

    def undigits(self, d):
        return sum(c * self.p ** i for i, c in enumerate(d))

    def _add(self, a, b):
        return self.undigits([(x + y) % self.p for x, y in zip(self.digits(a), self.digits(b))])

    def _neg(self, a):
        return self.undigits([(-x) % self.p for x in self.digits(a)])

    def _mul(self, a, b):
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * self.f)
        for i, x in enumerate(da):
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % self.p
        for k in range(2 * self.f - 1, self.f - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                for i, m in enumerate(self.poly):
                    prod[k - self.f + i] = (prod[k - self.f + i] - c * m) % self.p
        return self.undigits(prod[: self.f])

    def add(self, *xs):
        r = 0
        for x in xs:
            r = self.add_t[r][x]
        return r

    def mul(self, *xs):
        r = 1
        for x in xs:
            r = self.mul_t[r][x]
        return r

    def pow(self, a, e):
        r = 1
        for _ in range(e):
            r = self.mul_t[r][a]
        return r


def normalize(F, v):
    for c in v:
        if c:
            inv = F.inv_t[c]
            return tuple(F.mul(inv, x) for x in v)
    raise ValueError("zero vector")


def apply(F, m, v):
    n = len(v)
    return tuple(F.add(*[F.mul(m[i][j], v[j]) for j in range(n)]) for i in range(n))


def perm_of(F, m, points, index):
    return tuple(index[normalize(F, apply(F, m, pt))] for pt in points)


def closure_order(gens):
    n = len(gens[0])
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = tuple(s[g[i]] for i in range(n))
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return len(seen)


def cycles(perm):
    seen, out = set(), []
    for i in range(len(perm)):
        if i in seen or perm[i] == i:
            continue
        c, j = [], i
        while j not in seen:
            seen.add(j)
            c.append(j)
            j = perm[j]
        out.append("(" + ",".join(map(str, c)) + ")")
    return "".join(out)


def suzuki8():
    F = Field(2, [1, 1, 0])  # x^3 + x + 1
    t = lambda x: F.pow(x, 4)
    points = [(0, 0, 0, 1)]
    for a in range(8):
        for b in range(8):
            top = F.add(F.mul(F.pow(a, 2), t(a)), F.mul(a, b), t(b))
            points.append((1, a, b, top))
    index = {p: i for i, p in enumerate(points)}

    def translation(a, b):
        return [
            [1, 0, 0, 0],
            [a, 1, 0, 0],
            [b, t(a), 1, 0],
            [F.add(F.mul(F.pow(a, 2), t(a)), F.mul(a, b), t(b)), F.add(F.mul(a, t(a)), b), a, 1],
        ]

    w = 2  # primitive element x
    lam = w
    diag = [[F.pow(lam, 3), 0, 0, 0], [0, F.pow(lam, 2), 0, 0],
            [0, 0, F.inv_t[F.pow(lam, 2)], 0], [0, 0, 0, F.inv_t[F.pow(lam, 3)]]]
    anti = [[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]]
    gens = [perm_of(F, translation(1, 0), points, index),
            perm_of(F, diag, points, index),
            perm_of(F, anti, points, index)]
    return 65, gens


def psu33():
    F = Field(3, [1, 0])  # x^2 + 1
    conj = lambda x: F.pow(x, 3)
    vecs = [v for v in itertools.product(range(9), repeat=3) if any(v)]

    def h(u, v):
        return F.add(F.mul(u[0], conj(v[2])), F.mul(u[1], conj(v[1])), F.mul(u[2], conj(v[0])))

    points = sorted({normalize(F, v) for v in vecs if h(v, v) == 0})
    assert len(points) == 28
    index = {p: i for i, p in enumerate(points)}
    basis = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]

    def unitary(m):
        cols = [apply(F, m, e) for e in basis]
        return all(h(cols[i], cols[j]) == h(basis[i], basis[j]) for i in range(3) for j in range(3))

    def det(m):
        (a, b, c), (d, e, f), (g, hh, i) = m
        terms = [F.mul(a, e, i), F.mul(b, f, g), F.mul(c, d, hh),
                 F.neg_t[F.mul(c, e, g)], F.neg_t[F.mul(b, d, i)], F.neg_t[F.mul(a, f, hh)]]
        return F.add(*terms)

    pool = []
    for x, y, z in itertools.product(range(9), repeat=3):
        m = [[1, x, y], [0, 1, z], [0, 0, 1]]
        if unitary(m):
            pool.append(perm_of(F, m, points, index))
    for a, b, c in itertools.product(range(1, 9), repeat=3):
        for m in ([[a, 0, 0], [0, b, 0], [0, 0, c]], [[0, 0, a], [0, b, 0], [c, 0, 0]]):
            if unitary(m) and det(m) == 1:
                pool.append(perm_of(F, m, points, index))
    # greedy: keep a pool element only if it enlarges the group generated so far
    gens, order = [], 1
    for g in pool:
        o = closure_order(gens + [g])
        if o > order:
            gens.append(g)
            order = o
    return 28, gens


def emit(path, degree, gens, expected):
    order = closure_order(gens)
    assert order == expected, (path, order)
    with open(path, "w") as fh:
        fh.write(f"degree {degree}\n")
        for g in gens:
            fh.write(cycles(g) + "\n")
    print(path, "order", order)


if __name__ == "__main__":
    emit("sz8.grp", *suzuki8(), 29120)
    emit("psu3_3.grp", *psu33(), 6048)
