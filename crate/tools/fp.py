"""Dense linear algebra over a prime field."""


class Mat:
    """An r x c matrix stored row-major; shapes with a zero side are fine."""

    def __init__(self, r, c, data=None):
        self.r, self.c = r, c
        self.data = list(data) if data is not None else [0] * (r * c)
        assert len(self.data) == r * c

    @staticmethod
    def from_rows(rows, c):
        return Mat(len(rows), c, [x for row in rows for x in row])

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i * self.c + j]

    def __setitem__(self, ij, v):
        i, j = ij
        self.data[i * self.c + j] = v

    def __eq__(self, other):
        return (self.r, self.c, self.data) == (other.r, other.c, other.data)

    def rows(self):
        return [self.data[i * self.c:(i + 1) * self.c] for i in range(self.r)]

    def is_zero(self):
        return not any(self.data)


class Field:
    def __init__(self, p):
        if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not a prime")
        self.p = p

    def inv(self, a):
        return pow(a % self.p, self.p - 2, self.p)

    def eye(self, n):
        return Mat(n, n, [int(i == j) for i in range(n) for j in range(n)])

    def mul(self, a, b):
        assert a.c == b.r, (a.r, a.c, b.r, b.c)
        out = Mat(a.r, b.c)
        for i in range(a.r):
            for t in range(a.c):
                x = a[i, t]
                if x:
                    for j in range(b.c):
                        out.data[i * b.c + j] = (out.data[i * b.c + j] + x * b[t, j]) % self.p
        return out

    def add(self, a, b):
        assert (a.r, a.c) == (b.r, b.c)
        return Mat(a.r, a.c, [(x + y) % self.p for x, y in zip(a.data, b.data)])

    def scale(self, s, a):
        return Mat(a.r, a.c, [(s * x) % self.p for x in a.data])

    def apply(self, a, v):
        return [sum(a[i, j] * v[j] for j in range(a.c)) % self.p for i in range(a.r)]

    def rref(self, rows, ncols):
        m = [list(row) for row in rows]
        pivots = []
        r = 0
        for c in range(ncols):
            pr = next((i for i in range(r, len(m)) if m[i][c] % self.p), None)
            if pr is None:
                continue
            m[r], m[pr] = m[pr], m[r]
            iv = self.inv(m[r][c])
            m[r] = [(x * iv) % self.p for x in m[r]]
            for i in range(len(m)):
                if i != r and m[i][c] % self.p:
                    f = m[i][c]
                    m[i] = [(x - f * y) % self.p for x, y in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
        return m[:r], pivots

    def rank(self, a):
        return len(self.rref(a.rows(), a.c)[1])

    def nullspace(self, rows, ncols):
        """Basis of {x : rows . x = 0}; one vector per free column, free entry 1."""
        red, pivots = self.rref(rows, ncols)
        basis = []
        for f in range(ncols):
            if f in pivots:
                continue
            v = [0] * ncols
            v[f] = 1
            for row, pc in zip(red, pivots):
                v[pc] = (-row[f]) % self.p
            basis.append(v)
        return basis

    def solve(self, rows, ncols, b):
        """One solution of rows . x = b, or None."""
        aug = [list(row) + [bi % self.p] for row, bi in zip(rows, b)]
        red, pivots = self.rref(aug, ncols + 1)
        if ncols in pivots:
            return None
        x = [0] * ncols
        for row, pc in zip(red, pivots):
            x[pc] = row[ncols]
        return x

    def coords(self, basis, v):
        """Coordinates of v in terms of `basis`, or None if v is not in the span."""
        rows = [[b[i] for b in basis] for i in range(len(v))]
        return self.solve(rows, len(basis), v)

    def vectors(self, k):
        """All vectors of length k, lexicographic."""
        if k == 0:
            yield []
            return
        for head in range(self.p):
            for tail in self.vectors(k - 1):
                yield [head] + tail
