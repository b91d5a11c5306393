"""Partition combinatorics for Schur functors."""
from functools import lru_cache
from math import comb, prod


class Partition(tuple):
    """Weakly decreasing tuple of nonnegative ints with trailing zeros trimmed."""

    def __new__(cls, parts=()):
        parts = [int(p) for p in parts]
        if any(p < 0 for p in parts):
            raise ValueError(f"negative part in {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"{parts} is not weakly decreasing")
        while parts and parts[-1] == 0:
            parts.pop()
        return super().__new__(cls, parts)

    @property
    def size(self):
        return sum(self)

    def __repr__(self):
        return f"Partition({list(self)})"

    def padded(self, n):
        if len(self) > n:
            raise ValueError(f"{self} has more than {n} parts")
        return tuple(self) + (0,) * (n - len(self))


def parse_partition(text):
    """``"2,2,1"`` or ``"221"`` (single digits) -> Partition."""
    text = str(text).strip().strip("()[]")
    if not text or text == "0":
        return Partition()
    if "," in text:
        return Partition(int(p) for p in text.split(","))
    return Partition(int(c) for c in text)


def conjugate(lam):
    lam = Partition(lam)
    if not lam:
        return Partition()
    return Partition(sum(1 for p in lam if p > j) for j in range(lam[0]))


def partitions_of(n, max_part=None, max_len=None):
    """All partitions of n in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if max_len is None:
        max_len = n
    out = []

    def rec(rest, cap, acc):
        if rest == 0:
            out.append(Partition(acc))
            return
        if len(acc) == max_len:
            return
        for p in range(min(rest, cap), 0, -1):
            rec(rest - p, p, acc + [p])

    rec(n, max_part, [])
    return out


def schur_dim(lam, n):
    """dim S_lam C^n by the hook-content formula.

    >>> schur_dim((2, 2, 2, 1, 1, 1), 6)
    20
    """
    lam = Partition(lam)
    if len(lam) > n:
        return 0
    lamc = conjugate(lam)
    num = 1
    den = 1
    for i, row in enumerate(lam):
        for j in range(row):
            num *= n + j - i
            den *= (row - j - 1) + (lamc[j] - i - 1) + 1
    return num // den


def gl_weyl_dim(weight):
    """Dimension of the GL_n module with weakly decreasing integer weight (may be negative)."""
    w = list(weight)
    n = len(w)
    num = prod(w[i] - w[j] + j - i for i in range(n) for j in range(i + 1, n))
    den = prod(j - i for i in range(n) for j in range(i + 1, n))
    return num // den


def _skew_rows(nu, lam):
    return [n - (lam[i] if i < len(lam) else 0) for i, n in enumerate(nu)]


@lru_cache(maxsize=None)
def _lr(lam, mu, nu):
    if len(lam) > len(nu) or any(l > n for l, n in zip(lam, nu)):
        return 0
    rows = _skew_rows(nu, lam)
    start = [lam[i] if i < len(lam) else 0 for i in range(len(nu))]
    # fill skew shape row by row, right to left, keeping a lattice word
    count = 0
    filling = [[0] * r for r in rows]
    used = [0] * (len(mu) + 1)

    def place(r, c):
        nonlocal count
        if r == len(rows):
            if all(used[k + 1] == mu[k] for k in range(len(mu))):
                count += 1
            return
        if c < 0:
            place(r + 1, rows[r + 1] - 1 if r + 1 < len(rows) else 0)
            return
        col = start[r] + c
        lo = 1
        if c + 1 < rows[r]:
            hi = filling[r][c + 1]
        else:
            hi = len(mu)
        if r > 0:
            above_start = start[r - 1]
            ac = col - above_start
            if 0 <= ac < rows[r - 1]:
                lo = filling[r - 1][ac] + 1
        for v in range(lo, hi + 1):
            if used[v] >= mu[v - 1]:
                continue
            if v > 1 and used[v] + 1 > used[v - 1]:
                continue
            filling[r][c] = v
            used[v] += 1
            place(r, c - 1)
            used[v] -= 1
        filling[r][c] = 0

    if rows:
        place(0, rows[0] - 1)
    else:
        count = 1 if not mu else 0
    return count


def lr_coefficient(lam, mu, nu):
    """Littlewood-Richardson coefficient c^nu_{lam, mu}.

    Enumerates semistandard fillings of nu/lam with content mu whose reverse
    reading word is a lattice word.

    >>> lr_coefficient((1,), (1, 1), (2, 1))
    1
    """
    lam, mu, nu = Partition(lam), Partition(mu), Partition(nu)
    if lam.size + mu.size != nu.size:
        return 0
    return _lr(tuple(lam), tuple(mu), tuple(nu))


def lr_product(lam, mu, max_len=None):
    """S_lam tensor S_mu as a dict {nu: multiplicity}."""
    lam, mu = Partition(lam), Partition(mu)
    total = lam.size + mu.size
    out = {}
    for nu in partitions_of(total, max_len=max_len):
        c = lr_coefficient(lam, mu, nu)
        if c:
            out[nu] = c
    return out


def cauchy_exterior(j, a, b):
    """Decomposition of wedge^j(A tensor B), dim A = a, dim B = b.

    Returns (lam, lam', multiplicity) with S_lam A tensor S_lam' B, keeping
    only lam with at most a rows and lam_1 at most b.
    """
    if j < 0:
        raise ValueError("j must be nonnegative")
    out = []
    for lam in partitions_of(j, max_part=b, max_len=a):
        out.append((lam, conjugate(lam), 1))
    return out


def cauchy_rank(j, a, b):
    return sum(m * schur_dim(l, a) * schur_dim(lc, b) for l, lc, m in cauchy_exterior(j, a, b))


def binomial(n, k):
    return comb(n, k) if 0 <= k <= n else 0
