"""Exact integer/rational linear algebra and binary forms.

Everything here works on Python ints and :class:`fractions.Fraction`; no
floating point is used anywhere.  Integer matrices are plain lists of rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]
IntMatrix = list  # list[list[int]], row-major


# ---------------------------------------------------------------------------
# integer matrices
# ---------------------------------------------------------------------------

def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A, B):
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(cols)]
            for i in range(len(A))]


def transpose(A):
    if not A:
        return []
    return [list(r) for r in zip(*A)]


def det(A) -> Rational:
    """Determinant by Bareiss fraction-free elimination (exact)."""
    n = len(A)
    if n == 0:
        return 1
    M, scale = _integerize_rows(A)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    value = sign * M[n - 1][n - 1]
    return Fraction(value, scale) if scale != 1 else value


def _integerize_rows(A):
    """Scale each row to integers; returns (rows, product of scale factors)."""
    rows = []
    total = 1
    for r in A:
        den = reduce(_lcm, (Fraction(x).denominator for x in r), 1)
        rows.append([int(Fraction(x) * den) for x in r])
        total *= den
    return rows, total


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@dataclass(frozen=True)
class SnfResult:
    """``D == U @ A @ V`` with ``U``, ``V`` unimodular and ``D`` diagonal."""

    U: tuple
    D: tuple
    V: tuple

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def snf(A: IntMatrix) -> SnfResult:
    """Smith normal form with transforms.

    Pivot rule: the nonzero entry of smallest absolute value in the remaining
    block, ties broken by row-major order.  Diagonal entries are nonnegative
    and satisfy d1 | d2 | ...
    """
    m = len(A)
    n = len(A[0]) if m else 0
    D = [[int(x) for x in row] for row in A]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):  # row dst += q * row src
        D[dst] = [a + q * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, q):
        for row in D:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if D[i][j] != 0 and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            done = True
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(t, i, -(D[i][t] // D[t][t]))
                    if D[i][t]:
                        done = False
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(t, j, -(D[t][j] // D[t][t]))
                    if D[t][j]:
                        done = False
            if done:
                # enforce divisibility on the remaining block
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if D[i][j] % D[t][t]), None)
                if bad is None:
                    break
                add_row(bad[0], t, 1)
                continue
            # move the smallest nonzero of row/column t onto the pivot
            cands = [(abs(D[i][t]), 0, i) for i in range(t, m) if D[i][t]]
            cands += [(abs(D[t][j]), 1, j) for j in range(t, n) if D[t][j]]
            _, kind, idx = min(cands)
            if kind == 0:
                swap_rows(t, idx)
            else:
                swap_cols(t, idx)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return SnfResult(tuple(map(tuple, U)), tuple(map(tuple, D)), tuple(map(tuple, V)))


def elementary_divisors(A: IntMatrix) -> list[int]:
    return [d for d in snf(A).diagonal if d != 0]


def int_kernel(A: IntMatrix) -> list[list[int]]:
    """Basis of the saturated lattice ``{x in Z^n : A x = 0}``."""
    if not A:
        return []
    n = len(A[0])
    res = snf(A)
    r = res.rank
    return [[res.V[i][j] for i in range(n)] for j in range(r, n)]


def rat_rank(A) -> int:
    """Exact rank over Q (rows scaled to integers, then Bareiss elimination)."""
    if not A or not A[0]:
        return 0
    M, _ = _integerize_rows(A)
    m, n = len(M), len(M[0])
    rank = 0
    prev = 1
    row = 0
    for col in range(n):
        piv = next((i for i in range(row, m) if M[i][col] != 0), None)
        if piv is None:
            continue
        M[row], M[piv] = M[piv], M[row]
        for i in range(row + 1, m):
            for j in range(col + 1, n):
                M[i][j] = (M[i][j] * M[row][col] - M[i][col] * M[row][j]) // prev
            M[i][col] = 0
        prev = M[row][col]
        row += 1
        rank += 1
        if row == m:
            break
    return rank


def rat_kernel_dim(A, cols: int | None = None) -> int:
    n = cols if cols is not None else (len(A[0]) if A else 0)
    return n - rat_rank(A)


def rat_solve(A, b) -> list[Fraction] | None:
    """Solve a square nonsingular rational system ``A x = b``; None if singular."""
    n = len(A)
    M = [[Fraction(x) for x in A[i]] + [Fraction(b[i])] for i in range(n)]
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c] != 0), None)
        if p is None:
            return None
        M[c], M[p] = M[p], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for i in range(n):
            if i != c and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return [M[i][n] for i in range(n)]


# ---------------------------------------------------------------------------
# univariate helpers (coefficient lists, index = power)
# ---------------------------------------------------------------------------

def _strip(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a, b):
    a = [Fraction(x) for x in a]
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = Fraction(b[-1])
    while len(a) >= len(b) and a:
        c = a[-1] / lead
        k = len(a) - len(b)
        q[k] = c
        for i, x in enumerate(b):
            a[k + i] -= c * x
        a = _strip(a)
    return _strip(q), a


def _poly_gcd(a, b):
    a, b = _strip(a), _strip(b)
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    if not a:
        return []
    lead = Fraction(a[-1])
    return [Fraction(x) / lead for x in a]


# ---------------------------------------------------------------------------
# binary forms
# ---------------------------------------------------------------------------

class BinaryForm:
    """Homogeneous form in ``s, t``.

    ``coeffs[i]`` is the coefficient of ``s**i * t**(degree - i)``.  The
    identically-zero form is the singleton :data:`ZERO`, which has no degree
    and is compatible with every degree.
    """

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree: int | None, coeffs: Iterable[Rational] = ()):
        coeffs = tuple(Fraction(c) for c in coeffs)
        if degree is None or not any(coeffs):
            degree, coeffs = None, ()
        elif len(coeffs) != degree + 1:
            raise ValueError(f"degree {degree} form needs {degree + 1} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, *_):
        raise AttributeError("BinaryForm is immutable")

    # constructors -------------------------------------------------------
    @classmethod
    def constant(cls, c: Rational) -> "BinaryForm":
        return cls(0, [c])

    @classmethod
    def monomial(cls, i: int, j: int, c: Rational = 1) -> "BinaryForm":
        """``c * s**i * t**j``."""
        coeffs = [0] * (i + j + 1)
        coeffs[i] = c
        return cls(i + j, coeffs)

    @property
    def is_zero(self) -> bool:
        return self.degree is None

    def __bool__(self):
        return not self.is_zero

    def __eq__(self, other):
        if isinstance(other, BinaryForm):
            return self.degree == other.degree and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.degree, self.coeffs))

    def __repr__(self):
        if self.is_zero:
            return "ZERO"
        return f"BinaryForm({self.degree}, {[str(c) for c in self.coeffs]})"

    def __str__(self):
        if self.is_zero:
            return "0"
        terms = []
        d = self.degree
        for i in range(d, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "*".join(p for p in (_pw("s", i), _pw("t", d - i)) if p)
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")

    # arithmetic ---------------------------------------------------------
    def __add__(self, other: "BinaryForm") -> "BinaryForm":
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.degree != other.degree:
            raise ValueError(f"cannot add forms of degree {self.degree} and {other.degree}")
        return BinaryForm(self.degree, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: Rational) -> "BinaryForm":
        if self.is_zero or c == 0:
            return ZERO
        return BinaryForm(self.degree, [c * x for x in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, BinaryForm):
            return self.scale(other)
        if self.is_zero or other.is_zero:
            return ZERO
        out = [Fraction(0)] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return BinaryForm(self.degree + other.degree, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "BinaryForm":
        result = ONE
        for _ in range(k):
            result = result * self
        return result

    def __call__(self, s: Rational, t: Rational) -> Fraction:
        if self.is_zero:
            return Fraction(0)
        d = self.degree
        return sum((c * Fraction(s) ** i * Fraction(t) ** (d - i)
                    for i, c in enumerate(self.coeffs) if c), Fraction(0))

    def compose(self, a: "BinaryForm", b: "BinaryForm") -> "BinaryForm":
        """``self(a, b)``: substitute ``s -> a``, ``t -> b``."""
        if self.is_zero:
            return ZERO
        d = self.degree
        total = ZERO
        for i, c in enumerate(self.coeffs):
            if c:
                total = total + (a ** i) * (b ** (d - i)) * c
        return total

    def partials(self) -> tuple["BinaryForm", "BinaryForm"]:
        """``(d/ds, d/dt)``; both of degree ``degree - 1`` (or ZERO)."""
        if self.is_zero or self.degree == 0:
            return ZERO, ZERO
        d = self.degree
        ds = BinaryForm(d - 1, [i * self.coeffs[i] for i in range(1, d + 1)])
        dt = BinaryForm(d - 1, [(d - i) * self.coeffs[i] for i in range(d)])
        return ds, dt

    def vector(self, degree: int) -> list[Fraction]:
        """Coefficient vector of length ``degree + 1`` (zeros for ZERO)."""
        if self.is_zero:
            return [Fraction(0)] * (degree + 1)
        if self.degree != degree:
            raise ValueError(f"expected degree {degree}, got {self.degree}")
        return list(self.coeffs)

    def valuations(self) -> tuple[int, int]:
        """Multiplicities of the factors ``s`` and ``t``."""
        if self.is_zero:
            raise ValueError("ZERO has no valuations")
        lo = next(i for i, c in enumerate(self.coeffs) if c)
        hi = max(i for i, c in enumerate(self.coeffs) if c)
        return lo, self.degree - hi

    def is_power_of(self, var: str) -> bool:
        """True for nonzero ``c * s**k`` (var='s') or ``c * t**k`` (var='t')."""
        if self.is_zero:
            return False
        nz = [i for i, c in enumerate(self.coeffs) if c]
        if len(nz) != 1:
            return False
        return nz[0] == (self.degree if var == "s" else 0)


def _pw(v, k):
    if k == 0:
        return ""
    return v if k == 1 else f"{v}^{k}"


ZERO = BinaryForm(None)
ONE = BinaryForm(0, [1])
S = BinaryForm(1, [0, 1])
T = BinaryForm(1, [1, 0])


def bf_arith(op: str, f: BinaryForm, g) -> BinaryForm:
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "scale":
        return f.scale(g)
    raise ValueError(f"unknown operation {op!r}")


def bf_gcd_set(forms: Sequence[BinaryForm]) -> BinaryForm:
    """Monic gcd over Q of a family of binary forms (ZERO entries ignored).

    The powers of ``s`` and ``t`` are split off first; the remaining parts
    are dehomogenized at ``t = 1`` and handled by a univariate Euclidean gcd.
    The result is normalized so that its highest nonzero ``s``-power has
    coefficient 1; it equals ``ONE`` iff the forms share no projective root.
    """
    live = [f for f in forms if not f.is_zero]
    if not live:
        raise ValueError("gcd of ZERO forms is undefined")
    vs = min(f.valuations()[0] for f in live)
    vt = min(f.valuations()[1] for f in live)
    g = None
    for f in live:
        lo, tv = f.valuations()
        hi = f.degree - tv
        # univariate in x = s/t, stripped of s and t factors
        u = list(f.coeffs[lo:hi + 1])
        g = u if g is None else _poly_gcd(g, u)
        if len(g) == 1:
            break
    g = _poly_gcd(g, g)  # monic
    k = len(g) - 1
    core = BinaryForm(k, g)
    return core * BinaryForm.monomial(vs, vt)


def bf_partials(f: BinaryForm) -> tuple[BinaryForm, BinaryForm]:
    return f.partials()


def bf_resultant(f: BinaryForm, g: BinaryForm) -> Fraction:
    """Homogeneous resultant via the Sylvester determinant."""
    if f.is_zero or g.is_zero:
        return Fraction(0)
    m, n = f.degree, g.degree
    size = m + n
    if size == 0:
        return Fraction(1)
    rows = []
    # coefficients ordered by descending s-power
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    for i in range(n):
        rows.append([0] * i + fc + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gc + [0] * (size - n - 1 - i))
    return Fraction(det(rows))


def forms_rank(forms: Sequence[BinaryForm], degree: int) -> int:
    """Dimension of the Q-span of forms of a common degree."""
    return rat_rank([f.vector(degree) for f in forms]) if forms else 0


def parse_rational(x) -> Fraction:
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(x)


def format_rational(x: Rational) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
