"""Prime-field arithmetic, no-swap row echelon forms and univariate roots.

Field elements are plain Python ints in ``[0, p)``.  Matrices are numpy
``float64`` arrays holding canonical representatives: every value below
2**31 is exact in a double, and products are accumulated through BLAS
whenever the inner dimension keeps the sum under 2**53.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from sympy import isprime

DEFAULT_PRIME = 65521

_EXACT = float(2**53)
_BASE_ROWS = 24
_SCAN_CHUNK = 1 << 20


def check_prime(p: int) -> int:
    if not (2 < p < 2**31) or not isprime(p):
        raise ValueError(f"modulus must be an odd prime below 2**31, got {p}")
    return p


def inv(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError("zero has no inverse modulo p")
    return pow(a, -1, p)


def reduce_mod(X: np.ndarray, p: int) -> np.ndarray:
    """Canonical residues of a float64 array of integers below 2**53 in magnitude."""
    Q = np.floor(X * (1.0 / p))
    Q *= p
    R = X - Q
    # the quotient estimate is off by at most one
    R += (R < 0) * float(p)
    R -= (R >= p) * float(p)
    return R


def mulmod(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    """Return ``A @ B mod p`` for canonical float64 matrices."""
    k = A.shape[1]
    if k == 0:
        return np.zeros((A.shape[0], B.shape[1]))
    if k * float(p - 1) ** 2 < _EXACT:
        return reduce_mod(A @ B, p)
    # large primes: exact integer arithmetic, slow but correct
    C = A.astype(np.int64).astype(object) @ B.astype(np.int64).astype(object)
    return np.array(C % p, dtype=np.float64).reshape(A.shape[0], B.shape[1])


def submod(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    C = A - B
    C += (C < 0) * float(p)
    return C


def as_field_matrix(rows, p: int) -> np.ndarray:
    M = np.asarray(rows, dtype=object)
    if M.ndim == 1:
        M = M.reshape(1, -1) if M.size else M.reshape(0, 0)
    return np.array(M % p, dtype=np.float64)


def _echelon_small(R: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    E = R.copy()
    piv = np.full(E.shape[0], -1, dtype=np.int64)
    done: list[int] = []
    for j in range(E.shape[0]):
        row = E[j]
        if done:
            cols = piv[done]
            coef = row[cols]
            if coef.any():
                row = submod(row, reduce_mod(coef @ E[done], p), p)
        nz = np.flatnonzero(row)
        if nz.size == 0:
            E[j] = 0.0
            continue
        c = int(nz[0])
        row = reduce_mod(row * inv(int(row[c]), p), p)
        E[j] = row
        if done:
            above = E[done, c]
            if above.any():
                E[done] = submod(E[done], reduce_mod(np.outer(above, row), p), p)
        piv[j] = c
        done.append(j)
    return E, piv


def _echelon_rec(R: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    k = R.shape[0]
    if k <= _BASE_ROWS:
        return _echelon_small(R, p)
    h = k // 2
    top, tpiv = _echelon_rec(R[:h], p)
    tnz = np.flatnonzero(tpiv >= 0)
    bottom = R[h:]
    if tnz.size:
        bottom = submod(bottom, mulmod(bottom[:, tpiv[tnz]], top[tnz], p), p)
    bottom, bpiv = _echelon_rec(bottom, p)
    bnz = np.flatnonzero(bpiv >= 0)
    if tnz.size and bnz.size:
        T = top[tnz]
        top[tnz] = submod(T, mulmod(T[:, bpiv[bnz]], bottom[bnz], p), p)
    return np.vstack([top, bottom]), np.concatenate([tpiv, bpiv])


@dataclass
class EchelonForm:
    matrix: np.ndarray
    pivots: list[int]
    rank: int
    zero_labels: list


def echelonize(M, p: int = DEFAULT_PRIME, labels: Sequence | None = None) -> EchelonForm:
    """Reduced row echelon form computed without row exchanges.

    Row ``i`` of the result is row ``i`` of the input minus a combination
    of earlier rows, normalised to a leading 1, then cleared above and
    below in every pivot column.  ``pivots[i]`` is ``-1`` for rows that
    reduced to zero; their labels are returned in ``zero_labels``.
    """
    A = M if isinstance(M, np.ndarray) and M.dtype == np.float64 else as_field_matrix(M, p)
    if labels is None:
        labels = list(range(A.shape[0]))
    if A.shape[0] == 0:
        return EchelonForm(A.copy(), [], 0, [])
    E, piv = _echelon_rec(A, p)
    pivots = [int(c) for c in piv]
    zero = [labels[i] for i, c in enumerate(pivots) if c < 0]
    return EchelonForm(E, pivots, len(pivots) - len(zero), zero)


@dataclass
class EchelonBasis:
    """Incrementally grown reduced echelon basis of a row space.

    New rows are reduced against the stored basis (never the reverse
    order), so each appended row keeps the leading column it has modulo
    the rows that came before it.
    """

    ncols: int
    p: int
    rows: np.ndarray = field(init=False)
    pivots: list[int] = field(default_factory=list)

    def __post_init__(self):
        self.rows = np.zeros((0, self.ncols))

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def add(self, R: np.ndarray) -> tuple[list[int], list[int]]:
        """Append rows; return (new pivot columns, indices of zero rows)."""
        p = self.p
        if R.shape[0] == 0:
            return [], []
        if self.pivots:
            R = submod(R, mulmod(R[:, self.pivots], self.rows, p), p)
        E, piv = _echelon_rec(R, p)
        nz = np.flatnonzero(piv >= 0)
        zero = [int(i) for i in np.flatnonzero(piv < 0)]
        if nz.size == 0:
            return [], zero
        new = E[nz]
        newp = [int(c) for c in piv[nz]]
        if self.pivots:
            self.rows = submod(self.rows, mulmod(self.rows[:, newp], new, p), p)
        self.rows = np.vstack([self.rows, new])
        self.pivots.extend(newp)
        return newp, zero


def rank_mod(M, p: int = DEFAULT_PRIME) -> int:
    return echelonize(M, p).rank


# --- univariate polynomials, constant term first ---------------------------

def upoly_trim(f: Sequence[int], p: int) -> tuple[int, ...]:
    f = [c % p for c in f]
    while f and f[-1] == 0:
        f.pop()
    return tuple(f)


def upoly_eval(f: Sequence[int], x: int, p: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


def upoly_mul(f: Sequence[int], g: Sequence[int], p: int) -> tuple[int, ...]:
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return upoly_trim(out, p)


def upoly_from_roots(roots: Sequence[int], p: int, lead: int = 1) -> tuple[int, ...]:
    f: tuple[int, ...] = (lead % p,)
    for r in roots:
        f = upoly_mul(f, (-r % p, 1), p)
    return f


def _deflate(f: Sequence[int], x: int, p: int) -> tuple[tuple[int, ...], int]:
    # synthetic division by (T - x): quotient and remainder
    n = len(f) - 1
    q = [0] * n
    acc = 0
    for i in range(n, 0, -1):
        acc = (acc * x + f[i]) % p
        q[i - 1] = acc
    rem = (acc * x + f[0]) % p
    return tuple(q), rem


def roots(f: Sequence[int], p: int = DEFAULT_PRIME) -> list[tuple[int, int]]:
    """All nonzero roots of ``f`` in GF(p) with multiplicities, ascending.

    Found by evaluating ``f`` on the whole multiplicative group.
    """
    f = upoly_trim(f, p)
    if not f:
        raise ValueError("the zero polynomial has every element as a root")
    if len(f) == 1:
        return []
    hits = []
    for lo in range(1, p, _SCAN_CHUNK):
        xs = np.arange(lo, min(p, lo + _SCAN_CHUNK), dtype=np.int64)
        acc = np.zeros_like(xs)
        for c in reversed(f):
            acc = (acc * xs + c) % p
        hits.extend(int(x) for x in xs[acc == 0])
    found = []
    for x in hits:
        mult, g = 0, f
        while len(g) > 1:
            q, r = _deflate(g, x, p)
            if r:
                break
            mult, g = mult + 1, q
        found.append((x, mult))
    return found
