"""Dense exact linear algebra over GF(p^n) on integer-coded numpy arrays.

A matrix over GF(p^n) is an int64 ndarray whose entries are base-p codes of
field elements (code = sum_i c_i * p^i).  Kernels decode codes into
coefficient planes, work mod p, and re-encode, so no multiplication tables
are required and every extension degree the scalar layer supports works
here too.  Prime fields (n == 1) take short-circuit paths: codes are the
residues themselves.
"""

from __future__ import annotations

import numpy as np

from .ffield import FieldSpec

__all__ = ["FieldOps"]


class FieldOps:
    """Vectorized field arithmetic bound to one FieldSpec."""

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.p = spec.p
        self.n = spec.n
        self._powers = self.p ** np.arange(self.n, dtype=np.int64)
        # reduction planes: _red[k] = coefficients of t^(n+k) modulo the modulus
        red = []
        cur = [(-c) % self.p for c in spec.modulus[:-1]]  # t^n
        for _ in range(self.n - 1):
            red.append(list(cur))
            nxt = [0] + cur[:-1]
            lead = cur[-1]
            if lead:
                for i, c in enumerate(spec.modulus[:-1]):
                    nxt[i] = (nxt[i] - lead * c) % self.p
            cur = nxt
        self._red = np.array(red, dtype=np.int64).reshape(self.n - 1, self.n)
        self._inv_cache: dict[int, int] = {}

    # -- code <-> coefficient planes -----------------------------------------

    def decode(self, a: np.ndarray) -> np.ndarray:
        """(...,) codes -> (..., n) coefficient planes."""
        return (np.asarray(a, dtype=np.int64)[..., None] // self._powers) % self.p

    def encode(self, planes: np.ndarray) -> np.ndarray:
        return (planes % self.p) @ self._powers

    # -- elementwise arithmetic (broadcasting like numpy) ---------------------

    def add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.n == 1:
            return (np.asarray(a) + np.asarray(b)) % self.p
        return self.encode(self.decode(a) + self.decode(b))

    def sub(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.n == 1:
            return (np.asarray(a) - np.asarray(b)) % self.p
        return self.encode(self.decode(a) - self.decode(b))

    def neg(self, a: np.ndarray) -> np.ndarray:
        if self.n == 1:
            return (-np.asarray(a)) % self.p
        return self.encode(-self.decode(a))

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.n == 1:
            return (np.asarray(a) * np.asarray(b)) % self.p
        pa = self.decode(a)
        pb = self.decode(b)
        shape = np.broadcast_shapes(pa.shape[:-1], pb.shape[:-1])
        out = np.zeros(shape + (2 * self.n - 1,), dtype=np.int64)
        for i in range(self.n):
            for j in range(self.n):
                out[..., i + j] += pa[..., i] * pb[..., j]
        out %= self.p
        return self.encode(self._reduce_planes(out))

    def _reduce_planes(self, planes: np.ndarray) -> np.ndarray:
        """Fold planes for t^n .. t^(2n-2) back into degrees < n."""
        low = planes[..., : self.n].copy()
        for k in range(self.n - 1):
            c = planes[..., self.n + k]
            if np.any(c):
                low += c[..., None] * self._red[k]
        return low % self.p

    # -- scalars ---------------------------------------------------------------

    def scalar_inv(self, code: int) -> int:
        code = int(code)
        if code == 0:
            raise ZeroDivisionError("zero is not invertible")
        hit = self._inv_cache.get(code)
        if hit is None:
            elem = self.spec.element_from_code(code)
            hit = self.spec.code_of(elem.inverse())
            self._inv_cache[code] = hit
        return hit

    # -- matrix products --------------------------------------------------------

    @staticmethod
    def _int_matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
        # entries are < p, so accumulated products stay far below 2^53 and a
        # BLAS-backed float product is exact (integer matmul has no BLAS path)
        if a.ndim == 2 and (p - 1) * (p - 1) * a.shape[1] < 2**52:
            return (a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64) % p
        return (a @ b) % p

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.n == 1:
            return self._int_matmul(a, b, self.p)
        pa = self.decode(a)  # (R, K, n)
        pb = self.decode(b)  # (K, C, n)
        out = np.zeros((a.shape[0], b.shape[-1], 2 * self.n - 1), dtype=np.int64)
        for i in range(self.n):
            for j in range(self.n):
                out[..., i + j] += self._int_matmul(pa[..., i], pb[..., j], self.p)
        out %= self.p
        return self.encode(self._reduce_planes(out))

    def matvec(self, a: np.ndarray, v: np.ndarray) -> np.ndarray:
        return self.matmul(a, v.reshape(-1, 1)).reshape(-1)

    # -- echelon forms -----------------------------------------------------------

    def rref(self, m: np.ndarray) -> tuple[np.ndarray, list[int]]:
        """Reduced row echelon form.  Returns (nonzero rows, pivot columns).

        The RREF basis of a row space is unique, so results are reproducible
        regardless of input row order.
        """
        m = np.array(m, dtype=np.int64, copy=True)
        if m.ndim != 2:
            raise ValueError("rref expects a matrix")
        rows, cols = m.shape
        pivots: list[int] = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nz = np.nonzero(m[r:, c])[0]
            if nz.size == 0:
                continue
            i = r + int(nz[0])
            if i != r:
                m[[r, i]] = m[[i, r]]
            pc = int(m[r, c])
            if pc != 1:
                m[r] = self.mul(np.int64(self.scalar_inv(pc)), m[r])
            factors = m[:, c].copy()
            factors[r] = 0
            if np.any(factors):
                m = self.sub(m, self.mul(factors[:, None], m[r][None, :]))
            pivots.append(c)
            r += 1
        return m[:r], pivots

    def rank(self, m: np.ndarray) -> int:
        return len(self.rref(m)[1])

    def reduce_rows(self, v: np.ndarray, basis: np.ndarray, pivots: list[int]) -> np.ndarray:
        """Eliminate the pivot coordinates of an RREF basis from rows of v."""
        v = np.array(v, dtype=np.int64, copy=True)
        if len(pivots) == 0 or v.size == 0:
            return v
        single = v.ndim == 1
        if single:
            v = v.reshape(1, -1)
        coef = v[:, pivots]
        if np.any(coef):
            v = self.sub(v, self.matmul(coef, basis))
        return v.reshape(-1) if single else v

    def in_row_space(self, v: np.ndarray, basis: np.ndarray, pivots: list[int]) -> bool:
        return not np.any(self.reduce_rows(v, basis, pivots))

    def coordinates(self, v: np.ndarray, basis: np.ndarray, pivots: list[int]) -> np.ndarray | None:
        """Coordinates of v in an RREF basis, or None if v is outside its span."""
        v = np.asarray(v, dtype=np.int64)
        coef = v[pivots] if v.ndim == 1 else v[:, pivots]
        if np.any(self.reduce_rows(v, basis, pivots)):
            return None
        return coef

    def solve(self, a: np.ndarray, b: np.ndarray) -> np.ndarray | None:
        """One solution of a @ x = b, or None if inconsistent."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64).reshape(-1)
        aug = np.concatenate([a, b.reshape(-1, 1)], axis=1)
        r, pivots = self.rref(aug)
        cols = a.shape[1]
        if cols in pivots:
            return None
        x = np.zeros(cols, dtype=np.int64)
        for row, c in enumerate(pivots):
            x[c] = r[row, -1]
        return x

    def nullspace(self, m: np.ndarray) -> np.ndarray:
        """RREF-derived basis of {x : m @ x = 0}, one row per basis vector."""
        m = np.asarray(m, dtype=np.int64)
        cols = m.shape[1]
        r, pivots = self.rref(m)
        free = [c for c in range(cols) if c not in set(pivots)]
        basis = np.zeros((len(free), cols), dtype=np.int64)
        for k, f in enumerate(free):
            basis[k, f] = 1
            for row, c in enumerate(pivots):
                basis[k, c] = self.neg(np.int64(r[row, f]))
        return basis

    def det(self, m: np.ndarray) -> int:
        """Determinant as a field code (forward elimination, exact)."""
        m = np.array(m, dtype=np.int64, copy=True)
        size = m.shape[0]
        if m.shape != (size, size):
            raise ValueError("determinant needs a square matrix")
        det_code = self.spec.code_of(self.spec.one())
        neg_one = self.spec.code_of(-self.spec.one())
        for c in range(size):
            nz = np.nonzero(m[c:, c])[0]
            if nz.size == 0:
                return 0
            i = c + int(nz[0])
            if i != c:
                m[[c, i]] = m[[i, c]]
                det_code = int(self.mul(np.int64(det_code), np.int64(neg_one)))
            pc = int(m[c, c])
            det_code = int(self.mul(np.int64(det_code), np.int64(pc)))
            inv = self.scalar_inv(pc)
            factors = self.mul(m[c + 1 :, c], np.int64(inv))
            if np.any(factors):
                m[c + 1 :] = self.sub(m[c + 1 :], self.mul(factors[:, None], m[c][None, :]))
        return det_code

    def eye(self, size: int) -> np.ndarray:
        m = np.zeros((size, size), dtype=np.int64)
        np.fill_diagonal(m, 1)
        return m
