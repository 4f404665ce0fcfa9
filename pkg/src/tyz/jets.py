"""Truncated multivariate Taylor jets with complex coefficients.

A jet is the Taylor polynomial of a function in ``nvars`` formal
displacements, truncated at total degree ``space.order``. ``valid`` records the
highest degree whose coefficients are still exact: differentiation lowers it by
one and binary operations take the minimum.

The curvature code polarizes a potential ``Phi(z, conj z)`` by treating the
displacements of ``z`` and ``conj z`` as independent variables ``u`` and
``v``; Wirtinger derivatives are then ordinary coefficient reads.
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache

import numpy as np


class JetSpace:
    """Monomial basis and multiplication table for ``(nvars, order)``."""

    def __init__(self, nvars: int, order: int):
        self.nvars, self.order = nvars, order
        mons = [
            m
            for deg in range(order + 1)
            for m in sorted(
                (c for c in itertools.product(range(deg + 1), repeat=nvars) if sum(c) == deg), reverse=True
            )
        ]
        self.monomials = mons
        self.index = {m: i for i, m in enumerate(mons)}
        self.degree = np.array([sum(m) for m in mons])
        self.size = len(mons)
        left, right, target = [], [], []
        for i, mi in enumerate(mons):
            di = self.degree[i]
            for j, mj in enumerate(mons):
                if di + self.degree[j] <= order:
                    left.append(i)
                    right.append(j)
                    target.append(self.index[tuple(x + y for x, y in zip(mi, mj))])
        self._left = np.array(left)
        self._right = np.array(right)
        self._target = np.array(target)
        # derivative maps: d/dx_k sends monomial m to m - e_k with factor m_k
        self._dsrc, self._ddst, self._dfac = [], [], []
        for k in range(nvars):
            src, dst, fac = [], [], []
            for i, m in enumerate(mons):
                if m[k] > 0:
                    lowered = m[:k] + (m[k] - 1,) + m[k + 1 :]
                    src.append(i)
                    dst.append(self.index[lowered])
                    fac.append(m[k])
            self._dsrc.append(np.array(src, dtype=int))
            self._ddst.append(np.array(dst, dtype=int))
            self._dfac.append(np.array(fac, dtype=float))

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        prod = a[self._left] * b[self._right]
        out = np.zeros(self.size, dtype=complex)
        np.add.at(out, self._target, prod)
        return out

    def deriv(self, a: np.ndarray, k: int) -> np.ndarray:
        out = np.zeros(self.size, dtype=complex)
        out[self._ddst[k]] = a[self._dsrc[k]] * self._dfac[k]
        return out


@lru_cache(maxsize=None)
def jet_space(nvars: int, order: int) -> JetSpace:
    return JetSpace(nvars, order)


class Jet:
    __slots__ = ("space", "coeffs", "valid")
    __array_ufunc__ = None

    def __init__(self, space: JetSpace, coeffs: np.ndarray, valid: int | None = None):
        self.space = space
        self.coeffs = coeffs
        self.valid = space.order if valid is None else valid
        if self.valid < space.order:
            self.coeffs = np.where(space.degree > self.valid, 0, coeffs)

    @classmethod
    def constant(cls, space: JetSpace, value) -> "Jet":
        c = np.zeros(space.size, dtype=complex)
        c[0] = value
        return cls(space, c)

    @classmethod
    def variable(cls, space: JetSpace, k: int, value=0.0) -> "Jet":
        """``value + x_k``."""
        c = np.zeros(space.size, dtype=complex)
        c[0] = value
        if space.order >= 1:
            e = [0] * space.nvars
            e[k] = 1
            c[space.index[tuple(e)]] = 1.0
        return cls(space, c)

    @property
    def value(self) -> complex:
        return complex(self.coeffs[0])

    def coeff(self, monomial) -> complex:
        if sum(monomial) > self.valid:
            raise ValueError(f"monomial {monomial} beyond exact order {self.valid}")
        return complex(self.coeffs[self.space.index[tuple(monomial)]])

    def derivative_at_center(self, counts) -> complex:
        """Mixed partial derivative at the expansion point, ``counts[k]`` times in ``x_k``."""
        return self.coeff(counts) * math.prod(math.factorial(c) for c in counts)

    def _lift(self, other) -> "Jet":
        if isinstance(other, Jet):
            return other
        return Jet.constant(self.space, other)

    def __add__(self, other):
        other = self._lift(other)
        return Jet(self.space, self.coeffs + other.coeffs, min(self.valid, other.valid))

    __radd__ = __add__

    def __neg__(self):
        return Jet(self.space, -self.coeffs, self.valid)

    def __pos__(self):
        return self

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Jet):
            return Jet(self.space, self.coeffs * complex(other), self.valid)
        return Jet(self.space, self.space.mul(self.coeffs, other.coeffs), min(self.valid, other.valid))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Jet):
            return Jet(self.space, self.coeffs / complex(other), self.valid)
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        return self._lift(other) * self.reciprocal()

    def __pow__(self, p):
        if isinstance(p, Jet):
            if np.any(p.coeffs[1:] != 0):
                return exp(p * log(self))
            p = p.value
        p = complex(p)
        if p.imag == 0 and p.real == int(p.real) and p.real >= 0:
            out = Jet.constant(self.space, 1.0)
            for _ in range(int(p.real)):
                out = out * self
            return out
        c = self.value
        if c == 0:
            raise ZeroDivisionError("non-integer or negative power of a jet vanishing at the center")
        # (c + h)^p = c^p sum_k binom(p, k) (h/c)^k
        coeffs, binom = [], 1.0 + 0j
        for k in range(self.space.order + 1):
            coeffs.append(binom * c**p)
            binom = binom * (p - k) / (k + 1)
        return self._compose(coeffs, scale=1 / c)

    def _nilpotent(self) -> "Jet":
        h = self.coeffs.copy()
        h[0] = 0
        return Jet(self.space, h, self.valid)

    def _compose(self, series, scale=1.0) -> "Jet":
        """``sum_k series[k] (scale * h)^k`` with ``h`` the non-constant part."""
        h = self._nilpotent() * scale
        out = Jet.constant(self.space, series[0])
        power = Jet.constant(self.space, 1.0)
        for k in range(1, self.space.order + 1):
            power = power * h
            out = out + power * series[k]
        return Jet(self.space, out.coeffs, self.valid)

    def reciprocal(self) -> "Jet":
        c = self.value
        if c == 0:
            raise ZeroDivisionError("reciprocal of a jet vanishing at the center")
        return self._compose([(-1) ** k / c for k in range(self.space.order + 1)], scale=1 / c)

    def deriv(self, k: int) -> "Jet":
        return Jet(self.space, self.space.deriv(self.coeffs, k), self.valid - 1)


def exp(x):
    if not isinstance(x, Jet):
        return np.exp(complex(x))
    e = np.exp(x.value)
    return x._compose([e / math.factorial(k) for k in range(x.space.order + 1)])


def log(x):
    if not isinstance(x, Jet):
        x = complex(x)
        if x == 0:
            raise ZeroDivisionError("log(0)")
        return np.log(x)
    c = x.value
    if c == 0:
        raise ZeroDivisionError("log of a jet vanishing at the center")
    series = [np.log(c)] + [(-1) ** (k + 1) / k for k in range(1, x.space.order + 1)]
    return x._compose(series, scale=1 / c)


def det(mat: list[list[Jet]]) -> Jet:
    n = len(mat)
    if n == 1:
        return mat[0][0]
    total = None
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in mat[1:]]
        term = mat[0][j] * det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total


def inverse(mat: list[list[Jet]]) -> list[list[Jet]]:
    """Matrix inverse by Neumann series around the constant part."""
    n = len(mat)
    space = mat[0][0].space
    g0 = np.array([[m.value for m in row] for row in mat])
    g0inv = np.linalg.inv(g0)
    # mat = g0 (I + E), E = g0^-1 (mat - g0) nilpotent
    E = [
        [sum((mat[k][j] - g0[k, j]) * g0inv[i, k] for k in range(n)) for j in range(n)]
        for i in range(n)
    ]
    ident = [[Jet.constant(space, 1.0 if i == j else 0.0) for j in range(n)] for i in range(n)]
    acc = [row[:] for row in ident]
    power = [row[:] for row in ident]
    for k in range(1, space.order + 1):
        power = [[sum(power[i][l] * E[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        sign = -1 if k % 2 else 1
        acc = [[acc[i][j] + power[i][j] * sign for j in range(n)] for i in range(n)]
    # (I + E)^-1 g0^-1
    out = [[sum(acc[i][k] * g0inv[k, j] for k in range(n)) for j in range(n)] for i in range(n)]
    valid = min(m.valid for row in mat for m in row)
    return [[Jet(space, m.coeffs, valid) for m in row] for row in out]
