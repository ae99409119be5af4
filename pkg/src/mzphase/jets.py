"""Truncated multivariate Taylor ("jet") arithmetic over complex coefficients.

A jet stores every mixed Taylor coefficient of a smooth function around 0 up
to a per-variable truncation order (its "cap"). Sums, products, and the
analytic maps exp / 1/x / sqrt act on jets exactly modulo the truncation, so
an m-th mixed derivative of any composite expression can be read off a
single coefficient. Coefficient arrays may carry a leading batch axis, which
lets a sweep evaluate one expression at many base points in a few vector
operations; non-batched jets broadcast against batched ones.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    CapTooSmall,
    IndexOutOfCaps,
    ShapeMismatch,
    SingularConstantTerm,
    UnknownVariable,
)


@dataclass(frozen=True)
class JetShape:
    """Ordered variable names with per-variable truncation orders."""

    variables: tuple[str, ...]
    caps: tuple[int, ...]

    def __post_init__(self):
        if len(self.variables) != len(self.caps):
            raise ShapeMismatch("one cap per variable required")
        if len(self.variables) == 0:
            raise ShapeMismatch("a jet needs at least one variable")
        if len(set(self.variables)) != len(self.variables):
            raise ShapeMismatch(f"duplicate variable names in {self.variables}")
        for v, c in zip(self.variables, self.caps):
            if not isinstance(c, int) or c < 0:
                raise CapTooSmall(f"cap for {v!r} must be a non-negative int, got {c!r}")

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(c + 1 for c in self.caps)

    @property
    def ncoeff(self) -> int:
        return math.prod(self.dims)

    @property
    def total_degree(self) -> int:
        return sum(self.caps)

    def axis(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise UnknownVariable(f"{name!r} not in {self.variables}") from None

    def flat_index(self, orders: tuple[int, ...]) -> int:
        idx = 0
        for o, d, v, c in zip(orders, self.dims, self.variables, self.caps):
            if not 0 <= o <= c:
                raise IndexOutOfCaps(f"order {o} for {v!r} exceeds cap {c}")
            idx = idx * d + o
        return idx


# Convolution plans, keyed by caps. A plan lists every coefficient pair
# (ia, ib) whose product lands inside the truncation, pre-sorted by the
# output index so one reduceat performs the whole truncated product.
_PLANS: dict[tuple[int, ...], tuple[np.ndarray, np.ndarray, np.ndarray]] = {}


def _conv_plan(caps: tuple[int, ...]):
    plan = _PLANS.get(caps)
    if plan is not None:
        return plan
    dims = tuple(c + 1 for c in caps)
    strides = []
    s = 1
    for d in reversed(dims):
        strides.append(s)
        s *= d
    strides.reverse()

    ia = np.zeros(1, dtype=np.int64)
    ib = np.zeros(1, dtype=np.int64)
    iout = np.zeros(1, dtype=np.int64)
    for cap, stride in zip(caps, strides):
        i, j = np.meshgrid(np.arange(cap + 1), np.arange(cap + 1), indexing="ij")
        keep = (i + j) <= cap
        di, dj = i[keep] * stride, j[keep] * stride
        ia = (ia[:, None] + di[None, :]).ravel()
        ib = (ib[:, None] + dj[None, :]).ravel()
        iout = (iout[:, None] + (di + dj)[None, :]).ravel()
    order = np.argsort(iout, kind="stable")
    ia, ib, iout = ia[order], ib[order], iout[order]
    bounds = np.searchsorted(iout, np.arange(math.prod(dims)))
    plan = (ia, ib, bounds)
    _PLANS[caps] = plan
    return plan


def _mul_flat(a: np.ndarray, b: np.ndarray, caps: tuple[int, ...]) -> np.ndarray:
    ia, ib, bounds = _conv_plan(caps)
    prod = a[:, ia] * b[:, ib]
    return np.add.reduceat(prod, bounds, axis=1)


class MultiJet:
    """Dense complex Taylor coefficients on a JetShape, optional batch axis."""

    __slots__ = ("shape", "_flat")

    def __init__(self, shape: JetShape, flat: np.ndarray):
        if flat.ndim != 2 or flat.shape[1] != shape.ncoeff:
            raise ShapeMismatch(
                f"coefficient array {flat.shape} does not match shape with {shape.ncoeff} coefficients"
            )
        self.shape = shape
        self._flat = flat

    # -- constructors ------------------------------------------------------

    @classmethod
    def constant(cls, shape: JetShape, value) -> "MultiJet":
        vals = np.atleast_1d(np.asarray(value, dtype=np.complex128)).ravel()
        flat = np.zeros((vals.size, shape.ncoeff), dtype=np.complex128)
        flat[:, 0] = vals
        return cls(shape, flat)

    @classmethod
    def variable(cls, shape: JetShape, name: str) -> "MultiJet":
        ax = shape.axis(name)
        if shape.caps[ax] < 1:
            raise CapTooSmall(f"variable {name!r} has cap {shape.caps[ax]}, needs >= 1")
        orders = tuple(1 if i == ax else 0 for i in range(len(shape.caps)))
        flat = np.zeros((1, shape.ncoeff), dtype=np.complex128)
        flat[0, shape.flat_index(orders)] = 1.0
        return cls(shape, flat)

    # -- basic queries -----------------------------------------------------

    @property
    def batch(self) -> int:
        return self._flat.shape[0]

    @property
    def array(self) -> np.ndarray:
        """Coefficients as a multi-index array (batch axis first if batched)."""
        dims = self.shape.dims
        if self.batch == 1:
            return self._flat.reshape(dims).copy()
        return self._flat.reshape((self.batch,) + dims).copy()

    def extract(self, orders) -> complex | np.ndarray:
        """Value of the mixed partial derivative of the given orders at 0.

        `orders` is a tuple matching the variable order, or a dict keyed by
        variable name (missing names mean order 0). The stored coefficient
        is multiplied by the factorials of the orders.
        """
        if isinstance(orders, dict):
            unknown = set(orders) - set(self.shape.variables)
            if unknown:
                raise UnknownVariable(f"{sorted(unknown)} not in {self.shape.variables}")
            orders = tuple(orders.get(v, 0) for v in self.shape.variables)
        orders = tuple(int(o) for o in orders)
        if len(orders) != len(self.shape.caps):
            raise IndexOutOfCaps(f"need {len(self.shape.caps)} orders, got {len(orders)}")
        fac = math.prod(math.factorial(o) for o in orders)
        col = self._flat[:, self.shape.flat_index(orders)] * fac
        if self.batch == 1:
            return complex(col[0])
        return col

    # -- ring operations ---------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, MultiJet):
            if other.shape != self.shape:
                raise ShapeMismatch(f"jet shapes differ: {self.shape} vs {other.shape}")
            return other
        if isinstance(other, (int, float, complex, np.integer, np.floating, np.complexfloating)):
            return MultiJet.constant(self.shape, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return MultiJet(self.shape, self._flat + o._flat)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return MultiJet(self.shape, self._flat - o._flat)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return MultiJet(self.shape, o._flat - self._flat)

    def __neg__(self):
        return MultiJet(self.shape, -self._flat)

    def __mul__(self, other):
        if isinstance(other, MultiJet):
            if other.shape != self.shape:
                raise ShapeMismatch(f"jet shapes differ: {self.shape} vs {other.shape}")
            return MultiJet(self.shape, _mul_flat(self._flat, other._flat, self.shape.caps))
        if isinstance(other, (int, float, complex, np.integer, np.floating, np.complexfloating)):
            return MultiJet(self.shape, self._flat * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, MultiJet):
            return self * other.recip()
        if isinstance(other, (int, float, complex, np.integer, np.floating, np.complexfloating)):
            return MultiJet(self.shape, self._flat / other)
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, (int, np.integer)) or n < 0:
            return NotImplemented
        out = MultiJet.constant(self.shape, 1.0)
        base = self
        k = int(n)
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    # -- analytic maps -----------------------------------------------------

    def _split(self):
        c = self._flat[:, :1].copy()
        n = self._flat.copy()
        n[:, 0] = 0.0
        return c, n

    def exp(self) -> "MultiJet":
        """exp of the jet: exp(constant) times the nilpotent exponential series."""
        c, n = self._split()
        out = np.zeros_like(self._flat)
        out[:, 0] = 1.0
        term = out.copy()
        for k in range(1, self.shape.total_degree + 1):
            term = _mul_flat(term, n, self.shape.caps) / k
            if not term.any():
                break
            out = out + term
        return MultiJet(self.shape, out * np.exp(c))

    def recip(self) -> "MultiJet":
        """1 / jet via the geometric series in the nilpotent part."""
        c, n = self._split()
        if np.any(np.abs(c) == 0.0):
            raise SingularConstantTerm("cannot invert a jet with zero constant term")
        u = n / c
        out = np.zeros_like(self._flat)
        out[:, 0] = 1.0
        term = out.copy()
        for k in range(1, self.shape.total_degree + 1):
            term = -_mul_flat(term, u, self.shape.caps)
            if not term.any():
                break
            out = out + term
        return MultiJet(self.shape, out / c)

    def sqrt(self) -> "MultiJet":
        """Principal square root via the binomial series in the nilpotent part."""
        c, n = self._split()
        if np.any(np.abs(c) == 0.0):
            raise SingularConstantTerm("cannot take sqrt of a jet with zero constant term")
        u = n / c
        out = np.zeros_like(self._flat)
        out[:, 0] = 1.0
        term = out.copy()
        coef = 1.0
        for k in range(1, self.shape.total_degree + 1):
            coef *= (0.5 - (k - 1)) / k
            term = _mul_flat(term, u, self.shape.caps)
            if not term.any():
                break
            out = out + coef * term
        return MultiJet(self.shape, out * np.sqrt(c))

    def __repr__(self):
        return f"MultiJet(shape={self.shape}, batch={self.batch})"
