"""Inertia and index regions of Hermitian pencils ``A + t B``.

The boundary contribution at a point is governed by how the number of
negative eigenvalues of ``A + t B`` changes along ``t > 0``.  The index
can only jump where ``det(A + t B) = 0``, so the positive half line is cut
at those roots and the index is sampled once per segment.
"""

from __future__ import annotations

import contextlib
import contextvars
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DegenerateLevi, DimensionMismatch, NonHermitian

__all__ = [
    "HermitianMatrix",
    "Inertia",
    "TRegion",
    "as_hermitian",
    "inertia",
    "default_zero_tol",
    "pencil_breakpoints",
    "t_region",
    "condition_Z",
    "tolerances",
]

HERMITIAN_TOL = 1e-12
IMAG_TOL = 1e-8
MERGE_GAP = 1e-9
ZERO_TOL_FACTOR = 1e-10

_overrides = contextvars.ContextVar("morsebound_tolerances", default={})


@contextlib.contextmanager
def tolerances(zero_tol: float | None = None, imag_tol: float | None = None):
    """Override the default zero and imaginary-part tolerances in this context.

    ``zero_tol`` replaces the relative factor 1e-10 in
    ``zero_tol * (1 + spectral radius bound)``.
    """
    new = dict(_overrides.get())
    if zero_tol is not None:
        new["zero_tol"] = float(zero_tol)
    if imag_tol is not None:
        new["imag_tol"] = float(imag_tol)
    token = _overrides.set(new)
    try:
        yield
    finally:
        _overrides.reset(token)


@dataclass(frozen=True, eq=False)
class HermitianMatrix:
    """A square Hermitian matrix held as a read-only complex array.

    Construction checks ``entries[i, j] == conj(entries[j, i])`` to within
    1e-12 (scaled by the largest entry when that exceeds one) and then
    stores the exactly symmetrised matrix.
    """

    entries: np.ndarray

    def __post_init__(self):
        a = np.array(self.entries, dtype=complex)
        if a.ndim == 0:
            a = a.reshape(1, 1)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise DimensionMismatch(f"expected a non-empty square matrix, got shape {a.shape}")
        scale = max(1.0, float(np.max(np.abs(a))))
        gap = np.abs(a - a.conj().T)
        if np.any(gap > HERMITIAN_TOL * scale):
            i, j = np.unravel_index(int(np.argmax(gap)), gap.shape)
            raise NonHermitian(int(i), int(j))
        a = 0.5 * (a + a.conj().T)
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @classmethod
    def diag(cls, values: Sequence[float]) -> "HermitianMatrix":
        return cls(np.diag(np.asarray(values, dtype=float)))

    @classmethod
    def identity(cls, m: int) -> "HermitianMatrix":
        return cls(np.eye(m))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def is_real(self) -> bool:
        return not np.any(self.entries.imag)

    def array(self) -> np.ndarray:
        """Return a writable copy, real-typed when the matrix is real."""
        if self.is_real:
            return self.entries.real.copy()
        return self.entries.copy()

    def eigvalsh(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.array())

    def det(self) -> float:
        return float(np.real(np.linalg.det(self.array())))

    def __add__(self, other):
        return HermitianMatrix(self.entries + as_hermitian(other).entries)

    def __neg__(self):
        return HermitianMatrix(-self.entries)

    def __mul__(self, factor):
        return HermitianMatrix(float(factor) * self.entries)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, HermitianMatrix):
            return NotImplemented
        return self.entries.shape == other.entries.shape and bool(
            np.array_equal(self.entries, other.entries))

    def __repr__(self):
        return f"HermitianMatrix({np.array2string(self.array(), separator=', ')})"


def as_hermitian(h) -> HermitianMatrix:
    if isinstance(h, HermitianMatrix):
        return h
    return HermitianMatrix(np.asarray(h))


@dataclass(frozen=True)
class Inertia:
    negatives: int
    zeros: int
    positives: int

    @property
    def dim(self) -> int:
        return self.negatives + self.zeros + self.positives


@dataclass(frozen=True)
class TRegion:
    """Finite union of disjoint open intervals in ``(0, inf)``.

    When ``unbounded`` is set the last interval ends at ``inf``.
    """

    intervals: tuple = field(default_factory=tuple)
    unbounded: bool = False

    def __post_init__(self):
        ivs = tuple((float(lo), float(hi)) for lo, hi in self.intervals)
        object.__setattr__(self, "intervals", ivs)
        prev = 0.0
        for lo, hi in ivs:
            if not (lo >= prev and hi > lo):
                raise ValueError(f"intervals must be sorted, disjoint and non-empty: {ivs}")
            prev = hi
        if self.unbounded != bool(ivs and np.isinf(ivs[-1][1])):
            raise ValueError("unbounded flag must match an infinite last interval")

    @property
    def empty(self) -> bool:
        return not self.intervals

    def length(self) -> float:
        return sum(hi - lo for lo, hi in self.intervals)

    def contains(self, t) -> np.ndarray | bool:
        t_arr = np.asarray(t, dtype=float)
        inside = np.zeros(t_arr.shape, dtype=bool)
        for lo, hi in self.intervals:
            inside |= (t_arr > lo) & (t_arr < hi)
        return bool(inside) if inside.ndim == 0 else inside

    def scaled(self, factor: float) -> "TRegion":
        return TRegion(tuple((lo * factor, hi * factor) for lo, hi in self.intervals),
                       self.unbounded)


def zero_tol_factor() -> float:
    return _overrides.get().get("zero_tol", ZERO_TOL_FACTOR)


def default_zero_tol(h) -> float:
    a = as_hermitian(h).array()
    # the infinity norm bounds the spectral radius
    return zero_tol_factor() * (1.0 + float(np.max(np.sum(np.abs(a), axis=1))))


def inertia(h, zero_tol: float | None = None) -> Inertia:
    """Count negative, (numerically) zero and positive eigenvalues of ``h``."""
    h = as_hermitian(h)
    if zero_tol is None:
        zero_tol = default_zero_tol(h)
    ev = h.eigvalsh()
    neg = int(np.count_nonzero(ev < -zero_tol))
    pos = int(np.count_nonzero(ev > zero_tol))
    return Inertia(neg, h.dim - neg - pos, pos)


def _check_pair(a: HermitianMatrix, b: HermitianMatrix):
    if a.dim != b.dim:
        raise DimensionMismatch(f"pencil matrices differ in size: {a.dim} vs {b.dim}")
    ev = b.eigvalsh()
    if np.min(np.abs(ev)) <= default_zero_tol(b):
        raise DegenerateLevi(f"Levi matrix is degenerate (eigenvalues {ev})")


def pencil_breakpoints(a, b, imag_tol: float | None = None) -> list[float]:
    """Positive roots of ``det(A + t B)``, sorted, with near-duplicates merged.

    The roots are the negated eigenvalues of ``B^{-1} A``; eigenvalues with
    imaginary part above ``imag_tol * (1 + |real part|)`` are dropped.
    """
    if imag_tol is None:
        imag_tol = _overrides.get().get("imag_tol", IMAG_TOL)
    a, b = as_hermitian(a), as_hermitian(b)
    _check_pair(a, b)
    ev = -np.linalg.eigvals(np.linalg.solve(b.array(), a.array()))
    real = ev.real[np.abs(ev.imag) <= imag_tol * (1.0 + np.abs(ev.real))]
    roots = np.sort(real[real > 0.0])
    merged: list[float] = []
    for r in roots:
        if merged and r - merged[-1] <= MERGE_GAP * max(abs(r), abs(merged[-1])):
            continue
        merged.append(float(r))
    return merged


def _index_at(a: np.ndarray, b: np.ndarray, t: float, lo: float, hi: float) -> int:
    """Index of ``A + t B``, nudging ``t`` inside ``(lo, hi)`` if it lands on a zero."""
    for frac in (None, 1 / 3, 2 / 3, 0.25, 0.75, 0.1, 0.9):
        if frac is not None:
            t = lo + frac * (hi - lo) if np.isfinite(hi) else lo + 1.0 + 10.0 * frac * (1.0 + lo)
        inr = inertia(a + t * b)
        if inr.zeros == 0:
            return inr.negatives
    return inr.negatives


def t_region(a, b, q: int) -> TRegion:
    """Set of ``t > 0`` where ``A + t B`` has exactly ``q`` negative eigenvalues."""
    a, b = as_hermitian(a), as_hermitian(b)
    cuts = pencil_breakpoints(a, b)
    aa, bb = a.array(), b.array()
    edges = [0.0] + cuts
    pieces = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        if _index_at(aa, bb, 0.5 * (lo + hi), lo, hi) == q:
            pieces.append((lo, hi))
    last = edges[-1]
    unbounded = _index_at(aa, bb, last + 1.0, last, np.inf) == q
    if unbounded:
        pieces.append((last, np.inf))
    return TRegion(tuple(pieces), unbounded)


def condition_Z(levi, n: int, q: int) -> bool:
    """At least ``q + 1`` negative or at least ``n - q`` positive Levi eigenvalues."""
    levi = as_hermitian(levi)
    if levi.dim != n - 1:
        raise DimensionMismatch(f"Levi form must have size n - 1 = {n - 1}, got {levi.dim}")
    inr = inertia(levi)
    return inr.negatives >= q + 1 or inr.positives >= n - q
