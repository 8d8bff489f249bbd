"""Discrete model: index arithmetic on Z_n^d, centered representatives,
the unitary DFT, partial DFTs and fractional (trigonometric) shifts.

Conventions fixed here and relied on everywhere else:

* positions are integer indices j in Z_n^d, flattened row-major;
* the frequency sample k stands for xi_k = 2*pi*rep(k)/n per axis;
* the DFT is unitary, (Ff)(k) = n^{-d/2} sum_j f(j) e^{-2i pi <j,k>/n},
  so the plane-wave kernel e^{i<x-y,xi>} becomes the exact DFT character;
* n is odd, making centered representatives unambiguous and 2 invertible
  mod n.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import DimMismatch, InvalidParams

__all__ = [
    "GridSpec",
    "Signal",
    "Symbol",
    "OperatorMatrix",
    "rep",
    "rep_axis",
    "index_coords",
    "rep_coords",
    "rel_index",
    "dft",
    "idft",
    "partial_dft",
    "frac_shift",
    "gaussian_window",
    "doubled",
]


@dataclass(frozen=True)
class GridSpec:
    """Finite cyclic grid Z_n^d with an arithmetic mode.

    mode "real" samples phases at centered representatives (continuum
    faithful, accepts any real matrix parameter); mode "mod" reduces
    everything mod n (exact cyclic-group identities, integer parameters
    only).
    """

    d: int
    n: int
    mode: str = "real"

    def __post_init__(self):
        if self.d < 1:
            raise InvalidParams(f"dimension must be >= 1, got {self.d}")
        if self.n < 1 or self.n % 2 == 0:
            raise InvalidParams(f"points per axis must be odd and positive, got {self.n}")
        if self.mode not in ("real", "mod"):
            raise InvalidParams(f"mode must be 'real' or 'mod', got {self.mode!r}")

    @property
    def size(self) -> int:
        return self.n**self.d

    @property
    def shape(self) -> tuple:
        return (self.n,) * self.d


def _coerce(grid, data, shape):
    arr = np.asarray(data, dtype=np.complex128)
    if arr.shape != shape:
        raise DimMismatch(f"expected shape {shape}, got {arr.shape}")
    return arr


@dataclass(frozen=True)
class Signal:
    """Complex vector indexed by Z_n^d (row-major over coordinates)."""

    grid: GridSpec
    data: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "data", _coerce(self.grid, self.data, (self.grid.size,)))

    @classmethod
    def delta(cls, grid, at=0):
        data = np.zeros(grid.size, dtype=np.complex128)
        data[at] = 1.0
        return cls(grid, data)

    @classmethod
    def random(cls, grid, rng):
        return cls(grid, rng.standard_normal(grid.size) + 1j * rng.standard_normal(grid.size))

    def norm(self) -> float:
        return float(np.linalg.norm(self.data))


@dataclass(frozen=True)
class Symbol:
    """Complex array over Z_n^d x Z_n^d; first block positions, second frequencies."""

    grid: GridSpec
    data: np.ndarray = field(repr=False)

    def __post_init__(self):
        N = self.grid.size
        object.__setattr__(self, "data", _coerce(self.grid, self.data, (N, N)))

    @classmethod
    def constant(cls, grid, value=1.0):
        return cls(grid, np.full((grid.size, grid.size), value, dtype=np.complex128))

    @classmethod
    def random(cls, grid, rng):
        N = grid.size
        return cls(grid, rng.standard_normal((N, N)) + 1j * rng.standard_normal((N, N)))

    def norm(self) -> float:
        return float(np.linalg.norm(self.data))


@dataclass(frozen=True)
class OperatorMatrix:
    """n^d x n^d matrix; entry (j, j') is the Schwartz-kernel value K(j, j')."""

    grid: GridSpec
    data: np.ndarray = field(repr=False)

    def __post_init__(self):
        N = self.grid.size
        object.__setattr__(self, "data", _coerce(self.grid, self.data, (N, N)))

    @classmethod
    def identity(cls, grid):
        return cls(grid, np.eye(grid.size, dtype=np.complex128))

    def norm(self) -> float:
        return float(np.linalg.norm(self.data))


def rep(k: int, n: int) -> int:
    """Centered representative: the unique r = k (mod n) with |r| <= (n-1)/2."""
    return (int(k) + (n - 1) // 2) % n - (n - 1) // 2


@lru_cache(maxsize=None)
def rep_axis(n: int) -> np.ndarray:
    """Centered representatives of 0..n-1 as an int array."""
    r = (np.arange(n) + (n - 1) // 2) % n - (n - 1) // 2
    r.setflags(write=False)
    return r


@lru_cache(maxsize=None)
def _coords(n: int, d: int) -> np.ndarray:
    """(N, d) array of per-axis indices for each flat index, row-major."""
    grids = np.meshgrid(*([np.arange(n)] * d), indexing="ij")
    c = np.stack([g.ravel() for g in grids], axis=1)
    c.setflags(write=False)
    return c


def index_coords(grid: GridSpec) -> np.ndarray:
    return _coords(grid.n, grid.d)


def rep_coords(grid: GridSpec) -> np.ndarray:
    """(N, d) centered-representative coordinates for each flat index."""
    return rep_axis(grid.n)[_coords(grid.n, grid.d) % grid.n]


@lru_cache(maxsize=None)
def _rel_index(n: int, d: int) -> np.ndarray:
    """rel[i, j] = flat index of coords(i) - coords(j) mod n."""
    c = _coords(n, d)
    diff = (c[:, None, :] - c[None, :, :]) % n
    weights = n ** np.arange(d - 1, -1, -1)
    out = diff @ weights
    out.setflags(write=False)
    return out


def rel_index(grid: GridSpec) -> np.ndarray:
    return _rel_index(grid.n, grid.d)


def flatten_coords(grid: GridSpec, coords: np.ndarray) -> np.ndarray:
    """Flat indices of (…, d) integer coordinates, reduced mod n."""
    weights = grid.n ** np.arange(grid.d - 1, -1, -1)
    return (np.asarray(coords) % grid.n) @ weights


def dft(f: Signal) -> Signal:
    """Unitary DFT: (Ff)(k) = n^{-d/2} sum_j f(j) e^{-2i pi <j,k>/n}."""
    g = f.grid
    out = np.fft.fftn(f.data.reshape(g.shape)) / np.sqrt(g.size)
    return Signal(g, out.ravel())


def idft(f: Signal) -> Signal:
    """Inverse of :func:`dft`; exact roundtrip up to fp roundoff."""
    g = f.grid
    out = np.fft.ifftn(f.data.reshape(g.shape)) * np.sqrt(g.size)
    return Signal(g, out.ravel())


def _block_axes(d, block):
    if block == 1:
        return tuple(range(d))
    if block == 2:
        return tuple(range(d, 2 * d))
    raise InvalidParams(f"block must be 1 or 2, got {block}")


def _partial_dft_core(arr2, grid, block, inverse=False):
    """Unitary DFT of an (N, N) two-block array along one index block."""
    n, d = grid.n, grid.d
    shaped = arr2.reshape((n,) * (2 * d))
    axes = _block_axes(d, block)
    scale = np.sqrt(grid.size)
    if inverse:
        out = np.fft.ifftn(shaped, axes=axes) * scale
    else:
        out = np.fft.fftn(shaped, axes=axes) / scale
    return out.reshape(arr2.shape)


def partial_dft(F: Symbol, block: int, direction: str = "fwd") -> Symbol:
    """Unitary DFT applied along one index block of a two-block array.

    direction "fwd" or "inv"; block 1 is the position block, block 2 the
    frequency block.
    """
    if direction not in ("fwd", "inv"):
        raise InvalidParams(f"direction must be 'fwd' or 'inv', got {direction!r}")
    out = _partial_dft_core(F.data, F.grid, block, inverse=direction == "inv")
    return Symbol(F.grid, out)


def _frac_shift_core(data, grid, s):
    n = grid.n
    s = np.broadcast_to(np.asarray(s, dtype=float), (grid.d,))
    fhat = np.fft.fftn(data.reshape(grid.shape))
    for axis in range(grid.d):
        shape = [1] * grid.d
        shape[axis] = n
        phase = np.exp(-2j * np.pi * rep_axis(n) * s[axis] / n).reshape(shape)
        fhat = fhat * phase
    return np.fft.ifftn(fhat).ravel()


def frac_shift(f: Signal, s) -> Signal:
    """Translate by a real vector s via trigonometric interpolation.

    The DFT coefficient at k is multiplied by e^{-2i pi <rep(k), s>/n}; for
    integer s this is the exact cyclic shift. n-periodic in each component
    of s.
    """
    return Signal(f.grid, _frac_shift_core(f.data, f.grid, s))


def gaussian_window(grid: GridSpec) -> Signal:
    """Periodized Gaussian, l2-normalized; the canonical analysis window.

    Per axis: phi(j) = sum_{|m|<=3} exp(-pi (rep(j) + m n)^2 / n). The
    truncation error of the periodization is below 1e-15 for n >= 5.
    """
    n = grid.n
    r = rep_axis(n).astype(float)
    axis = np.zeros(n)
    for m in range(-3, 4):
        axis += np.exp(-np.pi * (r + m * n) ** 2 / n)
    data = axis
    for _ in range(grid.d - 1):
        data = np.multiply.outer(data, axis)
    data = data.ravel().astype(np.complex128)
    return Signal(grid, data / np.linalg.norm(data))


def doubled(grid: GridSpec) -> GridSpec:
    """The grid Z_n^{2d} on which symbols live as plain signals."""
    return GridSpec(2 * grid.d, grid.n, grid.mode)
