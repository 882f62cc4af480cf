"""The transfer (Ruelle) and Koopman operators and their operator algebra.

Conventions:

* ``ruelle_apply`` averages over the two shift preimages,
  ``(L f)[u] = (f[0u] + f[1u]) / 2``; it fixes constants, so it acts as the
  identity on depth-0 functions.
* ``koopman_apply`` composes with the shift, ``(K f)[a u] = f[u]``; it raises
  the depth by one and preserves inner products.
* Operators never compress their codomain: when an output is representable at
  a coarser depth it may be returned there, but assembled matrices always
  refine every column to a common output depth, which can only be finer.
  Refinement is isometric, so norms are unaffected.

Matrix assembly works in orthonormal coordinates: the depth-d coordinate
vector of f is ``values(f) * 2**(-d/2)``, i.e. coefficients over the basis
of normalized indicators ``2**(d/2) * chi_[w]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from .dyadic import (
    DyadicFunction,
    MAX_DEPTH,
    inner,
    l2_norm,
    pointwise_mul,
    refine,
)


def ruelle_apply(f: DyadicFunction) -> DyadicFunction:
    """Average over preimages; output depth max(d - 1, 0)."""
    if f.depth == 0:
        return DyadicFunction(0, f.values)
    half = 1 << (f.depth - 1)
    return DyadicFunction(f.depth - 1, 0.5 * (f.values[:half] + f.values[half:]))


def koopman_apply(f: DyadicFunction) -> DyadicFunction:
    """Compose with the shift; output depth d + 1."""
    if f.depth + 1 > MAX_DEPTH:
        raise ValueError(f"depth cap {MAX_DEPTH} exceeded")
    return DyadicFunction(f.depth + 1, np.concatenate([f.values, f.values]))


def adjoint_check(f: DyadicFunction, g: DyadicFunction) -> Tuple[float, float]:
    """Return (<Kf, g>, <f, Lg>); the two sides agree since K is the adjoint of L."""
    return inner(koopman_apply(f), g), inner(f, ruelle_apply(g))


def cond_expectation(n: int, f: DyadicFunction) -> DyadicFunction:
    """K^n L^n f: conditional expectation onto functions ignoring the first n symbols."""
    if n < 1:
        raise ValueError("conditional expectation order must be >= 1")
    g = f
    for _ in range(n):
        g = ruelle_apply(g)
    for _ in range(n):
        g = koopman_apply(g)
    return g


def kernel_projection(f: DyadicFunction) -> DyadicFunction:
    """Orthogonal projection onto ker L, computed as f - K L f."""
    return f - cond_expectation(1, f)


def mult_apply(f: DyadicFunction, g: DyadicFunction) -> DyadicFunction:
    """Multiplication operator M_f applied to g."""
    return pointwise_mul(f, g)


def projection_apply(psi: DyadicFunction, phi: DyadicFunction) -> DyadicFunction:
    """Rank-one projection <phi, psi> psi; psi must be a unit vector."""
    _require_unit(psi)
    return psi * inner(phi, psi)


def _require_unit(psi: DyadicFunction, tol: float = 1e-9) -> None:
    n = l2_norm(psi)
    if abs(n - 1.0) > tol:
        raise ValueError(f"projection vector must have unit norm, got {n!r}")


# ---------------------------------------------------------------------------
# Operator specifications: an immutable, lazily applied operator algebra.


class OperatorSpec:
    """A linear operator between depth spaces, applied lazily.

    Subclasses provide ``apply`` (exact application to a DyadicFunction),
    ``out_depth`` (the assembled output depth for a given input depth) and
    ``adjoint`` (the symbolic Hilbert adjoint, exact on the full space).
    """

    def apply(self, f: DyadicFunction) -> DyadicFunction:
        raise NotImplementedError

    def out_depth(self, in_depth: int) -> int:
        raise NotImplementedError

    def adjoint(self) -> "OperatorSpec":
        raise NotImplementedError

    def describe(self) -> str:
        return repr(self)


@dataclass(frozen=True)
class Ruelle(OperatorSpec):
    def apply(self, f):
        return ruelle_apply(f)

    def out_depth(self, d):
        return max(d - 1, 0)

    def adjoint(self):
        return Koopman()

    def describe(self):
        return "ruelle"


@dataclass(frozen=True)
class Koopman(OperatorSpec):
    def apply(self, f):
        return koopman_apply(f)

    def out_depth(self, d):
        return d + 1

    def adjoint(self):
        return Ruelle()

    def describe(self):
        return "koopman"


@dataclass(frozen=True, eq=False)
class Mult(OperatorSpec):
    f: DyadicFunction

    def apply(self, g):
        return mult_apply(self.f, g)

    def out_depth(self, d):
        return max(d, self.f.depth)

    def adjoint(self):
        return self

    def describe(self):
        return f"mult(depth={self.f.depth})"


@dataclass(frozen=True, eq=False)
class Proj(OperatorSpec):
    psi: DyadicFunction

    def __post_init__(self):
        _require_unit(self.psi)

    def apply(self, phi):
        return projection_apply(self.psi, phi)

    def out_depth(self, d):
        # Enlarged so that the assembled matrix is square (and symmetric)
        # whenever the input space contains psi.
        return max(d, self.psi.depth)

    def adjoint(self):
        return self

    def describe(self):
        return f"proj(depth={self.psi.depth})"


@dataclass(frozen=True)
class CondExp(OperatorSpec):
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("conditional expectation order must be >= 1")

    def apply(self, f):
        return cond_expectation(self.n, f)

    def out_depth(self, d):
        return max(d, self.n)

    def adjoint(self):
        return self

    def describe(self):
        return f"condexp({self.n})"


@dataclass(frozen=True)
class KernelProj(OperatorSpec):
    def apply(self, f):
        return kernel_projection(f)

    def out_depth(self, d):
        return max(d, 1)

    def adjoint(self):
        return self

    def describe(self):
        return "kernel_proj"


@dataclass(frozen=True, eq=False)
class Compose(OperatorSpec):
    """Composition, rightmost applied first; Compose(()) is the identity."""

    ops: Tuple[OperatorSpec, ...] = ()

    def __init__(self, ops: Sequence[OperatorSpec] = ()):
        object.__setattr__(self, "ops", tuple(ops))

    def apply(self, f):
        g = f
        for op in reversed(self.ops):
            g = op.apply(g)
        return g

    def out_depth(self, d):
        for op in reversed(self.ops):
            d = op.out_depth(d)
        return d

    def adjoint(self):
        return Compose(tuple(op.adjoint() for op in reversed(self.ops)))

    def describe(self):
        return "identity" if not self.ops else "(" + " . ".join(op.describe() for op in self.ops) + ")"


@dataclass(frozen=True, eq=False)
class Sum(OperatorSpec):
    """Weighted sum; members are promoted to a common output depth."""

    ops: Tuple[OperatorSpec, ...]
    weights: Tuple[float, ...]

    def __init__(self, ops: Sequence[OperatorSpec], weights: Sequence[float] = ()):
        ops = tuple(ops)
        weights = tuple(float(x) for x in weights) if weights else (1.0,) * len(ops)
        if len(weights) != len(ops):
            raise ValueError("one weight per operator required")
        object.__setattr__(self, "ops", ops)
        object.__setattr__(self, "weights", weights)

    def apply(self, f):
        if not self.ops:
            return DyadicFunction(f.depth, np.zeros_like(f.values))
        parts = [op.apply(f) for op in self.ops]
        depth = max(p.depth for p in parts)
        vals = np.zeros(1 << depth)
        for w, p in zip(self.weights, parts):
            vals += w * refine(p, depth).values
        return DyadicFunction(depth, vals)

    def out_depth(self, d):
        return max((op.out_depth(d) for op in self.ops), default=d)

    def adjoint(self):
        return Sum(tuple(op.adjoint() for op in self.ops), self.weights)

    def describe(self):
        terms = " + ".join(f"{w:g}*{op.describe()}" for w, op in zip(self.weights, self.ops))
        return f"[{terms}]" if terms else "zero"


@dataclass(frozen=True, eq=False)
class Adjoint(OperatorSpec):
    inner_op: OperatorSpec

    def _resolved(self) -> OperatorSpec:
        return self.inner_op.adjoint()

    def apply(self, f):
        return self._resolved().apply(f)

    def out_depth(self, d):
        return self._resolved().out_depth(d)

    def adjoint(self):
        return self.inner_op

    def describe(self):
        return f"adjoint({self.inner_op.describe()})"


def identity() -> Compose:
    return Compose(())


def scaled(op: OperatorSpec, weight: float) -> Sum:
    return Sum((op,), (weight,))


def commutator_with_K(a: OperatorSpec) -> Sum:
    """K A - A K, as a lazily applied spec (depth d -> d + 1 for square A)."""
    return Sum((Compose((Koopman(), a)), Compose((a, Koopman()))), (1.0, -1.0))


def commutator_with_L(a: OperatorSpec) -> Sum:
    """L A - A L, as a lazily applied spec."""
    return Sum((Compose((Ruelle(), a)), Compose((a, Ruelle()))), (1.0, -1.0))


def dirac_blocks(a: OperatorSpec) -> Tuple[Sum, Sum]:
    """The two off-diagonal blocks (K A - A K, L A - A L) of the Dirac commutator."""
    return commutator_with_K(a), commutator_with_L(a)


# ---------------------------------------------------------------------------
# Matrix assembly.


@dataclass(frozen=True, eq=False)
class AssembledMap:
    """A dense matrix of an operator between depth spaces, orthonormal coordinates."""

    in_depth: int
    out_depth: int
    matrix: np.ndarray

    def __post_init__(self):
        expected = (1 << self.out_depth, 1 << self.in_depth)
        if self.matrix.shape != expected:
            raise ValueError(f"matrix shape {self.matrix.shape} != {expected}")
        if not np.all(np.isfinite(self.matrix)):
            raise ValueError("matrix entries must be finite")


def coords(f: DyadicFunction, depth: int) -> np.ndarray:
    """Orthonormal coordinates of f in the depth-d space (requires depth >= f.depth)."""
    return refine(f, depth).values * 2.0 ** (-depth / 2.0)


def from_coords(depth: int, vec: np.ndarray) -> DyadicFunction:
    return DyadicFunction(depth, np.asarray(vec, dtype=float) * 2.0 ** (depth / 2.0))


def assemble(op: OperatorSpec, in_depth: int) -> AssembledMap:
    """Materialize op on the depth-in_depth space as a dense matrix.

    Column j is the image of the normalized indicator of cylinder j, expanded
    in orthonormal coordinates at ``op.out_depth(in_depth)``.
    """
    if not 0 <= in_depth <= MAX_DEPTH:
        raise ValueError(f"depth {in_depth} outside [0, {MAX_DEPTH}]")
    out_depth = op.out_depth(in_depth)
    if out_depth > MAX_DEPTH:
        raise ValueError(f"depth cap {MAX_DEPTH} exceeded")
    n_in = 1 << in_depth
    scale = 2.0 ** (in_depth / 2.0)
    matrix = np.zeros((1 << out_depth, n_in))
    basis = np.zeros(n_in)
    for j in range(n_in):
        basis[:] = 0.0
        basis[j] = scale
        image = op.apply(DyadicFunction(in_depth, basis))
        matrix[:, j] = coords(image, out_depth)
    return AssembledMap(in_depth=in_depth, out_depth=out_depth, matrix=matrix)
