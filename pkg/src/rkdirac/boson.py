"""Ladder layer: creation/annihilation pair built from the Koopman/transfer pair.

The creation operator is 2**-0.5 times the Koopman operator and the
annihilation operator is 2**-0.5 times the transfer operator.  Their
commutator is half the projection onto the kernel of the transfer operator,
so the pair satisfies a generalized commutation relation in which the defect
acts only on the kernel (weight 1/2 there, zero on every lifted level) rather
than being the identity.

The companion anticommutator 0.5 * (L K + K L) restricts to the identity on
functions that do not depend on the first coordinate and preserves integrals
in general.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .dyadic import DyadicFunction, l2_dist, state_nw
from .transfer import koopman_apply, ruelle_apply
from .words import Word

SCALE = 2.0 ** -0.5


@dataclass(frozen=True)
class LadderConfig:
    """Bookkeeping for the generalized ladder pair.

    ``scale`` multiplies both the Koopman and transfer operators (scale**2 must
    be 1/2); ``level_weight`` is the chain weight n -> 2**(-n/2) and
    ``defect_weight`` the commutator defect weight: 1/2 on the kernel level,
    zero above it.
    """

    scale: float = SCALE

    def __post_init__(self):
        if abs(self.scale**2 - 0.5) > 1e-12:
            raise ValueError("ladder scale must square to 1/2")

    @staticmethod
    def level_weight(n: int) -> float:
        return 2.0 ** (-n / 2.0)

    @staticmethod
    def defect_weight(n: int) -> float:
        return 0.5 if n == 0 else 0.0


def creation(f: DyadicFunction) -> DyadicFunction:
    return SCALE * koopman_apply(f)


def annihilation(f: DyadicFunction) -> DyadicFunction:
    return SCALE * ruelle_apply(f)


def number_apply(f: DyadicFunction) -> DyadicFunction:
    """The number operator: creation after annihilation (0.5 * K L)."""
    return creation(annihilation(f))


def ccr_defect(f: DyadicFunction) -> DyadicFunction:
    """The commutator [B, B+] applied to f, evaluated from the ladder pair itself."""
    return annihilation(creation(f)) - creation(annihilation(f))


def car_anticommutator(f: DyadicFunction) -> DyadicFunction:
    """The anticommutator {B, B+} applied to f: 0.5 * (L K + K L) f."""
    return annihilation(creation(f)) + creation(annihilation(f))


def chain_shift_check(n: int, w: Optional[Word], tol: float = 1e-12) -> dict:
    """Verify the ladder identities on the chain state over w (None means the
    plain level state).

    Checks, each to tol:
      raise: B+ |n, w> = 2**-0.5 |n+1, w>
      lower: B |n, w> = 2**-0.5 |n-1, w> for n >= 1; B |0, w> = 0 for w a word
      power: (B+)^n |0, w> = 2**(-n/2) |n, w>
    For w = None and n = 0 the lowering identity is vacuous (nothing below the
    vacuum) and only the raising and power identities are checked.
    """
    state = state_nw(n, w)
    report = {"n": n, "w": str(w) if w is not None else "*", "errors": {}}
    raised = creation(state)
    report["errors"]["raise"] = l2_dist(raised, SCALE * state_nw(n + 1, w))
    if n >= 1:
        lowered = annihilation(state)
        report["errors"]["lower"] = l2_dist(lowered, SCALE * state_nw(n - 1, w))
    elif w is not None:
        report["errors"]["lower"] = l2_dist(annihilation(state), 0.0 * state)
    powered = state_nw(0, w)
    for _ in range(n):
        powered = creation(powered)
    report["errors"]["power"] = l2_dist(powered, 2.0 ** (-n / 2.0) * state)
    report["max_error"] = max(report["errors"].values())
    report["passed"] = report["max_error"] <= tol
    return report
