"""Shared T-gate cost algebra.

All tallies are exact Python integers, so first-quantized estimates in the
1e20+ range never overflow or lose digits.
"""
from __future__ import annotations

import math
from typing import Iterable, Mapping

# Snap floating values this close to an integer before taking a ceiling, so
# that e.g. 10 + 4*log2(2**k) is not pushed up by one ulp.
_CEIL_TOL = 1e-9


def ceil_int(x: float, tol: float = _CEIL_TOL) -> int:
    """Ceiling of ``x`` that treats values within ``tol`` of an integer as exact."""
    r = round(x)
    if abs(x - r) <= tol:
        return int(r)
    return int(math.ceil(x))


def clog2(x: float) -> int:
    """Exact ``ceil(log2(x))`` for positive integers, snapped ceiling otherwise."""
    if isinstance(x, int) and x >= 1:
        return (x - 1).bit_length()
    return ceil_int(math.log2(x))


def flog2(n: int) -> int:
    """``floor(log2(n))`` for a positive integer."""
    if n < 1:
        raise ValueError(f"floor(log2) needs n >= 1, got {n}")
    return n.bit_length() - 1


class TCount:
    """Nonnegative integer T-gate tally with an ordered, labeled breakdown.

    An empty breakdown means the count is unlabeled. When a labeled and an
    unlabeled count are added, the unlabeled total is kept under
    ``"unlabeled"`` so that the breakdown still sums to the total.
    """

    __slots__ = ("_total", "_parts")

    def __init__(self, total: int, breakdown: Mapping[str, int] | Iterable[tuple[str, int]] | None = None):
        if isinstance(total, bool) or not isinstance(total, int):
            raise TypeError(f"T count must be an integer, got {type(total).__name__}")
        if total < 0:
            raise ValueError(f"T count must be nonnegative, got {total}")
        parts: dict[str, int] = {}
        if breakdown is not None:
            items = breakdown.items() if isinstance(breakdown, Mapping) else breakdown
            for label, n in items:
                if isinstance(n, bool) or not isinstance(n, int) or n < 0:
                    raise ValueError(f"breakdown entry {label!r} must be a nonnegative integer, got {n!r}")
                parts[label] = parts.get(label, 0) + n
        if parts and sum(parts.values()) != total:
            raise ValueError(f"breakdown sums to {sum(parts.values())}, total is {total}")
        self._total = total
        self._parts = tuple(parts.items())

    @classmethod
    def from_parts(cls, parts: Mapping[str, int] | Iterable[tuple[str, int]]) -> "TCount":
        items = list(parts.items() if isinstance(parts, Mapping) else parts)
        return cls(sum(n for _, n in items), items)

    @classmethod
    def labeled(cls, label: str, n: int) -> "TCount":
        return cls(n, [(label, n)])

    @property
    def total(self) -> int:
        return self._total

    @property
    def breakdown(self) -> dict[str, int]:
        return dict(self._parts)

    def relabel(self, label: str) -> "TCount":
        """Collapse the breakdown into a single entry."""
        return TCount.labeled(label, self._total)

    def _labeled_parts(self) -> tuple[tuple[str, int], ...]:
        if self._parts or self._total == 0:
            return self._parts
        return (("unlabeled", self._total),)

    def __add__(self, other: "TCount") -> "TCount":
        if not isinstance(other, TCount):
            return NotImplemented
        if not self._parts and not other._parts:
            return TCount(self._total + other._total)
        return TCount(self._total + other._total, self._labeled_parts() + other._labeled_parts())

    def __mul__(self, k: int) -> "TCount":
        if isinstance(k, bool) or not isinstance(k, int):
            return NotImplemented
        if k < 0:
            raise ValueError(f"T counts can only be scaled by nonnegative integers, got {k}")
        return TCount(self._total * k, [(label, n * k) for label, n in self._parts])

    __rmul__ = __mul__

    def __int__(self) -> int:
        return self._total

    def __eq__(self, other: object) -> bool:
        if isinstance(other, TCount):
            return self._total == other._total and dict(self._parts) == dict(other._parts)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self._total, frozenset(self._parts)))

    def __repr__(self) -> str:
        if not self._parts:
            return f"TCount({self._total})"
        return f"TCount({self._total}, {dict(self._parts)!r})"


ZERO = TCount(0)


def rotation_t_cost(eps_rot: float) -> int:
    """T gates to synthesize one arbitrary-angle rotation to error ``eps_rot``.

    Uses the ``ceil(10 + 4 log2(1/eps))`` model; the ceiling is taken per
    rotation.
    """
    if not (0.0 < eps_rot <= 1.0):
        raise ValueError(f"rotation synthesis error must lie in (0, 1], got {eps_rot}")
    return ceil_int(10.0 - 4.0 * math.log2(eps_rot))


def mcx_t_cost(k: int) -> int:
    """T gates for an X gate controlled on ``k`` qubits (24 per control)."""
    if k < 1:
        raise ValueError(f"multi-controlled X needs at least one control, got {k}")
    return 24 * k


def qrom_erase_cost(x: int) -> int:
    """Cost of erasing the output of an ``x``-entry QROM, ``min_k 2^k + ceil(x / 2^k)``."""
    if x < 1:
        raise ValueError(f"QROM needs at least one entry, got {x}")
    best = None
    for k in range(clog2(x) + 2):
        cost = (1 << k) + -(-x >> k)
        if best is None or cost < best:
            best = cost
    return best
