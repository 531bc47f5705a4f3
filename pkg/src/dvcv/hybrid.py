"""Conditional states as a short list of branches.

A heralded state of every scheme here has the form
sum_i w_i |cv_i>|aux_i>|dv_i>, where the dv_i are orthonormal qubit states
(a photon present or absent, or one photon in one of two rails). The
branch CV parts are normalized; the weights carry all amplitudes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .errors import LayoutMismatch
from .fock import FockVector, ModeLayout

VACUUM_PHOTON_LABELS = ("vacuum", "photon")
TWO_RAIL_LABELS = ("01", "10")


@dataclass(frozen=True, eq=False)
class Branch:
    label: str
    dv_index: int
    weight: complex
    cv: FockVector
    aux: FockVector | None = None


@dataclass(frozen=True, eq=False)
class HybridState:
    """Normalized branch decomposition of a heralded state.

    ``total_norm`` is the overall factor N^(t) = (|a0|^2 + |a1|^2 |B|^2)^(-1/2)
    and ``coefficients`` holds the scheme's named closed-form quantities.
    """

    branches: tuple[Branch, ...]
    total_norm: float
    probability: float | None = None
    coefficients: Mapping[str, complex] = field(default_factory=dict)
    dv_labels: tuple[str, ...] = VACUUM_PHOTON_LABELS
    meta: Mapping[str, object] = field(default_factory=dict)

    @property
    def B(self) -> complex | None:
        return self.coefficients.get("B")

    @property
    def cv_cutoff(self) -> int:
        return max(b.cv.layout.cutoffs[0] for b in self.branches)

    @property
    def has_aux(self) -> bool:
        return any(b.aux is not None for b in self.branches)

    def weight_norm(self) -> float:
        return math.sqrt(sum(abs(b.weight) ** 2 for b in self.branches))

    def branch(self, label: str) -> Branch:
        for b in self.branches:
            if b.label == label:
                return b
        raise KeyError(label)

    def joint_vector(self, cv_cutoff: int | None = None, aux_cutoff: int | None = None) -> FockVector:
        """Amplitudes over (cv, [aux], dv) with a two-level dv axis."""
        cv_cutoff = self.cv_cutoff if cv_cutoff is None else cv_cutoff
        dims: list[int] = [cv_cutoff]
        if self.has_aux:
            if aux_cutoff is None:
                aux_cutoff = max(b.aux.layout.cutoffs[0] for b in self.branches if b.aux)
            dims.append(aux_cutoff)
        dims.append(len(self.dv_labels) - 1)
        layout = ModeLayout(tuple(dims))
        out = np.zeros(layout.dims, dtype=np.complex128)
        for b in self.branches:
            if b.weight == 0:
                continue
            part = b.cv.resized([cv_cutoff]).tensor
            if self.has_aux:
                if b.aux is None:
                    raise LayoutMismatch("every branch needs an aux mode when any has one")
                part = np.multiply.outer(part, b.aux.resized([aux_cutoff]).tensor)
            out[..., b.dv_index] += b.weight * part
        return FockVector(layout, out)

    def density_blocks(self) -> np.ndarray:
        """Pure-state tensor reshaped to (cv-side dim, dv dim)."""
        v = self.joint_vector()
        return v.tensor.reshape(-1, v.layout.dims[-1])


def from_unnormalized(
    parts: list[tuple[str, int, complex, FockVector, FockVector | None]],
    *,
    total_norm: float,
    probability: float | None,
    coefficients: Mapping[str, complex],
    dv_labels: tuple[str, ...] = VACUUM_PHOTON_LABELS,
    meta: Mapping[str, object] | None = None,
) -> HybridState:
    """Assemble a HybridState from (label, dv, weight, cv, aux) with unit cv/aux."""
    s = math.sqrt(sum(abs(w) ** 2 for _, _, w, _, _ in parts))
    branches = tuple(Branch(lbl, dv, w / s, cv, aux) for lbl, dv, w, cv, aux in parts)
    return HybridState(
        branches=branches,
        total_norm=total_norm,
        probability=probability,
        coefficients=dict(coefficients),
        dv_labels=dv_labels,
        meta=dict(meta or {}),
    )
