"""Heralded DV-CV hybrid entanglement.

Closed-form heralded states for cat inputs on beam-splitter schemes, and a
truncated-Fock simulator used to check them.
"""

from .errors import (
    CutoffTooSmall,
    DegenerateState,
    DvcvError,
    InfiniteCoefficient,
    InvalidConfig,
    NoSignChange,
    OutOfRange,
)
from .fock import FockVector, ModeLayout
from .hybrid import HybridState
from .kernels import BACKEND
from .schemes.single_photon import SchemeConfig
from .schemes.two_photon import SchemeBConfig
from .schemes.psi import PsiSchemeConfig

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CutoffTooSmall",
    "DegenerateState",
    "DvcvError",
    "FockVector",
    "HybridState",
    "InfiniteCoefficient",
    "InvalidConfig",
    "ModeLayout",
    "NoSignChange",
    "OutOfRange",
    "PsiSchemeConfig",
    "SchemeBConfig",
    "SchemeConfig",
]
