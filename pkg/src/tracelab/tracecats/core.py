"""Shared morphism types for the traced-category zoo.

Object conventions:
  * oplus-style categories (VECT_OPLUS_*, CPM_OPLUS, Q_OPLUS_*): an object is
    a tuple of positive component dimensions; the monoidal product is
    concatenation and the unit is the empty tuple (the zero object).
  * tensor-style categories (SREL_TENSOR, CPMS_TENSOR, FHILB_TENSOR,
    QS_TENSOR_SUB): an object is a positive integer; the monoidal product is
    multiplication and the unit is 1.

Components of a tensor product are always ordered lexicographically
(left-factor major).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Optional

import numpy as np

from .. import matcore


class CategoryId(str, Enum):
    VECT_OPLUS_INV = "VECT_OPLUS_INV"
    VECT_OPLUS_KERIM = "VECT_OPLUS_KERIM"
    SREL_TENSOR = "SREL_TENSOR"
    CPMS_TENSOR = "CPMS_TENSOR"
    CPM_OPLUS = "CPM_OPLUS"
    Q_OPLUS_TOTAL = "Q_OPLUS_TOTAL"
    Q_OPLUS_INV = "Q_OPLUS_INV"
    Q_OPLUS_KERIM = "Q_OPLUS_KERIM"
    QS_TENSOR_SUB = "QS_TENSOR_SUB"
    FHILB_TENSOR = "FHILB_TENSOR"


class AxiomId(str, Enum):
    Naturality = "Naturality"
    Dinaturality = "Dinaturality"
    VanishingI = "VanishingI"
    VanishingII = "VanishingII"
    Superposing = "Superposing"
    Yanking = "Yanking"
    Strength = "Strength"


class Reason(str, Enum):
    Singular = "Singular"
    InverseNotCP = "InverseNotCP"
    MassExceedsOne = "MassExceedsOne"
    ImageCondition = "ImageCondition"
    KernelCondition = "KernelCondition"
    NotInSubcategory = "NotInSubcategory"


class ObjectMismatchError(Exception):
    pass


@dataclass(frozen=True)
class BlockMorphism:
    """A matrix between oplus-structured objects.

    For VECT_* the data is an ordinary matrix between the total dimensions;
    for CPM/Q it is a transfer matrix between sums of squared dimensions,
    block-structured by component pairs.
    """

    dom: tuple
    cod: tuple
    data: np.ndarray


@dataclass(frozen=True)
class StochMorphism:
    """Sub-stochastic real matrix, indexed (cod x dom), column sums <= 1."""

    dom: int
    cod: int
    data: np.ndarray


@dataclass(frozen=True)
class DenseMorphism:
    """A plain linear map between Hilbert spaces (FHilb)."""

    dom: int
    cod: int
    data: np.ndarray


@dataclass(frozen=True)
class KrausMorphism:
    """A completely positive map given by a list of Kraus operators."""

    dom: int
    cod: int
    kraus: tuple

    @cached_property
    def transfer(self) -> np.ndarray:
        return matcore.transfer_from_kraus(list(self.kraus), self.dom, self.cod)


@dataclass(frozen=True)
class TraceOutcome:
    defined: bool
    value: Optional[object] = None
    reason: Optional[Reason] = None
    margin: Optional[float] = None

    @staticmethod
    def ok(value, margin: float | None = None) -> "TraceOutcome":
        return TraceOutcome(True, value=value, margin=margin)

    @staticmethod
    def fail(reason: Reason, margin: float | None = None) -> "TraceOutcome":
        return TraceOutcome(False, reason=reason, margin=margin)


def block_sizes_vect(obj: tuple) -> list[int]:
    return [int(d) for d in obj]


def block_sizes_cpm(obj: tuple) -> list[int]:
    return [int(d) * int(d) for d in obj]


def block_permutation(sizes, perm) -> np.ndarray:
    """Permutation matrix reordering direct-sum blocks.

    Same convention as matcore.factor_permutation: perm[i] is the source
    block of the new slot i.
    """
    total = int(sum(sizes))
    out = np.zeros((total, total), dtype=complex)
    old_off = np.concatenate([[0], np.cumsum(sizes)]).astype(int)
    pos = 0
    for i in perm:
        s = int(sizes[i])
        out[pos : pos + s, old_off[i] : old_off[i] + s] = np.eye(s)
        pos += s
    return out
