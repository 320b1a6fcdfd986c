"""Dense complex linear algebra substrate.

All linear maps between operator spaces are kept in "transfer matrix" form
using the column-stacking convention:

    vec(A) stacks the columns of A, so vec(ABC) = (C^T otimes A) vec(B).

A completely positive map rho -> sum_i K_i rho K_i^dagger therefore has the
transfer matrix sum_i conj(K_i) otimes K_i.  The Choi matrix is obtained from
the transfer matrix by an index reshuffle.

Tolerances are carried explicitly (Tol): entrywise equality at eq_tol,
rank/subspace decisions at a singular-value cutoff of rank_tol relative to the
largest singular value, and positivity decisions with an eigenvalue floor of
psd_tol.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
import scipy.linalg


class MatError(Exception):
    pass


class SingularError(MatError):
    pass


class NotHermitianError(MatError):
    pass


class NoSolutionError(MatError):
    pass


class NotPSDError(MatError):
    pass


class DimMismatchError(MatError):
    pass


@dataclass(frozen=True)
class Tol:
    eq_tol: float = 1e-8
    rank_tol: float = 1e-9
    psd_tol: float = 1e-9

    def __post_init__(self):
        if not (self.eq_tol > 0 and self.rank_tol > 0 and self.psd_tol > 0):
            raise ValueError("all tolerances must be strictly positive")


DEFAULT_TOL = Tol()


def as_complex(a) -> np.ndarray:
    return np.asarray(a, dtype=complex)


def eye(n: int) -> np.ndarray:
    return np.eye(n, dtype=complex)


def dagger(a: np.ndarray) -> np.ndarray:
    return as_complex(a).conj().T


def kron(a, b) -> np.ndarray:
    return np.kron(as_complex(a), as_complex(b))


def direct_sum(a, b) -> np.ndarray:
    a = as_complex(a)
    b = as_complex(b)
    out = np.zeros((a.shape[0] + b.shape[0], a.shape[1] + b.shape[1]), dtype=complex)
    out[: a.shape[0], : a.shape[1]] = a
    out[a.shape[0] :, a.shape[1] :] = b
    return out


def max_abs_diff(a, b) -> float:
    a = as_complex(a)
    b = as_complex(b)
    if a.shape != b.shape:
        raise DimMismatchError(f"shape mismatch {a.shape} vs {b.shape}")
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - b)))


def mat_equal(a, b, tol: Tol = DEFAULT_TOL) -> bool:
    return max_abs_diff(a, b) <= tol.eq_tol


def spectral_norm(a) -> float:
    a = as_complex(a)
    if a.size == 0:
        return 0.0
    return float(np.linalg.norm(a, 2))


def inverse(a, tol: Tol = DEFAULT_TOL) -> np.ndarray:
    """Inverse of a square matrix; raises SingularError below the rank cutoff."""
    a = as_complex(a)
    if a.shape[0] != a.shape[1]:
        raise DimMismatchError("inverse requires a square matrix")
    if a.shape[0] == 0:
        return a.copy()
    s = np.linalg.svd(a, compute_uv=False)
    if s[0] == 0.0 or s[-1] < tol.rank_tol * s[0]:
        raise SingularError(f"smallest singular value {s[-1]:.3e} below cutoff")
    return np.linalg.inv(a)


def singularity_margin(a, tol: Tol = DEFAULT_TOL) -> float:
    """Signed distance of the invertibility decision from its threshold.

    Positive means comfortably invertible, negative means rejected.
    """
    a = as_complex(a)
    if a.shape[0] == 0:
        return float("inf")
    s = np.linalg.svd(a, compute_uv=False)
    if s[0] == 0.0:
        return -tol.rank_tol
    return float(s[-1] - tol.rank_tol * s[0])


def min_eig_hermitian(h, tol: Tol = DEFAULT_TOL) -> float:
    h = as_complex(h)
    if h.shape[0] != h.shape[1]:
        raise DimMismatchError("expected a square matrix")
    if h.shape[0] == 0:
        return float("inf")
    if max_abs_diff(h, dagger(h)) > tol.eq_tol:
        raise NotHermitianError("matrix is not Hermitian within eq_tol")
    w = np.linalg.eigvalsh((h + dagger(h)) / 2)
    return float(w[0])


def null_space(a, tol: Tol = DEFAULT_TOL) -> list[np.ndarray]:
    """Orthonormal basis of ker(a), as a list of column vectors."""
    a = as_complex(a)
    if a.shape[1] == 0:
        return []
    if a.shape[0] == 0 or np.all(a == 0):
        return [eye(a.shape[1])[:, j] for j in range(a.shape[1])]
    ns = scipy.linalg.null_space(a, rcond=tol.rank_tol)
    return [ns[:, j] for j in range(ns.shape[1])]


def _rank_with_cutoff(a, cutoff: float) -> int:
    if a.size == 0:
        return 0
    s = np.linalg.svd(as_complex(a), compute_uv=False)
    return int(np.sum(s > cutoff))


def image_contains(a, b, tol: Tol = DEFAULT_TOL) -> bool:
    """True iff every column of b lies in the column span of a."""
    a = as_complex(a)
    b = as_complex(b)
    if a.shape[0] != b.shape[0]:
        raise DimMismatchError("row counts must agree")
    if b.size == 0 or not np.any(np.abs(b) > 0):
        return True
    aug = np.hstack([a, b]) if a.size else b
    s_aug = np.linalg.svd(aug, compute_uv=False)
    cutoff = tol.rank_tol * (s_aug[0] if s_aug.size else 1.0)
    return _rank_with_cutoff(a, cutoff) == _rank_with_cutoff(aug, cutoff)


def solve_consistent(a, b, tol: Tol = DEFAULT_TOL) -> np.ndarray:
    """Minimum-norm x with a @ x ~= b, or NoSolutionError if inconsistent."""
    a = as_complex(a)
    b = as_complex(b)
    if a.shape[0] != b.shape[0]:
        raise DimMismatchError("row counts must agree")
    if a.shape[1] == 0:
        x = np.zeros((0,) + b.shape[1:], dtype=complex)
    elif a.shape[0] == 0:
        x = np.zeros((a.shape[1],) + b.shape[1:], dtype=complex)
    else:
        x = np.linalg.lstsq(a, b, rcond=tol.rank_tol)[0]
    resid = a @ x - b
    if resid.size and np.max(np.abs(resid)) > tol.eq_tol:
        raise NoSolutionError(f"least-squares residual {np.max(np.abs(resid)):.3e}")
    return x


def factor_permutation(dims: Sequence[int], perm: Sequence[int]) -> np.ndarray:
    """Unitary permutation matrix reordering tensor factors.

    Convention: perm[i] is the source slot of the new slot i, so the result P
    satisfies P (v_0 otimes ... otimes v_{n-1}) = v_{perm[0]} otimes ... and
    the output factor dims are [dims[perm[i]] for i].
    """
    dims = list(dims)
    if sorted(perm) != list(range(len(dims))):
        raise DimMismatchError("perm must be a bijection on factor positions")
    n = int(np.prod(dims)) if dims else 1
    if not dims:
        return eye(1)
    src = np.arange(n).reshape(dims).transpose(perm).reshape(-1)
    p = np.zeros((n, n), dtype=complex)
    p[np.arange(n), src] = 1.0
    return p


def compose_perms(p: Sequence[int], q: Sequence[int]) -> list[int]:
    """Permutation such that applying p first then q equals applying the result.

    With the factor_permutation convention this is (p then q)[i] = p[q[i]].
    """
    return [p[i] for i in q]


def op_partial_trace(
    f, dom_factors: Sequence[int], cod_factors: Sequence[int], traced_index: int
) -> np.ndarray:
    """Contract one matching tensor-index pair of an operator matrix.

    f maps the tensor product of dom_factors to that of cod_factors; the
    factor at position traced_index (in both lists) is traced out:
    result[j, l] = sum_k f[(j, k), (l, k)].
    """
    f = as_complex(f)
    dom_factors = list(dom_factors)
    cod_factors = list(cod_factors)
    if dom_factors[traced_index] != cod_factors[traced_index]:
        raise DimMismatchError("traced factor dims must agree in domain and codomain")
    if f.shape != (int(np.prod(cod_factors)), int(np.prod(dom_factors))):
        raise DimMismatchError("matrix shape does not match factor lists")
    nc = len(cod_factors)
    t = f.reshape(cod_factors + dom_factors)
    res = np.trace(t, axis1=traced_index, axis2=nc + traced_index)
    rem_cod = [d for i, d in enumerate(cod_factors) if i != traced_index]
    rem_dom = [d for i, d in enumerate(dom_factors) if i != traced_index]
    return res.reshape(int(np.prod(rem_cod)), int(np.prod(rem_dom)))


# --------------------------------------------------------------------------
# vec / transfer / Choi / Kraus conversions (column stacking throughout)
# --------------------------------------------------------------------------


def vec(m) -> np.ndarray:
    return as_complex(m).reshape(-1, order="F")


def unvec(v, rows: int, cols: int | None = None) -> np.ndarray:
    if cols is None:
        cols = rows
    return as_complex(v).reshape((rows, cols), order="F")


def transfer_from_kraus(kraus: Sequence[np.ndarray], d_in: int, d_out: int) -> np.ndarray:
    t = np.zeros((d_out * d_out, d_in * d_in), dtype=complex)
    for k in kraus:
        k = as_complex(k)
        if k.shape != (d_out, d_in):
            raise DimMismatchError("Kraus operator shape mismatch")
        t += np.kron(k.conj(), k)
    return t


def transfer_apply(t, rho, d_in: int, d_out: int) -> np.ndarray:
    return unvec(as_complex(t) @ vec(rho), d_out)


def transfer_tensor(tf, tg, din_f: int, dout_f: int, din_g: int, dout_g: int) -> np.ndarray:
    """Transfer matrix of the tensor product of two operator maps.

    The plain Kronecker product of the transfers acts on vec(rho_f) otimes
    vec(rho_g); the joint map acts on vec(rho_f otimes rho_g), which differs
    by interleaving the column/row factors.
    """
    tf = as_complex(tf)
    tg = as_complex(tg)
    # joint-vec index order is (col_f, col_g, row_f, row_g); the split order
    # needed by tf (x) tg is (col_f, row_f, col_g, row_g)
    p_in = factor_permutation([din_f, din_g, din_f, din_g], [0, 2, 1, 3])
    p_out = factor_permutation([dout_f, dout_g, dout_f, dout_g], [0, 2, 1, 3])
    return p_out.conj().T @ np.kron(tf, tg) @ p_in


def transfer_dual_on_identity(t, d_in: int, d_out: int) -> np.ndarray:
    """The operator A with tr(F(rho)) = tr(A rho), i.e. the dual map at I.

    For a Kraus presentation this is sum_i K_i^dagger K_i.
    """
    return unvec(dagger(as_complex(t)) @ vec(eye(d_out)), d_in)


def choi(transfer, d_in: int, d_out: int) -> np.ndarray:
    """Choi matrix (I otimes Phi applied to the unnormalized max. entangled state)."""
    t = as_complex(transfer)
    if t.shape != (d_out * d_out, d_in * d_in):
        raise DimMismatchError("transfer shape does not match the stated dims")
    t4 = t.reshape(d_out, d_out, d_in, d_in)  # (colOut, rowOut, colIn, rowIn)
    return t4.transpose(3, 1, 2, 0).reshape(d_in * d_out, d_in * d_out)


def is_completely_positive(transfer, d_in: int, d_out: int, tol: Tol = DEFAULT_TOL) -> bool:
    c = choi(transfer, d_in, d_out)
    try:
        return min_eig_hermitian(c, tol) >= -tol.psd_tol
    except NotHermitianError:
        return False


def cp_margin(transfer, d_in: int, d_out: int, tol: Tol = DEFAULT_TOL) -> float:
    """Signed distance of the CP decision from its threshold (min eig + psd_tol)."""
    c = choi(transfer, d_in, d_out)
    if max_abs_diff(c, dagger(c)) > tol.eq_tol:
        return -float("inf")
    if c.shape[0] == 0:
        return float("inf")
    w = np.linalg.eigvalsh((c + dagger(c)) / 2)
    return float(w[0] + tol.psd_tol)


def kraus_from_choi(c, d_in: int, d_out: int, tol: Tol = DEFAULT_TOL) -> list[np.ndarray]:
    c = as_complex(c)
    if c.shape != (d_in * d_out, d_in * d_out):
        raise DimMismatchError("Choi matrix shape mismatch")
    if c.shape[0] == 0:
        return []
    h = (c + dagger(c)) / 2
    w, v = np.linalg.eigh(h)
    scale = max(float(np.max(np.abs(w))), 1.0)
    if w[0] < -max(tol.psd_tol, tol.psd_tol * scale):
        raise NotPSDError(f"Choi min eigenvalue {w[0]:.3e}")
    out = []
    cutoff = tol.rank_tol * max(float(np.max(np.abs(w))), 0.0)
    for lam, col in zip(w, v.T):
        if lam <= max(cutoff, 0.0):
            continue
        # Choi index n = i * d_out + r encodes (input basis i, output basis r)
        out.append(np.sqrt(lam) * col.reshape(d_in, d_out).T)
    return out
