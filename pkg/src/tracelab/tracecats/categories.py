"""Executable (partially) traced symmetric monoidal categories.

Every category instance exposes one uniform interface: monoidal data
(unit/tensor/symmetry/permutations), composition, equality at tolerance,
membership in the trace class with a failure reason and a signed margin,
and the partial trace itself.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .. import matcore
from ..matcore import Tol, DEFAULT_TOL
from .core import (
    AxiomId,
    BlockMorphism,
    CategoryId,
    DenseMorphism,
    KrausMorphism,
    ObjectMismatchError,
    Reason,
    StochMorphism,
    TraceOutcome,
    block_permutation,
)


class NoConvergenceError(Exception):
    """The Q(oplus) trace series failed to converge within max_iter terms."""

    def __init__(self, last_bound: float):
        super().__init__(f"series did not converge; last term bound {last_bound:.3e}")
        self.last_bound = last_bound


class Category:
    cat_id: CategoryId
    default_dim_max: int

    # -- monoidal structure ------------------------------------------------
    def unit(self):
        raise NotImplementedError

    def tensor_obj(self, x, y):
        raise NotImplementedError

    def tensor_obj_list(self, objs):
        out = self.unit()
        for o in objs:
            out = self.tensor_obj(out, o)
        return out

    def identity(self, x):
        raise NotImplementedError

    def compose(self, g, f):
        raise NotImplementedError

    def tensor(self, f, g):
        raise NotImplementedError

    def permute(self, objs, perm):
        """The structural iso reordering the listed tensor factors."""
        raise NotImplementedError

    def symmetry(self, x, y):
        return self.permute([x, y], [1, 0])

    # -- comparison ----------------------------------------------------------
    def data_of(self, f) -> np.ndarray:
        raise NotImplementedError

    def deviation(self, f, g) -> float:
        return matcore.max_abs_diff(self.data_of(f), self.data_of(g))

    def equal(self, f, g, tol: Tol = DEFAULT_TOL) -> bool:
        return self.deviation(f, g) <= tol.eq_tol

    # -- trace ---------------------------------------------------------------
    def in_trace_class(self, f, x, y, u, tol: Tol = DEFAULT_TOL):
        """Returns (member: bool, reason: Reason | None, margin: float | None)."""
        raise NotImplementedError

    def trace(self, f, x, y, u, tol: Tol = DEFAULT_TOL) -> TraceOutcome:
        raise NotImplementedError

    # -- sampling ------------------------------------------------------------
    def random_object(self, rng, dim_max: int):
        raise NotImplementedError

    def random_morphism(self, rng, dom, cod, contract: bool = False):
        raise NotImplementedError

    # -- misc ------------------------------------------------------------
    def serialize(self, f) -> dict:
        data = matcore.as_complex(self.data_of(f))
        return {
            "dom": list(f.dom) if isinstance(f.dom, tuple) else f.dom,
            "cod": list(f.cod) if isinstance(f.cod, tuple) else f.cod,
            "re": np.real(data).tolist(),
            "im": np.imag(data).tolist(),
        }

    def _require(self, cond, msg):
        if not cond:
            raise ObjectMismatchError(msg)


# ==========================================================================
# oplus-style categories
# ==========================================================================


class OplusCategory(Category):
    """Common machinery for categories whose monoidal product is oplus."""

    def block_size(self, d: int) -> int:
        raise NotImplementedError

    def obj_dim(self, obj) -> int:
        return sum(self.block_size(d) for d in obj)

    def unit(self):
        return ()

    def tensor_obj(self, x, y):
        return tuple(x) + tuple(y)

    def identity(self, x):
        return BlockMorphism(tuple(x), tuple(x), matcore.eye(self.obj_dim(x)))

    def compose(self, g, f):
        self._require(f.cod == g.dom, f"cannot compose: {f.cod} vs {g.dom}")
        return BlockMorphism(f.dom, g.cod, g.data @ f.data)

    def tensor(self, f, g):
        return BlockMorphism(
            self.tensor_obj(f.dom, g.dom),
            self.tensor_obj(f.cod, g.cod),
            matcore.direct_sum(f.data, g.data),
        )

    def permute(self, objs, perm):
        sizes = [self.obj_dim(o) for o in objs]
        dom = self.tensor_obj_list(objs)
        cod = self.tensor_obj_list([objs[i] for i in perm])
        return BlockMorphism(dom, cod, block_permutation(sizes, perm))

    def data_of(self, f) -> np.ndarray:
        return f.data

    def _trace_blocks(self, f, x, y, u):
        """The 2x2 block decomposition of f: x (+) u -> y (+) u."""
        self._require(f.dom == self.tensor_obj(x, u), "domain mismatch")
        self._require(f.cod == self.tensor_obj(y, u), "codomain mismatch")
        dx, dy, du = self.obj_dim(x), self.obj_dim(y), self.obj_dim(u)
        d = f.data
        return d[:dy, :dx], d[:dy, dx:], d[dy:, :dx], d[dy:, dx:]

    def component_blocks(self, f):
        """Iterate ((i, j), block) over component pairs of a BlockMorphism."""
        rs = np.concatenate([[0], np.cumsum([self.block_size(d) for d in f.cod])]).astype(int)
        cs = np.concatenate([[0], np.cumsum([self.block_size(d) for d in f.dom])]).astype(int)
        for i in range(len(f.cod)):
            for j in range(len(f.dom)):
                yield (i, j), f.data[rs[i] : rs[i + 1], cs[j] : cs[j + 1]]


class VectOplus(OplusCategory):
    """Finite-dimensional vector spaces with the oplus (biproduct) structure.

    Two trace-class flavours: 'inv' requires I - f22 invertible and traces by
    f11 + f12 (I - f22)^{-1} f21; 'kerim' requires im f21 within im(I - f22)
    and ker(I - f22) within ker f12, tracing by f11(v) + f12(u) for any u
    with (I - f22) u = f21(v).  The second strictly extends the first.
    """

    default_dim_max = 6

    def __init__(self, variant: str):
        self.variant = variant
        self.cat_id = (
            CategoryId.VECT_OPLUS_INV if variant == "inv" else CategoryId.VECT_OPLUS_KERIM
        )

    def block_size(self, d: int) -> int:
        return int(d)

    def in_trace_class(self, f, x, y, u, tol: Tol = DEFAULT_TOL):
        f11, f12, f21, f22 = self._trace_blocks(f, x, y, u)
        a = matcore.eye(f22.shape[0]) - f22
        if self.variant == "inv":
            margin = matcore.singularity_margin(a, tol)
            if margin <= 0:
                return False, Reason.Singular, margin
            return True, None, margin
        if not matcore.image_contains(a, f21, tol):
            return False, Reason.ImageCondition, None
        for v in matcore.null_space(a, tol):
            w = f12 @ v
            if w.size and np.max(np.abs(w)) > tol.eq_tol:
                return False, Reason.KernelCondition, None
        return True, None, None

    def trace(self, f, x, y, u, tol: Tol = DEFAULT_TOL) -> TraceOutcome:
        member, reason, margin = self.in_trace_class(f, x, y, u, tol)
        if not member:
            return TraceOutcome.fail(reason, margin)
        f11, f12, f21, f22 = self._trace_blocks(f, x, y, u)
        a = matcore.eye(f22.shape[0]) - f22
        if self.variant == "inv":
            val = f11 + f12 @ matcore.inverse(a, tol) @ f21
        else:
            sol = matcore.solve_consistent(a, f21, tol)
            val = f11 + f12 @ sol
        return TraceOutcome.ok(BlockMorphism(tuple(x), tuple(y), val), margin)

    def random_object(self, rng, dim_max: int):
        length = int(rng.integers(1, 3))
        hi = max(1, dim_max // 2)
        return tuple(int(d) for d in rng.integers(1, hi + 1, size=length))

    def random_morphism(self, rng, dom, cod, contract: bool = False):
        dd, dc = self.obj_dim(dom), self.obj_dim(cod)
        m = (rng.standard_normal((dc, dd)) + 1j * rng.standard_normal((dc, dd))) / np.sqrt(2)
        s = matcore.spectral_norm(m)
        if s > 0:
            target = rng.uniform(0.2, 0.85) if contract else rng.uniform(0.5, 2.0)
            m = m * (target / s)
        return BlockMorphism(tuple(dom), tuple(cod), m)


class CpmOplus(OplusCategory):
    """Matrices of completely positive maps between sequences of Hilbert spaces.

    The partial trace requires I - f22 invertible AND every component of the
    inverse completely positive; the formula is f11 + f12 (I - f22)^{-1} f21.
    """

    cat_id = CategoryId.CPM_OPLUS
    default_dim_max = 2

    def block_size(self, d: int) -> int:
        return int(d) * int(d)

    def in_trace_class(self, f, x, y, u, tol: Tol = DEFAULT_TOL):
        _, _, _, f22 = self._trace_blocks(f, x, y, u)
        a = matcore.eye(f22.shape[0]) - f22
        margin = matcore.singularity_margin(a, tol)
        if margin <= 0:
            return False, Reason.Singular, margin
        inv = matcore.inverse(a, tol)
        inv_m = BlockMorphism(tuple(u), tuple(u), inv)
        cp_margin = float("inf")
        for (i, j), block in self.component_blocks(inv_m):
            cp_margin = min(cp_margin, matcore.cp_margin(block, u[j], u[i], tol))
        if cp_margin < 0:
            return False, Reason.InverseNotCP, cp_margin
        return True, None, min(margin, cp_margin)

    def trace(self, f, x, y, u, tol: Tol = DEFAULT_TOL) -> TraceOutcome:
        member, reason, margin = self.in_trace_class(f, x, y, u, tol)
        if not member:
            return TraceOutcome.fail(reason, margin)
        f11, f12, f21, f22 = self._trace_blocks(f, x, y, u)
        a = matcore.eye(f22.shape[0]) - f22
        val = f11 + f12 @ matcore.inverse(a, tol) @ f21
        return TraceOutcome.ok(BlockMorphism(tuple(x), tuple(y), val), margin)

    def random_object(self, rng, dim_max: int):
        length = int(rng.integers(1, 3))
        return tuple(int(d) for d in rng.integers(1, min(dim_max, 2) + 1, size=length))

    def _random_blocks(self, rng, dom, cod):
        rows = []
        for dc in cod:
            row = [random_cp_transfer(rng, dd, dc) for dd in dom]
            rows.append(np.hstack(row) if row else np.zeros((dc * dc, 0), dtype=complex))
        if rows:
            return np.vstack(rows)
        return np.zeros((0, self.obj_dim(dom)), dtype=complex)

    def random_morphism(self, rng, dom, cod, contract: bool = False):
        m = self._random_blocks(rng, dom, cod)
        s = matcore.spectral_norm(m)
        if s > 0:
            target = rng.uniform(0.2, 0.85) if contract else rng.uniform(0.5, 1.8)
            m = m * (target / s)
        return BlockMorphism(tuple(dom), tuple(cod), m)


class QOplusTotal(CpmOplus):
    """Trace-non-increasing superoperators with the total series trace."""

    cat_id = CategoryId.Q_OPLUS_TOTAL

    def in_trace_class(self, f, x, y, u, tol: Tol = DEFAULT_TOL):
        self._trace_blocks(f, x, y, u)  # shape check only
        return True, None, float("inf")

    def trace(self, f, x, y, u, tol: Tol = DEFAULT_TOL) -> TraceOutcome:
        val = q_total_trace(f, x, y, u, tol)
        return TraceOutcome.ok(val)

    def random_morphism(self, rng, dom, cod, contract: bool = False):
        m = self._random_blocks(rng, dom, cod)
        f = BlockMorphism(tuple(dom), tuple(cod), m)
        # normalize each domain column to make the morphism trace non-increasing
        cs = np.concatenate([[0], np.cumsum([d * d for d in dom])]).astype(int)
        out = m.copy()
        for j, dd in enumerate(dom):
            a = np.zeros((dd, dd), dtype=complex)
            rs = 0
            for dc in cod:
                block = m[rs : rs + dc * dc, cs[j] : cs[j + 1]]
                a += matcore.transfer_dual_on_identity(block, dd, dc)
                rs += dc * dc
            lam = float(np.max(np.linalg.eigvalsh((a + a.conj().T) / 2))) if dd else 0.0
            if lam > 0:
                out[:, cs[j] : cs[j + 1]] *= rng.uniform(0.3, 1.0) / lam
        return BlockMorphism(tuple(dom), tuple(cod), out)


def q_total_trace(f: BlockMorphism, x, y, u, tol: Tol = DEFAULT_TOL, max_iter: int = 10**6):
    """Tr(f) = f11 + sum_i f12 f22^i f21, summed with geometric doubling."""
    cat = get_category(CategoryId.Q_OPLUS_TOTAL)
    f11, f12, f21, f22 = cat._trace_blocks(f, x, y, u)
    total = f11.astype(complex).copy()
    if f12.shape[1] == 0 or f12.shape[0] == 0 or f21.shape[1] == 0:
        return BlockMorphism(tuple(x), tuple(y), total)
    # S_k = sum_{i < 2^k} f22^i,  P_k = f22^(2^k);  S_{k+1} = S_k + P_k S_k
    s = matcore.eye(f22.shape[0])
    p = f22.copy()
    count = 1
    bound = float(np.max(np.abs(f12 @ s @ f21))) if f12.size else 0.0
    while True:
        total_term = f12 @ s @ f21
        nxt = f12 @ (p @ s) @ f21
        bound = float(np.max(np.abs(nxt))) if nxt.size else 0.0
        if bound < tol.eq_tol:
            total = total + total_term + nxt
            break
        s = s + p @ s
        p = p @ p
        count *= 2
        if count > max_iter:
            raise NoConvergenceError(bound)
    return BlockMorphism(tuple(x), tuple(y), total)


# ==========================================================================
# tensor-style categories
# ==========================================================================


class TensorCategory(Category):
    def unit(self):
        return 1

    def tensor_obj(self, x, y):
        return int(x) * int(y)

    def random_object(self, rng, dim_max: int):
        return int(rng.integers(1, dim_max + 1))


class SrelTensor(TensorCategory):
    """Finite sets and sub-stochastic matrices with the cartesian tensor."""

    cat_id = CategoryId.SREL_TENSOR
    default_dim_max = 5

    def identity(self, x):
        return StochMorphism(int(x), int(x), np.eye(int(x)))

    def compose(self, g, f):
        self._require(f.cod == g.dom, "cannot compose stochastic maps")
        return StochMorphism(f.dom, g.cod, g.data @ f.data)

    def tensor(self, f, g):
        return StochMorphism(f.dom * g.dom, f.cod * g.cod, np.kron(f.data, g.data))

    def permute(self, objs, perm):
        dims = [int(o) for o in objs]
        p = np.real(matcore.factor_permutation(dims, perm))
        return StochMorphism(int(np.prod(dims)), int(np.prod(dims)), p)

    def data_of(self, f):
        return f.data

    def _slices(self, f, x, y, u):
        self._require(f.dom == x * u and f.cod == y * u, "shape mismatch for trace")
        return f.data.reshape(y, u, x, u)

    def in_trace_class(self, f, x, y, u, tol: Tol = DEFAULT_TOL):
        t = self._slices(f, x, y, u)
        mass = np.einsum("yuxu->x", t)
        worst = float(np.max(mass)) if mass.size else 0.0
        margin = 1.0 + tol.eq_tol - worst
        if margin < 0:
            return False, Reason.MassExceedsOne, margin
        return True, None, margin

    def trace(self, f, x, y, u, tol: Tol = DEFAULT_TOL) -> TraceOutcome:
        member, reason, margin = self.in_trace_class(f, x, y, u, tol)
        if not member:
            return TraceOutcome.fail(reason, margin)
        t = self._slices(f, x, y, u)
        val = np.einsum("yuxu->yx", t)
        return TraceOutcome.ok(StochMorphism(int(x), int(y), np.real(val)), margin)

    def random_morphism(self, rng, dom, cod, contract: bool = False):
        cols = []
        for _ in range(dom):
            mass = rng.uniform(0, 0.5) if contract else rng.uniform(0, 1)
            cols.append(rng.dirichlet(np.ones(cod)) * mass)
        return StochMorphism(int(dom), int(cod), np.array(cols).T)


class KrausTensorCategory(TensorCategory):
    """Completely positive maps with the Hilbert-space tensor (CPM_s flavour)."""

    def identity(self, x):
        return KrausMorphism(int(x), int(x), (matcore.eye(int(x)),))

    def compose(self, g, f):
        self._require(f.cod == g.dom, "cannot compose Kraus maps")
        kraus = tuple(b @ a for b in g.kraus for a in f.kraus)
        return KrausMorphism(f.dom, g.cod, kraus)

    def tensor(self, f, g):
        kraus = tuple(np.kron(a, b) for a in f.kraus for b in g.kraus)
        return KrausMorphism(f.dom * g.dom, f.cod * g.cod, kraus)

    def permute(self, objs, perm):
        dims = [int(o) for o in objs]
        p = matcore.factor_permutation(dims, perm)
        n = int(np.prod(dims))
        return KrausMorphism(n, n, (p,))

    def data_of(self, f):
        return f.transfer

    def random_morphism(self, rng, dom, cod, contract: bool = False):
        ks = [
            (rng.standard_normal((cod, dom)) + 1j * rng.standard_normal((cod, dom)))
            / np.sqrt(2)
            for _ in range(2)
        ]
        a = sum(matcore.dagger(k) @ k for k in ks)
        lam = float(np.max(np.linalg.eigvalsh((a + a.conj().T) / 2)))
        if lam > 0:
            scale = np.sqrt(rng.uniform(0.3, 1.0) / lam)
            ks = [k * scale for k in ks]
        return KrausMorphism(int(dom), int(cod), tuple(ks))

    def _canonical_trace(self, f, x, y, u, tol: Tol):
        self._require(f.dom == x * u and f.cod == y * u, "shape mismatch for trace")
        kraus = tuple(
            matcore.op_partial_trace(k, [x, u], [y, u], 1) for k in f.kraus
        )
        return KrausMorphism(int(x), int(y), kraus)


class CpmsTensor(KrausTensorCategory):
    cat_id = CategoryId.CPMS_TENSOR
    default_dim_max = 3

    def in_trace_class(self, f, x, y, u, tol: Tol = DEFAULT_TOL):
        self._require(f.dom == x * u and f.cod == y * u, "shape mismatch for trace")
        return True, None, float("inf")

    def trace(self, f, x, y, u, tol: Tol = DEFAULT_TOL) -> TraceOutcome:
        return TraceOutcome.ok(self._canonical_trace(f, x, y, u, tol))


class QsTensorSub(KrausTensorCategory):
    """Trace-non-increasing CP maps; trace induced from the CPM_s total trace."""

    cat_id = CategoryId.QS_TENSOR_SUB
    default_dim_max = 3

    def in_trace_class(self, f, x, y, u, tol: Tol = DEFAULT_TOL):
        g = self._canonical_trace(f, x, y, u, tol)
        ok, margin = _kraus_nonincreasing_margin(g, tol)
        if not ok:
            return False, Reason.NotInSubcategory, margin
        return True, None, margin

    def trace(self, f, x, y, u, tol: Tol = DEFAULT_TOL) -> TraceOutcome:
        g = self._canonical_trace(f, x, y, u, tol)
        ok, margin = _kraus_nonincreasing_margin(g, tol)
        if not ok:
            return TraceOutcome.fail(Reason.NotInSubcategory, margin)
        return TraceOutcome.ok(g, margin)


class FHilbTensor(TensorCategory):
    """Plain linear maps with the operator partial trace (a total trace)."""

    cat_id = CategoryId.FHILB_TENSOR
    default_dim_max = 3

    def identity(self, x):
        return DenseMorphism(int(x), int(x), matcore.eye(int(x)))

    def compose(self, g, f):
        self._require(f.cod == g.dom, "cannot compose linear maps")
        return DenseMorphism(f.dom, g.cod, g.data @ f.data)

    def tensor(self, f, g):
        return DenseMorphism(f.dom * g.dom, f.cod * g.cod, np.kron(f.data, g.data))

    def permute(self, objs, perm):
        dims = [int(o) for o in objs]
        n = int(np.prod(dims))
        return DenseMorphism(n, n, matcore.factor_permutation(dims, perm))

    def data_of(self, f):
        return f.data

    def in_trace_class(self, f, x, y, u, tol: Tol = DEFAULT_TOL):
        self._require(f.dom == x * u and f.cod == y * u, "shape mismatch for trace")
        return True, None, float("inf")

    def trace(self, f, x, y, u, tol: Tol = DEFAULT_TOL) -> TraceOutcome:
        self._require(f.dom == x * u and f.cod == y * u, "shape mismatch for trace")
        val = matcore.op_partial_trace(f.data, [x, u], [y, u], 1)
        return TraceOutcome.ok(DenseMorphism(int(x), int(y), val))

    def random_morphism(self, rng, dom, cod, contract: bool = False):
        m = (rng.standard_normal((cod, dom)) + 1j * rng.standard_normal((cod, dom))) / np.sqrt(2)
        s = matcore.spectral_norm(m)
        if s > 0:
            target = rng.uniform(0.2, 0.85) if contract else rng.uniform(0.3, 1.5)
            m = m * (target / s)
        return DenseMorphism(int(dom), int(cod), m)


# ==========================================================================
# subcategory-induced traces
# ==========================================================================


@dataclass
class Embedding:
    """A faithful strong monoidal functor into a host traced category.

    Mediating isos are identities because all our objects are strictified.
    """

    host: Category
    map_obj: Callable
    map_mor: Callable
    unmap_value: Callable
    member: Callable  # (host value, x, y, tol) -> (bool, margin)


def induced_trace(embed: Embedding, f, x, y, u, tol: Tol = DEFAULT_TOL) -> TraceOutcome:
    out = embed.host.trace(
        embed.map_mor(f), embed.map_obj(x), embed.map_obj(y), embed.map_obj(u), tol
    )
    if not out.defined:
        return out
    ok, margin = embed.member(out.value, x, y, tol)
    if not ok:
        return TraceOutcome.fail(Reason.NotInSubcategory, margin)
    return TraceOutcome.ok(embed.unmap_value(out.value, x, y), margin)


def _kraus_nonincreasing_margin(f: KrausMorphism, tol: Tol):
    a = np.zeros((f.dom, f.dom), dtype=complex)
    for k in f.kraus:
        a += matcore.dagger(k) @ k
    if f.dom == 0:
        return True, float("inf")
    lam = float(np.max(np.linalg.eigvalsh((a + a.conj().T) / 2)))
    margin = 1.0 + tol.psd_tol - lam
    return margin >= 0, margin


def _q_block_nonincreasing_margin(f: BlockMorphism, tol: Tol):
    cat = get_category(CategoryId.Q_OPLUS_TOTAL)
    duals = {}
    for (i, j), block in cat.component_blocks(f):
        dd, dc = f.dom[j], f.cod[i]
        duals.setdefault(j, np.zeros((dd, dd), dtype=complex))
        duals[j] += matcore.transfer_dual_on_identity(block, dd, dc)
    margin = float("inf")
    for j, a in duals.items():
        if a.shape[0] == 0:
            continue
        lam = float(np.max(np.linalg.eigvalsh((a + a.conj().T) / 2)))
        margin = min(margin, 1.0 + tol.psd_tol - lam)
    return margin >= 0, margin


def is_trace_nonincreasing(f, tol: Tol = DEFAULT_TOL) -> bool:
    """Sum_i tr(F_ij(rho)) <= tr(rho), via the operator test sum K^dag K <= I."""
    if isinstance(f, KrausMorphism):
        return _kraus_nonincreasing_margin(f, tol)[0]
    if isinstance(f, BlockMorphism):
        return _q_block_nonincreasing_margin(f, tol)[0]
    raise TypeError(f"unsupported morphism type {type(f)!r}")


def trace_preserving_defect(f, tol: Tol = DEFAULT_TOL) -> float:
    """Max entrywise distance of sum_i K^dag K (per domain component) from I."""
    if isinstance(f, KrausMorphism):
        a = np.zeros((f.dom, f.dom), dtype=complex)
        for k in f.kraus:
            a += matcore.dagger(k) @ k
        return matcore.max_abs_diff(a, matcore.eye(f.dom)) if f.dom else 0.0
    if isinstance(f, BlockMorphism):
        cat = get_category(CategoryId.Q_OPLUS_TOTAL)
        duals = {j: np.zeros((d, d), dtype=complex) for j, d in enumerate(f.dom)}
        for (i, j), block in cat.component_blocks(f):
            duals[j] += matcore.transfer_dual_on_identity(block, f.dom[j], f.cod[i])
        worst = 0.0
        for j, a in duals.items():
            if a.shape[0]:
                worst = max(worst, matcore.max_abs_diff(a, matcore.eye(a.shape[0])))
        return worst
    raise TypeError(f"unsupported morphism type {type(f)!r}")


def cpm_blocks_cp_margin(f: BlockMorphism, tol: Tol) -> float:
    cat = get_category(CategoryId.CPM_OPLUS)
    margin = float("inf")
    for (i, j), block in cat.component_blocks(f):
        margin = min(margin, matcore.cp_margin(block, f.dom[j], f.cod[i], tol))
    return margin


def cpm_in_vect_embedding(variant: str = "kerim") -> Embedding:
    """CPM(oplus)/Q(oplus) morphisms seen as plain matrices in Vect(oplus)."""
    host = get_category(
        CategoryId.VECT_OPLUS_KERIM if variant == "kerim" else CategoryId.VECT_OPLUS_INV
    )

    def member(val: BlockMorphism, x, y, tol):
        rewrapped = BlockMorphism(tuple(x), tuple(y), val.data)
        margin = cpm_blocks_cp_margin(rewrapped, tol)
        return margin >= 0, margin

    return Embedding(
        host=host,
        map_obj=lambda obj: tuple(int(d) * int(d) for d in obj),
        map_mor=lambda f: BlockMorphism(
            tuple(int(d) * int(d) for d in f.dom),
            tuple(int(d) * int(d) for d in f.cod),
            f.data,
        ),
        unmap_value=lambda val, x, y: BlockMorphism(tuple(x), tuple(y), val.data),
        member=member,
    )


def q_in_vect_embedding(variant: str) -> Embedding:
    """Q(oplus) with the trace induced from a Vect(oplus) flavour."""
    base = cpm_in_vect_embedding(variant)

    def member(val: BlockMorphism, x, y, tol):
        rewrapped = BlockMorphism(tuple(x), tuple(y), val.data)
        margin = cpm_blocks_cp_margin(rewrapped, tol)
        if margin < 0:
            return False, margin
        ok, m2 = _q_block_nonincreasing_margin(rewrapped, tol)
        return ok, min(margin, m2)

    return Embedding(
        host=base.host,
        map_obj=base.map_obj,
        map_mor=base.map_mor,
        unmap_value=base.unmap_value,
        member=member,
    )


def qs_in_cpms_embedding() -> Embedding:
    host = get_category(CategoryId.CPMS_TENSOR)
    return Embedding(
        host=host,
        map_obj=lambda obj: obj,
        map_mor=lambda f: f,
        unmap_value=lambda val, x, y: val,
        member=lambda val, x, y, tol: _kraus_nonincreasing_margin(val, tol),
    )


class QOplusInduced(QOplusTotal):
    """Q(oplus) carrying the trace induced from a Vect(oplus) flavour."""

    def __init__(self, variant: str):
        self.variant = variant
        self.cat_id = CategoryId.Q_OPLUS_INV if variant == "inv" else CategoryId.Q_OPLUS_KERIM

    @property
    def _embedding(self):
        return q_in_vect_embedding(self.variant)

    def in_trace_class(self, f, x, y, u, tol: Tol = DEFAULT_TOL):
        out = self.trace(f, x, y, u, tol)
        return out.defined, out.reason, out.margin

    def trace(self, f, x, y, u, tol: Tol = DEFAULT_TOL) -> TraceOutcome:
        self._trace_blocks(f, x, y, u)  # shape check
        return induced_trace(self._embedding, f, x, y, u, tol)


# ==========================================================================
# registry
# ==========================================================================

_REGISTRY: dict[CategoryId, Category] = {}


def get_category(cat_id: CategoryId) -> Category:
    if not _REGISTRY:
        for inst in (
            VectOplus("inv"),
            VectOplus("kerim"),
            SrelTensor(),
            CpmsTensor(),
            CpmOplus(),
            QOplusTotal(),
            QOplusInduced("inv"),
            QOplusInduced("kerim"),
            QsTensorSub(),
            FHilbTensor(),
        ):
            _REGISTRY[inst.cat_id] = inst
    return _REGISTRY[CategoryId(cat_id)]


def random_cp_transfer(rng, d_in: int, d_out: int, n_kraus: int = 2) -> np.ndarray:
    """Transfer matrix of a random CP map (unnormalized Gaussian Kraus pair)."""
    ks = [
        (rng.standard_normal((d_out, d_in)) + 1j * rng.standard_normal((d_out, d_in)))
        / np.sqrt(2 * max(d_in, 1))
        for _ in range(n_kraus)
    ]
    return matcore.transfer_from_kraus(ks, d_in, d_out)
