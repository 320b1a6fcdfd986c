"""Finite combinatorial completions.

Three layers stacked on one another:

  * Fwm: the free affine symmetric monoidal category on a discrete alphabet
    of Hilbert dimensions.  Objects are finite sequences of atoms; a morphism
    V -> W is an injective index function phi with dom[phi(i)] = cod[i], so
    the unit (the empty sequence) is terminal.
  * The coproduct completion: objects are finite families, morphisms are an
    index function together with a componentwise family of morphisms.
  * The functors out of it: Phi embeds finite sets as families of empty
    sequences, hatF realizes an injection as a permute-then-partial-trace
    channel, and Psi sends a family over sequences to a block superoperator.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from . import matcore
from .matcore import Tol, DEFAULT_TOL
from .tracecats.core import BlockMorphism, KrausMorphism, ObjectMismatchError
from .tracecats.axioms import CheckReport

DEFAULT_ALPHABET = (1, 2, 3, 4)


# ==========================================================================
# Fwm: sequences and injections
# ==========================================================================


@dataclass(frozen=True)
class InjMorphism:
    """An arrow of the free affine monoidal category.

    phi is 0-based: cod[i] = dom[phi[i]], phi injective.
    """

    dom: tuple
    cod: tuple
    phi: tuple

    def __post_init__(self):
        if len(self.phi) != len(self.cod):
            raise ObjectMismatchError("phi length must match codomain length")
        if len(set(self.phi)) != len(self.phi):
            raise ObjectMismatchError("phi must be injective")
        for i, j in enumerate(self.phi):
            if not (0 <= j < len(self.dom)) or self.dom[j] != self.cod[i]:
                raise ObjectMismatchError(f"label mismatch at {i}: {self.dom} vs {self.cod}")


def fwm_identity(seq) -> InjMorphism:
    seq = tuple(seq)
    return InjMorphism(seq, seq, tuple(range(len(seq))))


def fwm_terminal(seq) -> InjMorphism:
    return InjMorphism(tuple(seq), (), ())


def fwm_compose(g: InjMorphism, f: InjMorphism) -> InjMorphism:
    """g after f; the index functions compose the other way round."""
    if f.cod != g.dom:
        raise ObjectMismatchError(f"cannot compose {f.cod} with {g.dom}")
    return InjMorphism(f.dom, g.cod, tuple(f.phi[j] for j in g.phi))


def fwm_tensor(f: InjMorphism, g: InjMorphism) -> InjMorphism:
    n = len(f.dom)
    phi = tuple(f.phi) + tuple(j + n for j in g.phi)
    return InjMorphism(f.dom + g.dom, f.cod + g.cod, phi)


def fwm_symmetry(x, y) -> InjMorphism:
    x, y = tuple(x), tuple(y)
    phi = tuple(range(len(x), len(x) + len(y))) + tuple(range(len(x)))
    return InjMorphism(x + y, y + x, phi)


def fwm_homs(dom, cod) -> list:
    """All injections dom -> cod respecting the atom labels (brute force)."""
    dom, cod = tuple(dom), tuple(cod)
    out = []
    for pick in itertools.permutations(range(len(dom)), len(cod)):
        if all(dom[pick[i]] == cod[i] for i in range(len(cod))):
            out.append(InjMorphism(dom, cod, tuple(pick)))
    return out


# ==========================================================================
# the coproduct completion
# ==========================================================================


@dataclass(frozen=True)
class FamilyObject:
    members: tuple

    def __len__(self):
        return len(self.members)


@dataclass(frozen=True)
class FamilyMorphism:
    dom: FamilyObject
    cod: FamilyObject
    phi: tuple  # index function dom -> cod
    components: tuple  # components[a]: dom.members[a] -> cod.members[phi[a]]


@dataclass(frozen=True)
class ComponentOps:
    """The operations of the component category needed to run the completion."""

    identity: Callable
    compose: Callable
    tensor: Callable
    tensor_obj: Callable
    unit: object


FWM_OPS = ComponentOps(
    identity=fwm_identity,
    compose=fwm_compose,
    tensor=fwm_tensor,
    tensor_obj=lambda x, y: tuple(x) + tuple(y),
    unit=(),
)


def cplus_identity(v: FamilyObject, ops: ComponentOps = FWM_OPS) -> FamilyMorphism:
    return FamilyMorphism(
        v, v, tuple(range(len(v))), tuple(ops.identity(m) for m in v.members)
    )


def cplus_compose(
    g: FamilyMorphism, f: FamilyMorphism, ops: ComponentOps = FWM_OPS
) -> FamilyMorphism:
    if f.cod != g.dom:
        raise ObjectMismatchError("family morphisms not composable")
    phi = tuple(g.phi[f.phi[a]] for a in range(len(f.dom)))
    comps = tuple(
        ops.compose(g.components[f.phi[a]], f.components[a]) for a in range(len(f.dom))
    )
    return FamilyMorphism(f.dom, g.cod, phi, comps)


def cplus_coproduct(v: FamilyObject, w: FamilyObject, ops: ComponentOps = FWM_OPS):
    vw = FamilyObject(v.members + w.members)
    in1 = FamilyMorphism(
        v, vw, tuple(range(len(v))), tuple(ops.identity(m) for m in v.members)
    )
    in2 = FamilyMorphism(
        w,
        vw,
        tuple(a + len(v) for a in range(len(w))),
        tuple(ops.identity(m) for m in w.members),
    )
    return vw, in1, in2


def cplus_copair(f: FamilyMorphism, g: FamilyMorphism, ops: ComponentOps = FWM_OPS):
    if f.cod != g.cod:
        raise ObjectMismatchError("copairing needs a common codomain")
    dom = FamilyObject(f.dom.members + g.dom.members)
    return FamilyMorphism(dom, f.cod, f.phi + g.phi, f.components + g.components)


def cplus_empty() -> FamilyObject:
    return FamilyObject(())


def cplus_unit(ops: ComponentOps = FWM_OPS) -> FamilyObject:
    return FamilyObject((ops.unit,))


def cplus_tensor_obj(v: FamilyObject, w: FamilyObject, ops: ComponentOps = FWM_OPS):
    """Members indexed lexicographically: (a, b) lands at a*|W| + b."""
    return FamilyObject(
        tuple(ops.tensor_obj(a, b) for a in v.members for b in w.members)
    )


def cplus_tensor(
    f: FamilyMorphism, g: FamilyMorphism, ops: ComponentOps = FWM_OPS
) -> FamilyMorphism:
    dom = cplus_tensor_obj(f.dom, g.dom, ops)
    cod = cplus_tensor_obj(f.cod, g.cod, ops)
    nw = len(g.cod)
    phi = []
    comps = []
    for a in range(len(f.dom)):
        for b in range(len(g.dom)):
            phi.append(f.phi[a] * nw + g.phi[b])
            comps.append(ops.tensor(f.components[a], g.components[b]))
    return FamilyMorphism(dom, cod, tuple(phi), tuple(comps))


def cplus_distributor(
    u: FamilyObject, v: FamilyObject, w: FamilyObject, ops: ComponentOps = FWM_OPS
):
    """The iso u (x) (v (+) w) -> (u (x) v) (+) (u (x) w) and its inverse."""
    vw, _, _ = cplus_coproduct(v, w, ops)
    dom = cplus_tensor_obj(u, vw, ops)
    uv = cplus_tensor_obj(u, v, ops)
    uw = cplus_tensor_obj(u, w, ops)
    cod, _, _ = cplus_coproduct(uv, uw, ops)
    phi = []
    for a in range(len(u)):
        for i in range(len(vw)):
            if i < len(v):
                phi.append(a * len(v) + i)
            else:
                phi.append(len(u) * len(v) + a * len(w) + (i - len(v)))
    comps = tuple(ops.identity(m) for m in dom.members)
    fwd = FamilyMorphism(dom, cod, tuple(phi), comps)
    inv_phi = [0] * len(phi)
    for i, j in enumerate(phi):
        inv_phi[j] = i
    bwd = FamilyMorphism(
        cod, dom, tuple(inv_phi), tuple(ops.identity(m) for m in cod.members)
    )
    return fwd, bwd


def cplus_homs(v: FamilyObject, w: FamilyObject, component_homs=fwm_homs) -> list:
    """Every family morphism v -> w, enumerated member by member."""
    per_index = []
    for a in range(len(v)):
        choices = []
        for b in range(len(w)):
            for c in component_homs(v.members[a], w.members[b]):
                choices.append((b, c))
        if not choices:
            return []
        per_index.append(choices)
    out = []
    for combo in itertools.product(*per_index):
        phi = tuple(b for b, _ in combo)
        comps = tuple(c for _, c in combo)
        out.append(FamilyMorphism(v, w, phi, comps))
    return out


# ==========================================================================
# the functors
# ==========================================================================


def hatF_superop(f: InjMorphism) -> KrausMorphism:
    """The channel on L(tensor of dom dims): permute the selected factors to
    the front in phi-order, then partial-trace out everything unselected.

    Kraus form: { (I (x) <k|) P : k over the unselected basis }, which is
    trace preserving because P is unitary.
    """
    dims = [int(d) for d in f.dom]
    selected = list(f.phi)
    unselected = [i for i in range(len(dims)) if i not in set(selected)]
    perm = selected + unselected
    p = matcore.factor_permutation(dims, perm)
    d_in = int(np.prod(dims)) if dims else 1
    d_out = int(np.prod([dims[i] for i in selected])) if selected else 1
    d_rest = d_in // max(d_out, 1) if d_in else 1
    cube = p.reshape(d_out, d_rest, d_in)
    kraus = tuple(np.ascontiguousarray(cube[:, k, :]) for k in range(d_rest))
    return KrausMorphism(d_in, d_out, kraus)


def phi_embed(size: int) -> FamilyObject:
    """Phi on objects: a finite set becomes that many empty sequences."""
    return FamilyObject(tuple(() for _ in range(int(size))))


def phi_embed_map(fn: Sequence[int], cod_size: int) -> FamilyMorphism:
    dom = phi_embed(len(fn))
    cod = phi_embed(cod_size)
    for b in fn:
        if not (0 <= b < cod_size):
            raise ObjectMismatchError("function value out of range")
    comps = tuple(fwm_identity(()) for _ in fn)
    return FamilyMorphism(dom, cod, tuple(int(b) for b in fn), comps)


def psi_obj(v: FamilyObject) -> tuple:
    """A family of sequences becomes a direct sum of product dimensions."""
    return tuple(int(np.prod(seq)) if len(seq) else 1 for seq in v.members)


def psi_map(f: FamilyMorphism) -> BlockMorphism:
    """Block (b, a) is the hatF channel of component a when phi(a) = b."""
    dom_obj = psi_obj(f.dom)
    cod_obj = psi_obj(f.cod)
    col_sizes = [d * d for d in dom_obj]
    row_sizes = [d * d for d in cod_obj]
    data = np.zeros((sum(row_sizes), sum(col_sizes)), dtype=complex)
    row_off = np.concatenate([[0], np.cumsum(row_sizes)]).astype(int)
    col_off = np.concatenate([[0], np.cumsum(col_sizes)]).astype(int)
    for a in range(len(f.dom)):
        b = f.phi[a]
        t = hatF_superop(f.components[a]).transfer
        data[row_off[b] : row_off[b + 1], col_off[a] : col_off[a + 1]] = t
    return BlockMorphism(dom_obj, cod_obj, data)


# ==========================================================================
# the multiplicative kernel condition
# ==========================================================================


def empty_members(c: FamilyObject) -> list:
    return [i for i, m in enumerate(c.members) if tuple(m) == ()]


def hom_count_from_unit(size: int, c: FamilyObject) -> int:
    """|hom(Phi(size), c)| = (#empty members of c) ** size."""
    return len(empty_members(c)) ** int(size)


def kernel_pairing(f: FamilyMorphism, g: FamilyMorphism) -> FamilyMorphism:
    """<f, g>: Phi(b) -> c (x) c' from f: Phi(b) -> c and g: Phi(b) -> c'."""
    if f.dom != g.dom:
        raise ObjectMismatchError("pairing needs a common domain")
    cod = cplus_tensor_obj(f.cod, g.cod)
    nw = len(g.cod)
    phi = tuple(f.phi[a] * nw + g.phi[a] for a in range(len(f.dom)))
    comps = tuple(fwm_identity(()) for _ in range(len(f.dom)))
    return FamilyMorphism(f.dom, cod, phi, comps)


def kernel_bijection_check(
    b: int, c: FamilyObject, cp: FamilyObject, rng=None, n_naturality: int = 20
) -> CheckReport:
    """hom(Phi(b), c) x hom(Phi(b), c') vs hom(Phi(b), c (x) c').

    Verifies the cardinality identity, that the pairing is a bijection, and
    naturality of the pairing under sampled post-composition.
    """
    h1 = cplus_homs(phi_embed(b), c)
    h2 = cplus_homs(phi_embed(b), cp)
    h3 = cplus_homs(phi_embed(b), cplus_tensor_obj(c, cp))
    failures = 0
    notes = []
    if len(h1) * len(h2) != len(h3):
        failures += 1
        notes.append(f"cardinality mismatch: {len(h1)}*{len(h2)} vs {len(h3)}")
    paired = {(m.phi, tuple(x.phi for x in m.components)) for m in (
        kernel_pairing(f, g) for f in h1 for g in h2)}
    target = {(m.phi, tuple(x.phi for x in m.components)) for m in h3}
    if paired != target:
        failures += 1
        notes.append("pairing is not a bijection onto the product hom-set")

    checked = 0
    if rng is not None and h1 and h2:
        all_small = _small_q2_objects()
        for _ in range(n_naturality):
            f = h1[int(rng.integers(len(h1)))]
            g = h2[int(rng.integers(len(h2)))]
            c2 = all_small[int(rng.integers(len(all_small)))]
            c3 = all_small[int(rng.integers(len(all_small)))]
            hs = cplus_homs(c, c2)
            hps = cplus_homs(cp, c3)
            if not hs or not hps:
                continue
            h = hs[int(rng.integers(len(hs)))]
            hp = hps[int(rng.integers(len(hps)))]
            lhs = cplus_compose(cplus_tensor(h, hp), kernel_pairing(f, g))
            rhs = kernel_pairing(cplus_compose(h, f), cplus_compose(hp, g))
            checked += 1
            if lhs != rhs:
                failures += 1
                notes.append("naturality square broke")
                break
    return CheckReport(
        category="QPP",
        axiom="MultiplicativeKernel",
        samples=len(h3) + checked,
        skipped=0,
        patterns={"hom_lhs": len(h1) * len(h2), "hom_rhs": len(h3)},
        max_deviation=0.0,
        min_abs_margin=float("inf"),
        failures=failures,
        passed=failures == 0,
        notes=notes,
    )


def _small_q2_objects():
    seqs = [(), (2,), (3,), (2, 2)]
    out = []
    for n in range(1, 3):
        for combo in itertools.product(seqs, repeat=n):
            out.append(FamilyObject(combo))
    return out


# ==========================================================================
# random generators for the law tests
# ==========================================================================


def random_seq(rng, alphabet=DEFAULT_ALPHABET, max_len: int = 3) -> tuple:
    n = int(rng.integers(0, max_len + 1))
    return tuple(int(alphabet[i]) for i in rng.integers(0, len(alphabet), size=n))


def random_inj_into(rng, dom: tuple) -> InjMorphism:
    """A random injection out of dom: pick a subset of slots and an order."""
    n = len(dom)
    m = int(rng.integers(0, n + 1))
    pick = list(rng.permutation(n)[:m])
    cod = tuple(dom[j] for j in pick)
    return InjMorphism(tuple(dom), cod, tuple(int(j) for j in pick))


def random_family(rng, alphabet=DEFAULT_ALPHABET, max_members: int = 3, max_len: int = 2):
    n = int(rng.integers(1, max_members + 1))
    return FamilyObject(tuple(random_seq(rng, alphabet, max_len) for _ in range(n)))


def random_family_morphism(rng, dom: FamilyObject, alphabet=DEFAULT_ALPHABET):
    """A random morphism out of dom (codomain built to make one exist)."""
    comps = [random_inj_into(rng, tuple(m)) for m in dom.members]
    cod_members = [c.cod for c in comps]
    # pad the codomain with extra members so phi is not forced to be onto
    extra = int(rng.integers(0, 2))
    for _ in range(extra):
        cod_members.append(random_seq(rng, alphabet, 2))
    order = list(rng.permutation(len(cod_members)))
    cod = FamilyObject(tuple(cod_members[i] for i in order))
    slot = {src: dst for dst, src in enumerate(order)}
    phi = tuple(slot[a] for a in range(len(dom)))
    return FamilyMorphism(dom, cod, phi, tuple(comps))
