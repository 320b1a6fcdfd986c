import itertools

import numpy as np
import pytest

from tracelab import matcore
from tracelab.matcore import max_abs_diff
from tracelab.tracecats import BlockMorphism, ObjectMismatchError
from tracelab.completions import (
    FWM_OPS,
    FamilyObject,
    InjMorphism,
    cplus_compose,
    cplus_copair,
    cplus_coproduct,
    cplus_distributor,
    cplus_empty,
    cplus_homs,
    cplus_identity,
    cplus_tensor,
    cplus_tensor_obj,
    cplus_unit,
    empty_members,
    fwm_compose,
    fwm_homs,
    fwm_identity,
    fwm_symmetry,
    fwm_tensor,
    fwm_terminal,
    hatF_superop,
    hom_count_from_unit,
    kernel_bijection_check,
    kernel_pairing,
    phi_embed,
    phi_embed_map,
    psi_map,
    psi_obj,
    random_family,
    random_family_morphism,
    random_inj_into,
    random_seq,
)
from tracelab.tracecats.categories import get_category
from tracelab.tracecats.core import CategoryId


def rng_for(seed):
    return np.random.default_rng(seed)


# ---------------------------------------------------------------------------
# Fwm
# ---------------------------------------------------------------------------


def test_inj_morphism_validation():
    with pytest.raises(ObjectMismatchError):
        InjMorphism((2, 3), (2,), (0, 1))  # phi too long
    with pytest.raises(ObjectMismatchError):
        InjMorphism((2, 3), (2, 2), (0, 0))  # not injective
    with pytest.raises(ObjectMismatchError):
        InjMorphism((2, 3), (3,), (0,))  # wrong label


def test_fwm_disambiguation_vectors():
    # on V = (2, 3, 2): dropping the middle atom then swapping the two
    # remaining slots is the injection phi = (2, 0), i.e. 1 -> 3, 2 -> 1 in
    # 1-based slot talk
    drop = InjMorphism((2, 3, 2), (2, 2), (0, 2))
    swap = fwm_symmetry((2,), (2,))
    both = fwm_compose(swap, drop)
    assert both.phi == (2, 0)
    # the symmetry on lengths (2, 1) is (2, 0, 1), 1-based (3, 1, 2)
    s = fwm_symmetry((5, 6), (7,))
    assert s.phi == (2, 0, 1)


def test_fwm_unit_is_terminal():
    for seq in [(), (2,), (3, 2, 2)]:
        homs = fwm_homs(seq, ())
        assert homs == [fwm_terminal(seq)]


def test_fwm_category_laws():
    rng = rng_for(0)
    for _ in range(30):
        dom = random_seq(rng)
        f = random_inj_into(rng, dom)
        g = random_inj_into(rng, f.cod)
        h = random_inj_into(rng, g.cod)
        assert fwm_compose(f, fwm_identity(dom)) == f
        assert fwm_compose(fwm_identity(f.cod), f) == f
        assert fwm_compose(h, fwm_compose(g, f)) == fwm_compose(fwm_compose(h, g), f)


def test_fwm_tensor_is_functorial():
    rng = rng_for(1)
    for _ in range(20):
        d1, d2 = random_seq(rng), random_seq(rng)
        f1, f2 = random_inj_into(rng, d1), random_inj_into(rng, d2)
        g1, g2 = random_inj_into(rng, f1.cod), random_inj_into(rng, f2.cod)
        lhs = fwm_compose(fwm_tensor(g1, g2), fwm_tensor(f1, f2))
        rhs = fwm_tensor(fwm_compose(g1, f1), fwm_compose(g2, f2))
        assert lhs == rhs


def test_fwm_hom_counts():
    # hom((d, d), (d,)) has two injections when the labels agree
    assert len(fwm_homs((2, 2), (2,))) == 2
    assert len(fwm_homs((2, 3), (3, 2))) == 1
    assert len(fwm_homs((2,), (3,))) == 0
    assert len(fwm_homs((), (2,))) == 0
    assert len(fwm_homs((2, 2), (2, 2))) == 2


# ---------------------------------------------------------------------------
# coproduct completion
# ---------------------------------------------------------------------------


def test_cplus_category_laws():
    rng = rng_for(2)
    for _ in range(20):
        v = random_family(rng)
        f = random_family_morphism(rng, v)
        g = random_family_morphism(rng, f.cod)
        h = random_family_morphism(rng, g.cod)
        assert cplus_compose(f, cplus_identity(v)) == f
        assert cplus_compose(cplus_identity(f.cod), f) == f
        assert cplus_compose(h, cplus_compose(g, f)) == cplus_compose(
            cplus_compose(h, g), f
        )


def test_cplus_coproduct_universal_property():
    rng = rng_for(3)
    v, w = random_family(rng), random_family(rng)
    target = random_family(rng)
    fs = cplus_homs(v, target)
    gs = cplus_homs(w, target)
    if not fs or not gs:
        pytest.skip("no morphisms into the sampled target")
    f, g = fs[0], gs[0]
    vw, in1, in2 = cplus_coproduct(v, w)
    both = cplus_copair(f, g)
    assert cplus_compose(both, in1) == f
    assert cplus_compose(both, in2) == g


def test_cplus_empty_is_initial():
    v = random_family(rng_for(4))
    assert cplus_homs(cplus_empty(), v) == [
        cplus_compose(cplus_identity(v), cplus_homs(cplus_empty(), v)[0])
    ]
    assert len(cplus_homs(cplus_empty(), v)) == 1


def test_distributor_is_iso():
    rng = rng_for(5)
    for _ in range(10):
        u = random_family(rng, max_members=3, max_len=1)
        v = random_family(rng, max_members=3, max_len=1)
        w = random_family(rng, max_members=3, max_len=1)
        fwd, bwd = cplus_distributor(u, v, w)
        assert cplus_compose(bwd, fwd) == cplus_identity(fwd.dom)
        assert cplus_compose(fwd, bwd) == cplus_identity(fwd.cod)


def test_tensor_unit_and_symmetric_count():
    v = FamilyObject(((2,), (3, 2)))
    unit = cplus_unit()
    assert cplus_tensor_obj(unit, v).members == v.members
    assert cplus_tensor_obj(v, unit).members == v.members
    w = FamilyObject(((2,),))
    vw = cplus_tensor_obj(v, w)
    assert vw.members == ((2, 2), (3, 2, 2))


def test_cplus_tensor_functorial():
    rng = rng_for(6)
    for _ in range(10):
        v, w = random_family(rng), random_family(rng)
        f, g = random_family_morphism(rng, v), random_family_morphism(rng, w)
        f2, g2 = random_family_morphism(rng, f.cod), random_family_morphism(rng, g.cod)
        lhs = cplus_compose(cplus_tensor(f2, g2), cplus_tensor(f, g))
        rhs = cplus_tensor(cplus_compose(f2, f), cplus_compose(g2, g))
        assert lhs == rhs


# ---------------------------------------------------------------------------
# hatF and Psi
# ---------------------------------------------------------------------------


def test_hatF_identity_is_identity_channel():
    f = fwm_identity((2, 3))
    k = hatF_superop(f)
    assert max_abs_diff(k.transfer, np.eye(36)) < 1e-12


def test_hatF_terminal_is_full_trace():
    f = fwm_terminal((2, 3))
    k = hatF_superop(f)
    rng = rng_for(7)
    rho = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
    out = matcore.transfer_apply(k.transfer, rho, 6, 1)
    assert abs(out[0, 0] - np.trace(rho)) < 1e-10


def test_hatF_drop_one_factor_is_partial_trace():
    f = InjMorphism((2, 3), (2,), (0,))
    k = hatF_superop(f)
    rng = rng_for(8)
    rho = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
    out = matcore.transfer_apply(k.transfer, rho, 6, 2)
    assert max_abs_diff(out, matcore.op_partial_trace(rho, [2, 3], [2, 3], 1)) < 1e-10


def test_hatF_swap_matches_factor_permutation():
    f = fwm_symmetry((2,), (3,))
    k = hatF_superop(f)
    p = matcore.factor_permutation([2, 3], [1, 0])
    rng = rng_for(9)
    rho = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
    out = matcore.transfer_apply(k.transfer, rho, 6, 6)
    assert max_abs_diff(out, p @ rho @ p.conj().T) < 1e-10


def test_hatF_functorial_and_trace_preserving():
    rng = rng_for(10)
    for _ in range(20):
        dom = random_seq(rng)
        f = random_inj_into(rng, dom)
        g = random_inj_into(rng, f.cod)
        lhs = hatF_superop(fwm_compose(g, f)).transfer
        rhs = hatF_superop(g).transfer @ hatF_superop(f).transfer
        assert max_abs_diff(lhs, rhs) < 1e-10
        k = hatF_superop(f)
        d_in = int(np.prod(dom)) if dom else 1
        gram = matcore.transfer_dual_on_identity(k.transfer, d_in, k.cod)
        assert max_abs_diff(gram, np.eye(d_in)) < 1e-10


def test_psi_obj_products():
    v = FamilyObject(((), (2,), (2, 3)))
    assert psi_obj(v) == (1, 2, 6)


def test_psi_on_phi_image_is_zero_one_column_stochastic():
    m = psi_map(phi_embed_map([1, 0, 1], 2))
    data = m.data.real
    assert set(np.unique(data)) <= {0.0, 1.0}
    assert np.all(data.sum(axis=0) == 1.0)
    assert data[1, 0] == 1.0 and data[0, 1] == 1.0 and data[1, 2] == 1.0


def test_psi_functorial():
    rng = rng_for(11)
    for _ in range(20):
        v = random_family(rng, max_len=2)
        f = random_family_morphism(rng, v)
        g = random_family_morphism(rng, f.cod)
        lhs = psi_map(cplus_compose(g, f)).data
        rhs = (psi_map(g).data @ psi_map(f).data)
        assert max_abs_diff(lhs, rhs) < 1e-10


def test_psi_trace_preserving():
    from tracelab.tracecats.categories import trace_preserving_defect

    rng = rng_for(12)
    for _ in range(10):
        v = random_family(rng, max_len=2)
        f = random_family_morphism(rng, v)
        m = psi_map(f)
        assert trace_preserving_defect(m) < 1e-12


def test_psi_tensor_coherent():
    rng = rng_for(13)
    for _ in range(10):
        v = random_family(rng, max_members=2, max_len=1)
        w = random_family(rng, max_members=2, max_len=1)
        f = random_family_morphism(rng, v)
        g = random_family_morphism(rng, w)
        lhs = psi_map(cplus_tensor(f, g))
        # blockwise tensor of the component transfers, in the same lex order
        dom = psi_obj(cplus_tensor_obj(f.dom, g.dom))
        cod = psi_obj(cplus_tensor_obj(f.cod, g.cod))
        data = np.zeros((sum(d * d for d in cod), sum(d * d for d in dom)),
                        dtype=complex)
        row_off = np.concatenate([[0], np.cumsum([d * d for d in cod])]).astype(int)
        col_off = np.concatenate([[0], np.cumsum([d * d for d in dom])]).astype(int)
        nwd, nwc = len(g.dom), len(g.cod)
        for a in range(len(f.dom)):
            for b in range(len(g.dom)):
                src = a * nwd + b
                dst = f.phi[a] * nwc + g.phi[b]
                ta = hatF_superop(f.components[a])
                tb = hatF_superop(g.components[b])
                t = matcore.transfer_tensor(
                    ta.transfer, tb.transfer, ta.dom, ta.cod, tb.dom, tb.cod
                )
                data[row_off[dst]:row_off[dst + 1], col_off[src]:col_off[src + 1]] = t
        assert max_abs_diff(lhs.data, data) < 1e-10


# ---------------------------------------------------------------------------
# Phi and the multiplicative kernel
# ---------------------------------------------------------------------------


def test_phi_hom_count_formula():
    for a in range(5):
        for b in range(5):
            homs = cplus_homs(phi_embed(a), phi_embed(b))
            assert len(homs) == b ** a
            assert len({m.phi for m in homs}) == len(homs)


def test_phi_embed_map_validation():
    with pytest.raises(ObjectMismatchError):
        phi_embed_map([2], 2)


def test_hom_count_from_unit():
    c = FamilyObject(((), (2,), ()))
    assert len(empty_members(c)) == 2
    assert hom_count_from_unit(3, c) == 8
    assert len(cplus_homs(phi_embed(3), c)) == 8


def test_kernel_bijection_small():
    rng = rng_for(14)
    c = FamilyObject(((), (2,)))
    cp = FamilyObject(((), (), (3,)))
    rep = kernel_bijection_check(2, c, cp, rng=rng, n_naturality=10)
    assert rep.passed, rep.to_dict()
    assert rep.patterns["hom_lhs"] == rep.patterns["hom_rhs"] == 4


def test_kernel_pairing_requires_common_domain():
    c = FamilyObject(((),))
    f = cplus_homs(phi_embed(1), c)[0]
    g = cplus_homs(phi_embed(2), c)[0]
    with pytest.raises(ObjectMismatchError):
        kernel_pairing(f, g)
