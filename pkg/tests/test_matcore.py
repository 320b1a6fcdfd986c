import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tracelab import matcore
from tracelab.matcore import (
    DEFAULT_TOL,
    NoSolutionError,
    Tol,
    choi,
    compose_perms,
    cp_margin,
    dagger,
    direct_sum,
    factor_permutation,
    image_contains,
    inverse,
    is_completely_positive,
    kraus_from_choi,
    kron,
    max_abs_diff,
    min_eig_hermitian,
    null_space,
    op_partial_trace,
    singularity_margin,
    solve_consistent,
    spectral_norm,
    transfer_apply,
    transfer_dual_on_identity,
    transfer_from_kraus,
    transfer_tensor,
    unvec,
    vec,
)


def rng_for(seed):
    return np.random.default_rng(seed)


def random_complex(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


dims = st.integers(min_value=1, max_value=4)


def test_direct_sum_block_layout():
    a = np.array([[1, 2], [3, 4]], dtype=complex)
    b = np.array([[5]], dtype=complex)
    s = direct_sum(a, b)
    expect = np.array([[1, 2, 0], [3, 4, 0], [0, 0, 5]], dtype=complex)
    assert max_abs_diff(s, expect) == 0


def test_direct_sum_with_empty():
    a = np.zeros((0, 0), dtype=complex)
    b = np.eye(2, dtype=complex)
    assert max_abs_diff(direct_sum(a, b), b) == 0
    assert max_abs_diff(direct_sum(b, a), b) == 0


def test_inverse_matches_numpy():
    rng = rng_for(0)
    for _ in range(20):
        n = int(rng.integers(1, 5))
        m = random_complex(rng, (n, n)) + 3 * np.eye(n)
        assert max_abs_diff(inverse(m), np.linalg.inv(m)) < 1e-9


def test_inverse_rejects_singular():
    m = np.array([[1.0, 2.0], [2.0, 4.0]], dtype=complex)
    with pytest.raises(matcore.SingularError):
        inverse(m)
    assert singularity_margin(m) <= 0


def test_min_eig_hermitian_requires_hermitian():
    with pytest.raises(matcore.NotHermitianError):
        min_eig_hermitian(np.array([[0, 1], [0, 0]], dtype=complex))
    assert abs(min_eig_hermitian(np.diag([3.0, -2.0]).astype(complex)) + 2.0) < 1e-12


def test_null_space_and_image():
    # m has rank 1: kernel (1,-1)/sqrt 2, image spanned by (1,1)
    m = np.array([[1.0, 1.0], [1.0, 1.0]], dtype=complex)
    ns = null_space(m)
    assert len(ns) == 1
    assert np.max(np.abs(m @ ns[0])) < 1e-10
    assert image_contains(m, np.array([[2.0], [2.0]], dtype=complex))
    assert not image_contains(m, np.array([[1.0], [0.0]], dtype=complex))


def test_solve_consistent_min_norm():
    m = np.array([[1.0, 1.0], [1.0, 1.0]], dtype=complex)
    b = np.array([[2.0], [2.0]], dtype=complex)
    x = solve_consistent(m, b)
    assert np.max(np.abs(m @ x - b)) < 1e-10
    with pytest.raises(NoSolutionError):
        solve_consistent(m, np.array([[1.0], [0.0]], dtype=complex))


@given(st.lists(dims, min_size=1, max_size=3), st.data())
@settings(max_examples=40, deadline=None)
def test_factor_permutation_action(dlist, data):
    # P(v_0 (x) ... (x) v_{n-1}) = v_{perm[0]} (x) ... (x) v_{perm[n-1]}
    n = len(dlist)
    perm = data.draw(st.permutations(range(n)))
    rng = rng_for(data.draw(st.integers(0, 2**16)))
    vs = [random_complex(rng, (d,)) for d in dlist]
    full = vs[0]
    for v in vs[1:]:
        full = np.kron(full, v)
    permuted = vs[perm[0]]
    for i in perm[1:]:
        permuted = np.kron(permuted, vs[i])
    p = factor_permutation(dlist, list(perm))
    assert max_abs_diff(p @ full, permuted) < 1e-10


def test_compose_perms_is_sequential_application():
    dlist = [2, 3, 2]
    p, q = [2, 0, 1], [1, 2, 0]
    both = factor_permutation(dlist, compose_perms(p, q))
    first = factor_permutation(dlist, p)
    # after applying p the factor at new slot i came from p[i]
    second = factor_permutation([dlist[i] for i in p], q)
    assert max_abs_diff(both, second @ first) == 0


def test_op_partial_trace_product_state():
    rng = rng_for(1)
    a = random_complex(rng, (2, 2))
    b = random_complex(rng, (3, 3))
    m = np.kron(a, b)
    assert max_abs_diff(op_partial_trace(m, [2, 3], [2, 3], 1), a * np.trace(b)) < 1e-10
    assert max_abs_diff(op_partial_trace(m, [2, 3], [2, 3], 0), b * np.trace(a)) < 1e-10


@given(dims, dims, st.integers(0, 2**16))
@settings(max_examples=30, deadline=None)
def test_vec_identity(d_in, d_out, seed):
    # vec(A B C) = (C^T (x) A) vec(B), column-stacking convention
    rng = rng_for(seed)
    a = random_complex(rng, (d_out, d_in))
    b = random_complex(rng, (d_in, d_in))
    c = random_complex(rng, (d_in, d_out))
    lhs = vec(a @ b @ c)
    rhs = kron(c.T, a) @ vec(b)
    assert max_abs_diff(lhs, rhs) < 1e-9


@given(dims, dims, st.integers(0, 2**16))
@settings(max_examples=30, deadline=None)
def test_transfer_applies_kraus_action(d_in, d_out, seed):
    rng = rng_for(seed)
    ks = [random_complex(rng, (d_out, d_in)) for _ in range(2)]
    t = transfer_from_kraus(ks, d_in, d_out)
    rho = random_complex(rng, (d_in, d_in))
    expect = sum(k @ rho @ dagger(k) for k in ks)
    assert max_abs_diff(transfer_apply(t, rho, d_in, d_out), expect) < 1e-9


def test_choi_of_identity_is_maximally_entangled():
    d = 3
    t = transfer_from_kraus([np.eye(d, dtype=complex)], d, d)
    c = choi(t, d, d)
    psi = vec(np.eye(d, dtype=complex))
    assert max_abs_diff(c, np.outer(psi, psi.conj())) < 1e-12


def test_cp_detection_via_choi():
    # the transpose map is positive but not completely positive
    d = 2
    t = np.zeros((4, 4), dtype=complex)
    for i in range(d):
        for j in range(d):
            e = np.zeros((d, d), dtype=complex)
            e[i, j] = 1
            t[:, i + d * j] = vec(e.T)
    assert not is_completely_positive(t, d, d)
    assert cp_margin(t, d, d) < 0
    good = transfer_from_kraus([random_complex(rng_for(3), (2, 2))], 2, 2)
    assert is_completely_positive(good, 2, 2)


@given(dims, dims, st.integers(0, 2**16))
@settings(max_examples=25, deadline=None)
def test_kraus_from_choi_round_trip(d_in, d_out, seed):
    rng = rng_for(seed)
    ks = [random_complex(rng, (d_out, d_in)) for _ in range(2)]
    t = transfer_from_kraus(ks, d_in, d_out)
    ks2 = kraus_from_choi(choi(t, d_in, d_out), d_in, d_out)
    t2 = transfer_from_kraus(ks2, d_in, d_out)
    assert max_abs_diff(t, t2) < 1e-8


def test_transfer_tensor_is_kron_of_channels():
    rng = rng_for(4)
    k1 = [random_complex(rng, (2, 3))]
    k2 = [random_complex(rng, (2, 2))]
    tf = transfer_from_kraus(k1, 3, 2)
    tg = transfer_from_kraus(k2, 2, 2)
    lhs = transfer_tensor(tf, tg, 3, 2, 2, 2)
    rhs = transfer_from_kraus([np.kron(k1[0], k2[0])], 6, 4)
    assert max_abs_diff(lhs, rhs) < 1e-10


def test_transfer_dual_on_identity_is_kraus_gram():
    rng = rng_for(5)
    ks = [random_complex(rng, (3, 2)) for _ in range(2)]
    t = transfer_from_kraus(ks, 2, 3)
    expect = sum(dagger(k) @ k for k in ks)
    assert max_abs_diff(transfer_dual_on_identity(t, 2, 3), expect) < 1e-10


def test_tolerances_must_be_positive():
    with pytest.raises(ValueError):
        Tol(eq_tol=0.0)
    assert DEFAULT_TOL.eq_tol == 1e-8
