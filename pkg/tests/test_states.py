import json

import numpy as np
import pytest

from entcert import (
    DensityMatrix,
    InvariantViolation,
    PureState,
    SchmidtVector,
    Witness,
    bell_state,
    fixture,
    frobenius_inner,
    load_state,
    load_witness,
    partial_transpose,
    save_state,
    save_witness,
    schmidt,
    singlet_state,
)

from conftest import haar_unitary, haar_vector, random_density


def test_density_matrix_accepts_valid(rng):
    DensityMatrix(dims=(2, 3), mat=np.eye(6) / 6)
    DensityMatrix(dims=(3, 3), mat=random_density(rng, 9))


def test_density_matrix_rejects_bad_trace():
    with pytest.raises(InvariantViolation, match="trace"):
        DensityMatrix(dims=(2, 2), mat=np.eye(4) / 4 * 0.9)


def test_density_matrix_rejects_nonhermitian():
    mat = np.eye(4, dtype=complex) / 4
    mat[0, 1] = 0.1
    with pytest.raises(InvariantViolation, match="hermiticity"):
        DensityMatrix(dims=(2, 2), mat=mat)


def test_density_matrix_rejects_negative():
    mat = np.diag([0.7, 0.5, -0.1, -0.1]).astype(complex)
    with pytest.raises(InvariantViolation, match="positivity"):
        DensityMatrix(dims=(2, 2), mat=mat)


def test_density_matrix_rejects_wrong_shape():
    with pytest.raises(InvariantViolation):
        DensityMatrix(dims=(2, 2), mat=np.eye(6) / 6)


def test_pure_state_norm_invariant():
    with pytest.raises(InvariantViolation, match="norm"):
        PureState(dims=(2, 2), vec=np.array([1.0, 1.0, 0.0, 0.0]))


def test_schmidt_vector_invariants():
    with pytest.raises(InvariantViolation, match="order"):
        SchmidtVector(coeffs=[0.3, 0.7])
    with pytest.raises(InvariantViolation, match="normalization"):
        SchmidtVector(coeffs=[0.5, 0.4])
    sv = SchmidtVector(coeffs=[0.7, 0.3])
    assert sv.largest == 0.7


def test_schmidt_product_state():
    vec = np.zeros(4)
    vec[1] = 1.0  # |0>|1>
    lam, _, _ = schmidt(PureState(dims=(2, 2), vec=vec))
    assert lam.coeffs[0] == pytest.approx(1.0, abs=1e-15)


def test_schmidt_bell():
    lam, _, _ = schmidt(bell_state(2))
    assert np.allclose(lam.coeffs, [0.5, 0.5], atol=1e-15)


def test_schmidt_amplitudes_squared():
    vec = np.zeros(4)
    vec[0], vec[3] = 0.8, 0.6
    lam, _, _ = schmidt(PureState(dims=(2, 2), vec=vec))
    assert np.allclose(lam.coeffs, [0.64, 0.36], atol=1e-15)


def test_schmidt_reconstruction(rng):
    for dims in [(2, 2), (3, 3), (2, 3), (4, 2)]:
        psi = PureState(dims=dims, vec=haar_vector(rng, dims[0] * dims[1]))
        lam, ba, bb = schmidt(psi)
        rebuilt = sum(
            np.sqrt(lam.coeffs[k]) * np.kron(ba[:, k], bb[:, k])
            for k in range(lam.coeffs.size)
        )
        assert np.abs(rebuilt - psi.vec).max() < 1e-9
        assert np.abs(ba.conj().T @ ba - np.eye(dims[0])).max() < 1e-12
        assert np.abs(bb.conj().T @ bb - np.eye(dims[1])).max() < 1e-12


def test_schmidt_local_unitary_invariance(rng):
    psi = PureState(dims=(3, 3), vec=haar_vector(rng, 9))
    lam, _, _ = schmidt(psi)
    for _ in range(5):
        u = haar_unitary(rng, 3)
        v = haar_unitary(rng, 3)
        rotated = PureState(dims=(3, 3), vec=np.kron(u, v) @ psi.vec)
        lam2, _, _ = schmidt(rotated)
        assert np.abs(np.sort(lam.coeffs) - np.sort(lam2.coeffs)).max() < 1e-9


def test_save_load_round_trip_bit_exact(tmp_path, rng):
    rho = DensityMatrix(dims=(2, 3), mat=random_density(rng, 6))
    path = tmp_path / "state.json"
    save_state(rho, path)
    back = load_state(path)
    assert back.dims == rho.dims
    assert np.array_equal(back.mat, rho.mat)


def test_load_maximally_mixed(tmp_path):
    payload = {
        "dims": [2, 2],
        "matrix": [[[0.25 if i == j else 0.0, 0.0] for j in range(4)] for i in range(4)],
    }
    path = tmp_path / "mm.json"
    path.write_text(json.dumps(payload))
    rho = load_state(path)
    assert np.array_equal(rho.mat, np.eye(4) / 4)


def test_load_rejects_bad_trace(tmp_path):
    payload = {
        "dims": [2, 2],
        "matrix": [[[0.225 if i == j else 0.0, 0.0] for j in range(4)] for i in range(4)],
    }
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(payload))
    with pytest.raises(InvariantViolation, match="trace"):
        load_state(path)


def test_load_rejects_garbage(tmp_path):
    path = tmp_path / "garbage.json"
    path.write_text("{not json")
    with pytest.raises(InvariantViolation, match="parse"):
        load_state(path)


def test_load_rejects_missing_file(tmp_path):
    with pytest.raises(InvariantViolation, match="parse"):
        load_state(tmp_path / "missing.json")


def test_load_rejects_malformed_rows(tmp_path):
    path = tmp_path / "rows.json"
    path.write_text(json.dumps({"dims": [2, 2], "matrix": [[1, 2], [3, 4]]}))
    with pytest.raises(InvariantViolation):
        load_state(path)


def test_witness_file_round_trip(tmp_path):
    w = fixture("paper_mub_witness")
    path = tmp_path / "w.json"
    save_witness(w, path)
    back = load_witness(path)
    assert isinstance(back, Witness)
    assert np.array_equal(back.mat, w.mat)
    # a witness file is not accepted as a state
    with pytest.raises(InvariantViolation, match="kind"):
        load_state(path)
    # and a state file is not accepted as a witness
    save_state(fixture("paper_ppt_state"), tmp_path / "s.json")
    with pytest.raises(InvariantViolation, match="kind"):
        load_witness(tmp_path / "s.json")


def test_fixture_exact_entries():
    rho = fixture("paper_ppt_state")
    assert rho.mat[0, 0] == 1 / 15
    assert rho.mat[1, 1] == 2 / 15
    assert rho.mat[1, 5] == -1 / 15
    w = fixture("paper_mub_witness")
    assert w.mat[0, 0] == 4 / 3
    assert w.mat[0, 4] == -1 / 3
    assert w.mat[1, 5] == 2 / 3


def test_fixture_paper_state_is_ppt():
    rho = fixture("paper_ppt_state")
    pt = partial_transpose(rho.mat, (3, 3), "B")
    assert np.linalg.eigvalsh(pt).min() >= -1e-12


def test_fixture_witness_value():
    val = frobenius_inner(fixture("paper_mub_witness").mat, fixture("paper_ppt_state").mat)
    assert abs(val - (-2 / 15)) <= 1e-12


def test_fixture_bell():
    rho = fixture("bell(3)")
    vec = np.zeros(9)
    vec[[0, 4, 8]] = 1 / np.sqrt(3)
    assert np.abs(rho.mat - np.outer(vec, vec)).max() < 1e-15


def test_fixture_singlet_annihilated_by_collectives():
    from entcert import collective, gellmann

    vec = singlet_state().vec
    for g in collective(gellmann(2)).ops:
        assert np.abs(g @ vec).max() < 1e-15


def test_fixture_unknown_name():
    with pytest.raises(InvariantViolation, match="unknown fixture"):
        fixture("nope")
