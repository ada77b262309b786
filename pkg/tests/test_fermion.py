import sys
import time
from pathlib import Path

# 상위 경로를 모듈 검색 경로에 추가
sys.path.append(str(Path(__file__).parent.parent))

import numpy as np
import pytest

from modules.circuit.dense import amplitude_dense, fuse
from modules.circuit.ir import Gate, Circuit, identity_gate, hadamard_gate, x_rotation, zz_rotation
from modules.fermion.matchgate import amplitude_matchgate, is_matchgate, block_determinants
from modules.fermion.pfaffian import pfaffian
from modules.fermion.planar_ising import partition_planar_ising, simulate_xz_circuit, domain_walls
from modules.lattice.geometry import build_lattice, RECTANGULAR
from modules.models.brute_force import brute_force_partition, internal_spin_count
from modules.models.spin_models import ising_edge_model, uniform_edge_model, EdgeModel, EdgeWeightTable
from modules.reductions.bqp import exchange_gate, singlet_gate
from modules.utils.errors import (
    NotAntisymmetric, OddDimension, NotMatchgate, NonInvertibleGate, NotPlanarIsing, NotXZCircuit,
    NumericalBreakdown
)
from modules.utils import sampling


def assert_close(a, b, rtol=1e-9, floor=1e-12):
    """상대 오차 비교 (0 근처는 반올림 하한)"""
    assert abs(a - b) <= max(rtol * abs(b), floor), f"{a} != {b}"


def random_antisymmetric(rng, n):
    m = sampling.complex_normal(rng, (n, n))
    return m - m.T


# Pfaffian

def test_pfaffian_closed_forms():
    assert pfaffian(np.zeros((0, 0))) == 1
    assert np.isclose(pfaffian([[0, 2 - 1j], [-(2 - 1j), 0]]), 2 - 1j)

    rng = np.random.default_rng(0)
    a12, a13, a14, a23, a24, a34 = sampling.complex_normal(rng, 6)
    matrix = np.array([
        [0, a12, a13, a14],
        [-a12, 0, a23, a24],
        [-a13, -a23, 0, a34],
        [-a14, -a24, -a34, 0],
    ])
    assert np.isclose(pfaffian(matrix), a12 * a34 - a13 * a24 + a14 * a23)


@pytest.mark.parametrize("n,seed", [(6, 1), (8, 2), (12, 3)])
def test_pfaffian_squared_is_determinant(n, seed):
    matrix = random_antisymmetric(np.random.default_rng(seed), n)
    det = np.linalg.det(matrix)
    assert abs(pfaffian(matrix) ** 2 - det) <= 1e-9 * abs(det)


def test_pfaffian_errors():
    with pytest.raises(NotAntisymmetric):
        pfaffian(np.ones((2, 2)))
    with pytest.raises(OddDimension):
        pfaffian(np.zeros((3, 3)))


# Matchgate 판정

def test_is_matchgate():
    assert is_matchgate(identity_gate((1, 2)))
    assert is_matchgate(singlet_gate())
    assert not is_matchgate(exchange_gate(np.pi / 8))
    assert not is_matchgate(hadamard_gate(1))
    for t in (0.0, np.pi / 2, np.pi):
        assert is_matchgate(exchange_gate(t))


def test_matchgate_group_closure():
    rng = np.random.default_rng(4)
    for index in range(100):
        unitary = index % 2 == 0
        g1 = Gate((1, 2), 2, sampling.random_matchgate(rng, unitary))
        g2 = Gate((1, 2), 2, sampling.random_matchgate(rng, unitary))
        assert is_matchgate(g1) and is_matchgate(g2)
        assert is_matchgate(fuse(g1, g2), tol=1e-9)


def test_block_determinants_of_singlet():
    even, odd = block_determinants(singlet_gate())
    assert np.isclose(even, 1)
    assert np.isclose(odd, 1)


# Matchgate 진폭

def test_identity_circuit_is_delta():
    circuit = Circuit(4, 2, (identity_gate((1, 2)), identity_gate((2, 3)), identity_gate((3, 4))))
    assert np.isclose(amplitude_matchgate(circuit, (1, 0, 1, 1), (1, 0, 1, 1)), 1)
    assert np.isclose(amplitude_matchgate(circuit, (1, 0, 1, 1), (1, 1, 0, 1)), 0)


def test_singlet_gate_amplitude():
    circuit = Circuit(2, 2, (singlet_gate(),))
    assert np.isclose(amplitude_matchgate(circuit, (0, 1), (0, 1)), 1 / np.sqrt(2))
    assert np.isclose(amplitude_matchgate(circuit, (1, 0), (0, 1)), -1 / np.sqrt(2))


def test_unitary_matchgate_circuit_matches_dense():
    rng = np.random.default_rng(10)
    circuit = sampling.random_matchgate_circuit(rng, 8, 8, unitary_fraction=1.0)
    for _ in range(4):
        left = sampling.random_boundary(rng, 8).values
        right = sampling.random_boundary(rng, 8).values
        assert_close(amplitude_matchgate(circuit, left, right), amplitude_dense(circuit, left, right), 1e-8)


def test_nonunitary_matchgate_circuit_matches_dense():
    rng = np.random.default_rng(11)
    circuit = sampling.random_matchgate_circuit(rng, 5, 5, unitary_fraction=0.0)
    for _ in range(4):
        left = sampling.random_boundary(rng, 5).values
        right = sampling.random_boundary(rng, 5).values
        assert_close(amplitude_matchgate(circuit, left, right), amplitude_dense(circuit, left, right), 1e-8)


def test_random_matchgate_circuits_match_dense():
    for seed in range(100):
        rng = np.random.default_rng(500 + seed)
        wires, depth = int(rng.integers(2, 11)), int(rng.integers(1, 13))
        circuit = sampling.random_matchgate_circuit(rng, wires, depth)
        left = sampling.random_boundary(rng, wires).values
        right = sampling.random_boundary(rng, wires).values
        assert_close(amplitude_matchgate(circuit, left, right), amplitude_dense(circuit, left, right), 1e-8)


def test_matchgate_scaling_run():
    rng = np.random.default_rng(36)
    circuit = sampling.random_matchgate_circuit(rng, 36, 50, unitary_fraction=1.0)
    right = sampling.random_boundary(rng, 36).values
    start = time.perf_counter()
    value = amplitude_matchgate(circuit, right, right)
    assert time.perf_counter() - start < 5.0
    assert np.isfinite(value) and abs(value) <= 1 + 1e-8

    # C 다음에 C†를 붙이면 항등
    inverse = circuit.appended(*[g.dagger() for g in reversed(circuit.gates)])
    assert abs(amplitude_matchgate(inverse, right, right) - 1) <= 1e-6


def test_zero_vacuum_and_reversed_gates():
    rng = np.random.default_rng(12)
    xx = np.fliplr(np.eye(4))
    gates = (
        Gate((1, 2), 2, sampling.random_matchgate(rng)),
        Gate((2, 3), 2, xx),
        Gate((3, 2), 2, sampling.random_matchgate(rng)),
        Gate((1, 2), 2, xx),
    )
    circuit = Circuit(3, 2, gates)
    for left, right in [((0, 0, 0), (1, 1, 0)), ((1, 0, 1), (0, 1, 1)), ((1, 1, 1), (1, 0, 0))]:
        assert_close(amplitude_matchgate(circuit, left, right), amplitude_dense(circuit, left, right), 1e-8)


def test_singular_gate_policy():
    projector = np.diag([1.0, 0.0, 0.0, 0.0]).astype(complex)
    gates = (Gate((1, 2), 2, sampling.random_matchgate(np.random.default_rng(13))), Gate((2, 3), 2, projector))
    circuit = Circuit(3, 2, gates)
    with pytest.raises(NonInvertibleGate):
        amplitude_matchgate(circuit, (0, 0, 0), (0, 0, 0))
    for left, right in [((0, 0, 0), (0, 0, 0)), ((1, 0, 0), (0, 1, 0)), ((0, 1, 0), (0, 1, 0))]:
        assert_close(amplitude_matchgate(circuit, left, right, allow_singular=True),
                     amplitude_dense(circuit, left, right), 1e-8)


def test_not_matchgate():
    with pytest.raises(NotMatchgate):
        amplitude_matchgate(Circuit(2, 2, (exchange_gate(np.pi / 8),)), (0, 1), (0, 1))
    with pytest.raises(NotMatchgate):
        amplitude_matchgate(Circuit(3, 2, (identity_gate((1, 3)),)), (0, 0, 0), (0, 0, 0))
    with pytest.raises(NotMatchgate):
        amplitude_matchgate(Circuit(2, 2, (hadamard_gate(1),)), (0, 0), (0, 0))


# 평면 Ising

def test_domain_walls():
    assert domain_walls((0, 1, 1)) == [0, 1, 0, 1]
    assert domain_walls((1,)) == [1, 1]


def test_planar_single_row_chain():
    model = uniform_edge_model(build_lattice(RECTANGULAR, 1, 3), [[2, 0.5], [0.5, 2]])
    assert np.isclose(partition_planar_ising(model, (0,), (0,)), 4.25)


def test_planar_all_ones():
    model = uniform_edge_model(build_lattice(RECTANGULAR, 3, 3), np.ones((2, 2)))
    expected = 2 ** internal_spin_count(model)
    assert np.isclose(partition_planar_ising(model, (0, 1, 0), (1, 1, 0)), expected)


@pytest.mark.parametrize("seed,beta", [(20, 0.4), (21, 0.3 + 0.5j), (22, 1j * np.pi / 4)])
def test_planar_matches_brute_force(seed, beta):
    rng = np.random.default_rng(seed)
    lattice = build_lattice(RECTANGULAR, 4, 4)
    model = ising_edge_model(lattice, beta, rng.normal(size=lattice.site_count))
    for _ in range(3):
        left = sampling.random_boundary(rng, 4).values
        right = sampling.random_boundary(rng, 4).values
        assert_close(partition_planar_ising(model, left, right), brute_force_partition(model, left, right))


def test_random_planar_instances_match_brute_force():
    for seed in range(100):
        rng = np.random.default_rng(700 + seed)
        rows, columns = int(rng.integers(1, 5)), int(rng.integers(1, 5))
        model = sampling.random_edge_model(rng, rows, columns, symmetric=True, real=bool(seed % 2))
        left = sampling.random_boundary(rng, rows).values
        right = sampling.random_boundary(rng, rows).values
        assert_close(partition_planar_ising(model, left, right), brute_force_partition(model, left, right))


def test_planar_zero_same_weight_is_exact():
    rng = np.random.default_rng(23)
    lattice = build_lattice(RECTANGULAR, 3, 4)
    tables = []
    for _ in lattice.sites:
        diff = rng.normal() + 1j * rng.normal()
        tables.append(EdgeWeightTable(2, np.array([[0, diff], [diff, 0]])))
    model = EdgeModel(lattice, 2, tuple(tables))
    for _ in range(4):
        left = sampling.random_boundary(rng, 3).values
        right = sampling.random_boundary(rng, 3).values
        assert_close(partition_planar_ising(model, left, right), brute_force_partition(model, left, right))


def test_planar_scaling_run():
    rng = np.random.default_rng(25)
    lattice = build_lattice(RECTANGULAR, 24, 24)
    model = ising_edge_model(lattice, 0.4, rng.normal(size=lattice.site_count))
    left = sampling.random_boundary(rng, 24).values
    right = sampling.random_boundary(rng, 24).values
    start = time.perf_counter()
    value = partition_planar_ising(model, left, right)
    assert time.perf_counter() - start < 5.0
    assert np.isfinite(value) and value.real > 0
    assert abs(value.imag) <= 1e-8 * value.real

    # 전역 스핀 뒤집기 대칭
    flipped = partition_planar_ising(model, tuple(1 - v for v in left), tuple(1 - v for v in right))
    assert_close(flipped, value, 1e-6)


def test_planar_overflow_is_reported():
    lattice = build_lattice(RECTANGULAR, 24, 24)
    # 정렬된 배치 하나만으로도 e^(2 · 1104) > 부동소수점 최댓값
    model = ising_edge_model(lattice, 2.0, np.ones(lattice.site_count))
    with pytest.raises(NumericalBreakdown):
        partition_planar_ising(model, (0,) * 24, (0,) * 24)


def test_not_planar_ising():
    model = uniform_edge_model(build_lattice(RECTANGULAR, 2, 2), [[1, 2], [3, 4]])
    with pytest.raises(NotPlanarIsing):
        partition_planar_ising(model, (0, 0), (0, 0))
    qutrit = uniform_edge_model(build_lattice(RECTANGULAR, 2, 2), np.ones((3, 3)))
    with pytest.raises(NotPlanarIsing):
        partition_planar_ising(qutrit, (0, 0), (0, 0))


# XZ 회로

def test_xz_trivial_circuits():
    circuit = Circuit(3, 2, (x_rotation(1, 0.0), zz_rotation(1, 2, 0.0), x_rotation(3, 0.0)))
    assert np.isclose(simulate_xz_circuit(circuit, (1, 0, 1), (1, 0, 1)), 1)
    assert np.isclose(simulate_xz_circuit(circuit, (1, 0, 1), (0, 0, 1)), 0)

    alpha = 0.37
    single = Circuit(1, 2, (x_rotation(1, alpha),))
    assert np.isclose(simulate_xz_circuit(single, (0,), (0,)), np.cos(alpha))
    assert np.isclose(simulate_xz_circuit(single, (1,), (0,)), 1j * np.sin(alpha))


def test_random_xz_circuits_match_dense():
    for seed in range(60):
        rng = np.random.default_rng(900 + seed)
        wires, depth = int(rng.integers(1, 7)), int(rng.integers(1, 9))
        circuit = sampling.random_xz_circuit(rng, wires, depth)
        left = sampling.random_boundary(rng, wires).values
        right = sampling.random_boundary(rng, wires).values
        assert_close(simulate_xz_circuit(circuit, left, right), amplitude_dense(circuit, left, right), 1e-8)


def test_xz_circuit_with_large_kernel_entries():
    # 진공 성분이 작은 게이트가 있어 커널 성분이 커지는 회로
    circuit = sampling.random_xz_circuit(np.random.default_rng(3022), 6, 3)
    for index in range(64):
        left = tuple(int(b) for b in format(index, "06b"))
        right = tuple(int(b) for b in format((index * 37) % 64, "06b"))
        assert_close(simulate_xz_circuit(circuit, left, right), amplitude_dense(circuit, left, right), 1e-8)


def test_xz_quarter_turn_rotations():
    rng = np.random.default_rng(33)
    gates = []
    for w in range(1, 5):
        gates.append(x_rotation(w, np.pi / 2))
    for w in range(1, 4):
        gates.append(zz_rotation(w, w + 1, rng.uniform(-np.pi, np.pi)))
    gates.append(x_rotation(2, np.pi / 2))
    circuit = Circuit(4, 2, tuple(gates))
    for _ in range(4):
        left = sampling.random_boundary(rng, 4).values
        right = sampling.random_boundary(rng, 4).values
        assert_close(simulate_xz_circuit(circuit, left, right), amplitude_dense(circuit, left, right), 1e-8)


def test_not_xz_circuit():
    with pytest.raises(NotXZCircuit):
        simulate_xz_circuit(Circuit(2, 2, (hadamard_gate(1),)), (0, 0), (0, 0))
    with pytest.raises(NotXZCircuit):
        simulate_xz_circuit(Circuit(2, 2, (exchange_gate(0.3),)), (0, 0), (0, 0))


def main():
    """메인 테스트 함수"""
    print("자유 페르미온 엔진 테스트 시작")
    tests = [
        test_pfaffian_closed_forms, test_pfaffian_errors, test_is_matchgate, test_matchgate_group_closure,
        test_block_determinants_of_singlet, test_identity_circuit_is_delta, test_singlet_gate_amplitude,
        test_unitary_matchgate_circuit_matches_dense, test_nonunitary_matchgate_circuit_matches_dense,
        test_random_matchgate_circuits_match_dense, test_matchgate_scaling_run,
        test_zero_vacuum_and_reversed_gates, test_singular_gate_policy, test_not_matchgate,
        test_domain_walls, test_planar_single_row_chain, test_planar_all_ones,
        test_random_planar_instances_match_brute_force, test_planar_zero_same_weight_is_exact,
        test_planar_scaling_run, test_planar_overflow_is_reported, test_not_planar_ising,
        test_xz_trivial_circuits, test_random_xz_circuits_match_dense, test_xz_circuit_with_large_kernel_entries,
        test_xz_quarter_turn_rotations, test_not_xz_circuit,
    ]
    results = {}
    for test in tests:
        try:
            test()
            results[test.__name__] = True
        except AssertionError as e:
            print(f"{test.__name__} 실패: {e}")
            results[test.__name__] = False

    print("\n=== 테스트 결과 요약 ===")
    for name, result in results.items():
        print(f"{name}: {'성공' if result else '실패'}")
    print(f"\n전체 테스트 결과: {'성공' if all(results.values()) else '실패'}")


if __name__ == "__main__":
    main()
