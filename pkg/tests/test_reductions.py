import sys
from pathlib import Path

# 상위 경로를 모듈 검색 경로에 추가
sys.path.append(str(Path(__file__).parent.parent))

import numpy as np
import pytest

from modules.circuit.dense import amplitude_dense, is_unitary
from modules.circuit.ir import Circuit, hadamard_gate, identity_gate, x_rotation
from modules.compiler.translator import compile_edge_model
from modules.models.brute_force import brute_force_partition, internal_spin_count
from modules.models.serialization import exchange_spec_from_json
from modules.models.spin_models import (
    VertexModel, WeightTensor, check_six_vertex_pattern, free_fermion_condition
)
from modules.reductions.bqp import (
    ExchangeCircuitSpec, ReductionInstance, exchange_gate, singlet_gate, staggered_boundary,
    conjugated_circuit, six_vertex_instance, logical_amplitude, em_instance, classify_gate, verify_reduction
)
from modules.utils.errors import UnsupportedGate, NotBrickwork, WireOutOfRange, InvalidInput
from modules.utils import sampling


def test_exchange_gate_entries():
    assert np.allclose(exchange_gate(0).matrix, np.eye(4))
    quarter = exchange_gate(np.pi / 4).matrix
    assert np.isclose(quarter[0, 0], 1j) and np.isclose(quarter[3, 3], 1j)
    assert np.allclose(quarter[1:3, 1:3], [[0, 1j], [1j, 0]])


def test_exchange_gate_unitary_not_free_fermion():
    for t in np.random.default_rng(0).uniform(0.05, 1.5, size=20):
        gate = exchange_gate(t)
        assert is_unitary(gate, 1e-12)
        assert check_six_vertex_pattern(gate.matrix)
        assert not free_fermion_condition(gate.matrix)


def test_singlet_gate():
    v = singlet_gate().matrix
    s = 1 / np.sqrt(2)
    assert np.allclose(v[:, 1], [0, s, -s, 0])
    assert is_unitary(v, 1e-15)
    assert free_fermion_condition(v)


def test_spec_validation():
    spec = ExchangeCircuitSpec(1, (((2, 3), 0.3),))
    assert spec.wires == 4
    assert exchange_spec_from_json(spec.to_json()).pulses == spec.pulses
    with pytest.raises(NotBrickwork):
        ExchangeCircuitSpec(1, (((1, 3), 0.3),))
    with pytest.raises(WireOutOfRange):
        ExchangeCircuitSpec(1, (((4, 5), 0.3),))
    with pytest.raises(InvalidInput):
        ExchangeCircuitSpec(0)


def test_empty_six_vertex_instance():
    instance = six_vertex_instance(ExchangeCircuitSpec(1))
    assert instance.left == instance.right == (0, 1, 0, 1)
    z = brute_force_partition(instance.model, instance.left, instance.right)
    assert np.isclose(z, 1)

    report = verify_reduction(instance, tol=0)
    assert report["passed"]
    assert report["abs_deviation"] <= 1e-12


def test_single_exchange_pulse():
    spec = ExchangeCircuitSpec(1, (((2, 3), 0.4),))
    instance = six_vertex_instance(spec)
    z = brute_force_partition(instance.model, instance.left, instance.right)
    assert abs(z - logical_amplitude(spec)) <= 1e-9
    assert verify_reduction(instance)["passed"]


def test_half_pi_pulse_keeps_code_space():
    spec = ExchangeCircuitSpec(1, (((1, 2), np.pi / 2),))
    instance = six_vertex_instance(spec)
    z = brute_force_partition(instance.model, instance.left, instance.right)
    assert np.isclose(abs(z), 1)


def test_boundary_rewriting_identity():
    boundary = staggered_boundary(1)
    for seed in range(50):
        rng = np.random.default_rng(seed)
        spec = sampling.random_exchange_spec(rng, 1, int(rng.integers(1, 7)))
        reference = logical_amplitude(spec)
        assert abs(amplitude_dense(conjugated_circuit(spec), boundary, boundary) - reference) <= 1e-9

        instance = six_vertex_instance(spec)
        for tensor in instance.model.site_weights:
            assert check_six_vertex_pattern(tensor.matrix)
            assert is_unitary(tensor.matrix)
        report = verify_reduction(instance)
        assert report["passed"], report


def test_corrupted_tensor_fails():
    spec = ExchangeCircuitSpec(1, (((2, 3), 0.4),))
    instance = six_vertex_instance(spec)
    tensors = list(instance.model.site_weights)
    corrupted = tensors[0].matrix.copy()
    corrupted[1, 1] += 0.1
    tensors[0] = WeightTensor(2, 2, corrupted)
    broken = ReductionInstance(
        instance.kind, VertexModel(instance.model.lattice, 2, tuple(tensors)),
        instance.left, instance.right, instance.reference_circuit, instance.spec
    )
    report = verify_reduction(broken)
    assert not report["passed"]
    assert report["abs_deviation"] > 1e-3


def test_em_instance_small_cases():
    instance = em_instance(Circuit(2, 2, (identity_gate((1,)), identity_gate((1, 2)))))
    assert np.isclose(brute_force_partition(instance.model, instance.left, instance.right), 1)

    instance = em_instance(Circuit(1, 2, (hadamard_gate(1),)))
    assert instance.left == instance.right == (0,)
    assert np.isclose(brute_force_partition(instance.model, (0,), (0,)), 1 / np.sqrt(2))


def test_em_instance_random_circuit():
    rng = np.random.default_rng(7)
    circuit = sampling.random_gateset_circuit(rng, 4, 20)
    instance = em_instance(circuit)
    compiled = compile_edge_model(instance.model)
    zeros = (0, 0, 0, 0)
    assert abs(amplitude_dense(compiled, zeros, zeros) - amplitude_dense(circuit, zeros, zeros)) <= 1e-9

    for table in instance.model.tables:
        magnitudes = np.abs(table.matrix).reshape(-1)
        assert all(min(abs(m - v) for v in (0, 1 / np.sqrt(2), 1)) <= 1e-12 for m in magnitudes)


def test_em_instance_verifies():
    for seed in range(50):
        rng = np.random.default_rng(100 + seed)
        wires, depth = int(rng.integers(1, 5)), int(rng.integers(1, 21))
        circuit = sampling.random_gateset_circuit(rng, wires, depth)
        instance = em_instance(circuit)
        zeros = (0,) * wires
        expected = amplitude_dense(circuit, zeros, zeros)
        assert abs(amplitude_dense(compile_edge_model(instance.model), zeros, zeros) - expected) <= 1e-9
        # 완전 열거가 가능한 크기는 검증 보고서까지 확인
        if internal_spin_count(instance.model) <= 16:
            report = verify_reduction(instance)
            assert report["passed"], report
            assert report["kind"] == "edge"


def test_unsupported_gate():
    assert classify_gate(hadamard_gate(2)) == "H"
    with pytest.raises(UnsupportedGate):
        em_instance(Circuit(2, 2, (x_rotation(1, 0.3),)))
    with pytest.raises(UnsupportedGate):
        em_instance(Circuit(2, 2, (exchange_gate(0.3),)))


def main():
    """메인 테스트 함수"""
    print("BQP 환원 테스트 시작")
    tests = [
        test_exchange_gate_entries, test_exchange_gate_unitary_not_free_fermion, test_singlet_gate,
        test_spec_validation, test_empty_six_vertex_instance, test_single_exchange_pulse,
        test_half_pi_pulse_keeps_code_space, test_boundary_rewriting_identity, test_corrupted_tensor_fails,
        test_em_instance_small_cases, test_em_instance_random_circuit, test_em_instance_verifies, test_unsupported_gate,
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
