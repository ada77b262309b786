import sys
from pathlib import Path

# 상위 경로를 모듈 검색 경로에 추가
sys.path.append(str(Path(__file__).parent.parent))

import numpy as np
import pytest

from modules.lattice.geometry import build_lattice, TILTED_SQUARE, RECTANGULAR
from modules.models.brute_force import brute_force_partition, internal_spin_count
from modules.models.spin_models import (
    WeightTensor, BoundaryConfig, VertexModel, eight_vertex_model, six_vertex_model, ising_edge_model,
    ising_table, uniform_edge_model, uniform_vertex_model, free_fermion_condition, check_six_vertex_pattern
)
from modules.reductions.bqp import exchange_gate, singlet_gate
from modules.utils.errors import ShapeMismatch, NotEightVertexForm, TooLarge, InvalidDimensions
from modules.utils import sampling


def test_eight_vertex_all_ones():
    model = eight_vertex_model(build_lattice(TILTED_SQUARE, 4, 2), (1,) * 8)
    expected = np.array([[1, 0, 0, 1], [0, 1, 1, 0], [0, 1, 1, 0], [1, 0, 0, 1]])
    for tensor in model.site_weights:
        assert np.array_equal(tensor.matrix, expected)


def test_eight_vertex_identity_tuple():
    model = eight_vertex_model(build_lattice(TILTED_SQUARE, 2, 1), (1, 0, 1, 0, 0, 1, 0, 1))
    assert np.array_equal(model.site_weights[0].matrix, np.eye(4))


def test_six_vertex_exchange_tuple():
    t = np.pi / 8
    a, b, c = np.exp(2j * t), np.cos(2 * t), 1j * np.sin(2 * t)
    model = six_vertex_model(build_lattice(TILTED_SQUARE, 2, 1), (a, b, c, c, b, a))
    matrix = model.site_weights[0].matrix
    assert np.isclose(matrix[0, 0], np.exp(1j * np.pi / 4))
    assert np.isclose(matrix[3, 3], np.exp(1j * np.pi / 4))
    assert np.allclose(matrix[1:3, 1:3], [[np.cos(np.pi / 4), 1j * np.sin(np.pi / 4)],
                                          [1j * np.sin(np.pi / 4), np.cos(np.pi / 4)]])
    assert check_six_vertex_pattern(matrix)


def test_tuple_count_mismatch():
    lattice = build_lattice(TILTED_SQUARE, 4, 2)
    with pytest.raises(ShapeMismatch):
        eight_vertex_model(lattice, [(1,) * 8, (1,) * 8])
    with pytest.raises(InvalidDimensions):
        eight_vertex_model(build_lattice(RECTANGULAR, 2, 2), (1,) * 8)


def test_ising_tables():
    lattice = build_lattice(RECTANGULAR, 2, 2)
    model = ising_edge_model(lattice, 0, 1.0)
    for table in model.tables:
        assert np.array_equal(table.matrix, np.ones((2, 2)))

    table = ising_table(1.0, np.log(2))
    assert np.allclose(table.matrix, [[2, 0.5], [0.5, 2]])
    assert table.is_symmetric_no_field

    unitary = ising_table(1j * np.pi / 4, 1)
    assert np.isclose(unitary.matrix[0, 0], np.exp(1j * np.pi / 4))
    assert np.isclose(unitary.matrix[0, 1], np.exp(-1j * np.pi / 4))
    assert np.allclose(np.abs(unitary.matrix), 1)


def test_boundary_validation():
    boundary = BoundaryConfig((0, 1, 1))
    assert boundary.flipped().values == (1, 0, 0)
    with pytest.raises(ShapeMismatch):
        boundary.validate(2, 2)
    with pytest.raises(ShapeMismatch):
        BoundaryConfig((0, 2)).validate(2, 2)


def test_brute_force_single_site():
    rng = np.random.default_rng(1)
    matrix = sampling.complex_normal(rng, (4, 4))
    model = uniform_vertex_model(build_lattice(TILTED_SQUARE, 2, 1), matrix)
    for i, j, k, l in [(0, 0, 0, 0), (0, 1, 1, 0), (1, 1, 0, 1), (1, 0, 1, 1)]:
        assert np.isclose(brute_force_partition(model, (i, j), (k, l)), matrix[2 * i + j, 2 * k + l])


def test_brute_force_chain():
    model = uniform_edge_model(build_lattice(RECTANGULAR, 1, 3), np.ones((2, 2)))
    assert brute_force_partition(model, (0,), (0,)) == 2

    model = uniform_edge_model(build_lattice(RECTANGULAR, 1, 3), [[2, 0.5], [0.5, 2]])
    assert np.isclose(brute_force_partition(model, (0,), (0,)), 4.25)


@pytest.mark.parametrize("kind,wires,layers", [(TILTED_SQUARE, 4, 3), (RECTANGULAR, 3, 3), (RECTANGULAR, 2, 4)])
def test_all_ones_counts_configurations(kind, wires, layers):
    lattice = build_lattice(kind, wires, layers)
    if kind == RECTANGULAR:
        model = uniform_edge_model(lattice, np.ones((2, 2)))
    else:
        model = uniform_vertex_model(lattice, np.ones((4, 4)))
    left, right = (1,) + (0,) * (wires - 1), (0,) * wires
    assert np.isclose(brute_force_partition(model, left, right), 2 ** internal_spin_count(model))


def test_ising_global_flip():
    rng = np.random.default_rng(7)
    model = ising_edge_model(build_lattice(RECTANGULAR, 3, 3), 0.3, rng.normal(size=12))
    left, right = BoundaryConfig((0, 1, 1)), BoundaryConfig((1, 0, 1))
    z = brute_force_partition(model, left, right)
    assert np.isclose(z, brute_force_partition(model, left.flipped(), right.flipped()))


def test_linearity_in_one_tensor():
    rng = np.random.default_rng(3)
    model = sampling.random_vertex_model(rng, TILTED_SQUARE, 4, 2)
    scaled = list(model.site_weights)
    scaled[1] = scaled[1].scaled(2.5 - 1j)
    scaled_model = VertexModel(model.lattice, model.q, tuple(scaled))
    left, right = (0, 1, 1, 0), (1, 1, 0, 0)
    assert np.isclose(brute_force_partition(scaled_model, left, right),
                      (2.5 - 1j) * brute_force_partition(model, left, right))


def test_brute_force_cap():
    model = uniform_edge_model(build_lattice(RECTANGULAR, 3, 4), np.ones((2, 2)))
    with pytest.raises(TooLarge):
        brute_force_partition(model, (0, 0, 0), (0, 0, 0), max_spins=4)


def test_free_fermion_condition():
    assert free_fermion_condition(WeightTensor(2, 2, np.eye(4)))
    assert not free_fermion_condition(exchange_gate(np.pi / 8).matrix)
    assert free_fermion_condition(singlet_gate().matrix)
    with pytest.raises(NotEightVertexForm):
        free_fermion_condition(np.ones((4, 4)))
    with pytest.raises(NotEightVertexForm):
        free_fermion_condition(WeightTensor(3, 1, np.eye(3)))


def main():
    """메인 테스트 함수"""
    print("스핀 모형 테스트 시작")
    tests = [
        test_eight_vertex_all_ones, test_eight_vertex_identity_tuple, test_six_vertex_exchange_tuple,
        test_ising_tables, test_boundary_validation, test_brute_force_single_site, test_brute_force_chain,
        test_ising_global_flip, test_linearity_in_one_tensor, test_free_fermion_condition,
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
