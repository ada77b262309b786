"""
모형 ⇄ 회로 변환기

compile_*: 스핀 모형 → 회로. 분배함수 Z(L, R)이 회로 진폭 <L|C|R>과 같아진다.
circuit_to_*: 회로 → 스핀 모형. 빈 자리는 항등 텐서/표로 채운다.
"""
import logging

import numpy as np

from modules.circuit.ir import Gate, Circuit
from modules.lattice.geometry import (
    build_lattice, site_list, TILTED_SQUARE, TILTED_TRIANGULAR, RECTANGULAR, VERTICAL
)
from modules.models.spin_models import (
    VertexModel, EdgeModel, WeightTensor, EdgeWeightTable, as_boundary
)
from modules.utils.errors import NotBrickwork, NotEdgeShaped

logger = logging.getLogger(__name__)

DIAGONAL_TOL = 1e-12


def _check_boundaries(wires, q, left, right):
    if left is not None:
        as_boundary(left).validate(wires, q)
    if right is not None:
        as_boundary(right).validate(wires, q)


def compile_vertex_model(model, left=None, right=None):
    """
    vertex 모형 → 회로

    게이트 순서는 site_list 순서(layer 1이 먼저)이고, 각 게이트 행렬은 사이트 텐서 그대로다.
    경계는 회로에 저장되지 않으며 검증용으로만 받는다.

    Args:
        model (VertexModel): vertex 모형
        left, right: 경계 (선택)

    Returns:
        Circuit: 회로
    """
    lattice = model.lattice
    _check_boundaries(lattice.wires, model.q, left, right)

    gates = []
    for site_id, _, _ in site_list(lattice):
        site = lattice.sites[site_id]
        gates.append(Gate(site.wires, model.q, model.site_weights[site_id].matrix))

    logger.debug(f"vertex 모형 컴파일: sites={len(gates)}, N={lattice.wires}, M={lattice.layers}")
    return Circuit(lattice.wires, model.q, tuple(gates))


def compile_edge_model(model, left=None, right=None):
    """
    edge 모형 → 회로

    수직 슬라이스는 대각 2-qubit 게이트 Σ w_ij |ij><ij|, 수평 슬라이스는 단일 wire 게이트
    Σ w_ij |i><j| (i = 왼쪽 열 스핀, j = 오른쪽 열 스핀)가 된다. 가장 오른쪽 열이 먼저 적용된다.

    Args:
        model (EdgeModel): edge 모형
        left, right: 경계 (선택)

    Returns:
        Circuit: 회로
    """
    lattice = model.lattice
    q = model.q
    _check_boundaries(lattice.wires, q, left, right)

    gates = []
    for site in lattice.sites:
        table = model.tables[site.site_id].matrix
        if site.kind == VERTICAL:
            gates.append(Gate(site.wires, q, np.diag(table.reshape(-1))))
        else:
            gates.append(Gate(site.wires, q, table))

    logger.debug(f"edge 모형 컴파일: slices={lattice.slice_count}, rows={lattice.wires}")
    return Circuit(lattice.wires, q, tuple(gates))


def _swap_conjugate(matrix, q):
    """wire 순서가 뒤집힌 2-local 게이트를 (w, w+1) 순서로 변환"""
    tensor = matrix.reshape(q, q, q, q).transpose(1, 0, 3, 2)
    return tensor.reshape(q * q, q * q)


def _span_parity_ok(kind, wire, layer):
    if kind == TILTED_SQUARE:
        return (layer % 2) == (wire % 2)
    return (layer - 1) % 3 == (wire - 1) % 3


def circuit_to_vertex_model(circuit, layers=None):
    """
    brickwork 회로 → vertex 모형

    모든 게이트가 인접 wire 위의 2-local(또는 3-local) 게이트여야 한다.
    각 게이트는 앞선 게이트와 충돌하지 않는 가장 이른 layer에 배치되고, 남은 사이트는 항등 텐서로 채운다.

    Args:
        circuit (Circuit): 회로
        layers (int, optional): 최소 layer 수

    Returns:
        VertexModel: 모형
    """
    if circuit.dims != (circuit.q,) * circuit.wires:
        raise NotBrickwork("혼합 기수 회로는 vertex 모형으로 변환할 수 없습니다")
    arities = {g.arity for g in circuit.gates}
    if arities - {2, 3} or len(arities) > 1:
        raise NotBrickwork(f"게이트는 모두 2-local 이거나 모두 3-local 이어야 합니다: {sorted(arities)}")
    kind = TILTED_TRIANGULAR if arities == {3} else TILTED_SQUARE
    span = 3 if kind == TILTED_TRIANGULAR else 2
    q = circuit.q

    front = [0] * (circuit.wires + 2)
    placed = {}
    for index, gate in enumerate(circuit.gates):
        wires = gate.wires
        matrix = gate.matrix
        if span == 2 and wires == (wires[0], wires[0] - 1):
            matrix = _swap_conjugate(matrix, q)
            wires = (wires[1], wires[0])
        first = wires[0]
        if wires != tuple(range(first, first + span)):
            raise NotBrickwork(f"게이트 {index}가 인접 wire 위에 있지 않습니다: {gate.wires}")

        layer = max(front[w] for w in wires) + 1
        while not _span_parity_ok(kind, first, layer):
            layer += 1
        for w in wires:
            front[w] = layer
        placed[(layer, first)] = matrix

    depth = max([1, layers or 1] + [layer for layer, _ in placed])
    lattice = build_lattice(kind, circuit.wires, depth)
    identity = np.eye(q ** span, dtype=complex)
    tensors = []
    for site in lattice.sites:
        matrix = placed.pop((site.layer, site.wires[0]), identity)
        tensors.append(WeightTensor(q, span, matrix))
    if placed:
        raise NotBrickwork(f"격자에 놓을 수 없는 게이트 위치: {sorted(placed)}")

    logger.info(f"회로 → vertex 모형 변환 완료: {kind}, N={circuit.wires}, M={depth}")
    return VertexModel(lattice, q, tuple(tensors))


def _diagonal_table(gate, q):
    matrix = gate.matrix
    off = matrix - np.diag(np.diag(matrix))
    if np.max(np.abs(off)) > DIAGONAL_TOL:
        raise NotEdgeShaped(f"2-local 게이트가 대각이 아닙니다: wires={gate.wires}")
    table = np.diag(matrix).reshape(q, q)
    if gate.wires[0] > gate.wires[1]:
        table = table.T
    return table


def circuit_to_edge_model(circuit, columns=None):
    """
    단일 wire 게이트 + 인접 대각 2-qubit 게이트 회로 → edge 모형

    홀수 슬라이스는 수직, 짝수 슬라이스는 수평이다. 같은 수직 슬라이스에 놓인 대각 게이트는
    서로 교환되므로 가중치를 성분별로 곱한다. 마지막 슬라이스는 수직이 되도록 열을 채운다.

    Args:
        circuit (Circuit): 회로
        columns (int, optional): 최소 열 수

    Returns:
        EdgeModel: 모형
    """
    if circuit.dims != (circuit.q,) * circuit.wires:
        raise NotEdgeShaped("혼합 기수 회로는 edge 모형으로 변환할 수 없습니다")
    q = circuit.q
    front = [0] * (circuit.wires + 1)
    vertical = {}
    horizontal = {}

    for index, gate in enumerate(circuit.gates):
        if gate.arity == 1:
            (w,) = gate.wires
            s = front[w] + 1
            if s % 2 == 1:
                s += 1
            front[w] = s
            horizontal[(s, w)] = gate.matrix
        elif gate.arity == 2:
            upper, lower = sorted(gate.wires)
            if lower != upper + 1:
                raise NotEdgeShaped(f"게이트 {index}가 인접 wire 위에 있지 않습니다: {gate.wires}")
            table = _diagonal_table(gate, q)
            s = max(front[upper], front[lower])
            if s % 2 == 0:
                s += 1
            front[upper] = front[lower] = s
            key = (s, upper)
            vertical[key] = vertical[key] * table if key in vertical else table
        else:
            raise NotEdgeShaped(f"게이트 {index}는 {gate.arity}-local 입니다")

    last = max(front)
    depth = max(columns or 1, last // 2 + 1)
    lattice = build_lattice(RECTANGULAR, circuit.wires, depth)

    ones = np.ones((q, q), dtype=complex)
    identity = np.eye(q, dtype=complex)
    tables = []
    for site in lattice.sites:
        if site.kind == VERTICAL:
            matrix = vertical.get((2 * site.column - 1, site.wires[0]), ones)
        else:
            matrix = horizontal.get((2 * site.column, site.wires[0]), identity)
        tables.append(EdgeWeightTable(q, matrix))

    logger.info(f"회로 → edge 모형 변환 완료: rows={circuit.wires}, columns={depth}")
    return EdgeModel(lattice, q, tuple(tables))
