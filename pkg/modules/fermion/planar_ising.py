"""
자기장 없는 평면 Ising 분배함수

대칭 표(w_00 = w_11, w_01 = w_10)만 쓰는 edge 모형은 도메인 벽 변수

    d_0 = s_1,  d_k = s_k ⊕ s_{k+1} (1 <= k < N),  d_N = s_N

위에서 matchgate 회로가 된다. 수직 edge는 d_r 하나에만 걸리는 대각 게이트, 수평 edge
(a·I + b·X)는 d_{r-1}, d_r을 함께 뒤집는 a·I + b·X⊗X가 된다. N개 행은 N+1개 쌍대 wire로 가고,
짝수 패리티 부분공간 위에서 원래 회로와 같다.
"""
import logging

import numpy as np

from modules.circuit.ir import Gate, Circuit
from modules.compiler.translator import circuit_to_edge_model
from modules.fermion.matchgate import amplitude_matchgate
from modules.lattice.geometry import VERTICAL
from modules.models.spin_models import EdgeModel, EdgeWeightTable, as_boundary
from modules.utils.errors import NotPlanarIsing, NotXZCircuit

logger = logging.getLogger(__name__)

SYMMETRY_TOL = 1e-12
XZ_TOL = 1e-10


def domain_walls(values):
    """스핀 배치 s → 도메인 벽 배치 d (길이 N+1)"""
    s = list(values)
    walls = [s[0]]
    walls.extend(s[k] ^ s[k + 1] for k in range(len(s) - 1))
    walls.append(s[-1])
    return walls


def check_planar_instance(model):
    """q=2이고 모든 표가 자기장 없는 대칭 형태인지 확인"""
    if not isinstance(model, EdgeModel):
        raise NotPlanarIsing("평면 Ising 엔진은 edge 모형만 받습니다")
    if model.q != 2:
        raise NotPlanarIsing(f"평면 Ising 엔진은 q=2만 지원합니다: q={model.q}")
    for site in model.lattice.sites:
        m = model.tables[site.site_id].matrix
        if abs(m[0, 0] - m[1, 1]) > SYMMETRY_TOL or abs(m[0, 1] - m[1, 0]) > SYMMETRY_TOL:
            raise NotPlanarIsing(f"edge {site.site_id}의 표가 대칭(자기장 없음)이 아닙니다")


def dual_circuit(model):
    """
    도메인 벽 matchgate 회로

    Args:
        model (EdgeModel): 대칭 표 edge 모형

    Returns:
        Circuit: N+1 wire matchgate 회로
    """
    rows = model.lattice.wires
    gates = []
    for site in model.lattice.sites:
        m = model.tables[site.site_id].matrix
        same, diff = m[0, 0], m[0, 1]
        if site.kind == VERTICAL:
            # d_r은 쌍대 wire r+1, 옆 wire r+2와 짝지어 diag(a,b) ⊗ I
            upper = site.wires[0]
            matrix = np.diag([same, same, diff, diff])
            gates.append(Gate((upper + 1, upper + 2), 2, matrix))
        else:
            (r,) = site.wires
            matrix = np.array([
                [same, 0, 0, diff],
                [0, same, diff, 0],
                [0, diff, same, 0],
                [diff, 0, 0, same],
            ], dtype=complex)
            gates.append(Gate((r, r + 1), 2, matrix))
    return Circuit(rows + 1, 2, tuple(gates))


def partition_planar_ising(model, left, right):
    """
    평면 Ising 분배함수 (다항 시간)

    Args:
        model (EdgeModel): 자기장 없는 대칭 표 모형
        left, right: 경계 스핀

    Returns:
        complex: Z(L, R)
    """
    check_planar_instance(model)
    rows = model.lattice.wires
    left = as_boundary(left).validate(rows, 2).values
    right = as_boundary(right).validate(rows, 2).values
    dual_left, dual_right = domain_walls(left), domain_walls(right)

    # w_same = 0 인 표도 비가역 블록으로 정확히 계산된다
    return amplitude_matchgate(dual_circuit(model), dual_left, dual_right, allow_singular=True)


def _is_x_rotation(matrix, tol):
    c, s = matrix[0, 0], matrix[0, 1] / 1j
    return (
        abs(matrix[1, 1] - matrix[0, 0]) <= tol
        and abs(matrix[1, 0] - matrix[0, 1]) <= tol
        and abs(c.imag) <= tol
        and abs(s.imag) <= tol
        and abs(c * c + s * s - 1) <= tol
    )


def _is_zz_rotation(matrix, tol):
    if np.max(np.abs(matrix - np.diag(np.diag(matrix)))) > tol:
        return False
    p, m = matrix[0, 0], matrix[1, 1]
    return (
        abs(matrix[3, 3] - p) <= tol
        and abs(matrix[2, 2] - m) <= tol
        and abs(abs(p) - 1) <= tol
        and abs(p * m - 1) <= tol
    )


def simulate_xz_circuit(circuit, left, right, tol=XZ_TOL):
    """
    σx 회전과 인접 σz⊗σz 회전만으로 된 회로의 진폭

    회로를 edge 모형으로 바꾸면 모든 표가 대칭이므로 평면 Ising 엔진으로 계산된다.

    Args:
        circuit (Circuit): exp(iα σx), exp(iβ σz⊗σz) 게이트 회로
        left, right: 경계 기저 상태

    Returns:
        complex: <L|C|R>
    """
    if circuit.q != 2:
        raise NotXZCircuit("XZ 회로는 q=2 이어야 합니다")
    for index, gate in enumerate(circuit.gates):
        if gate.arity == 1 and _is_x_rotation(gate.matrix, tol):
            continue
        if gate.arity == 2 and abs(gate.wires[0] - gate.wires[1]) == 1 and _is_zz_rotation(gate.matrix, tol):
            continue
        raise NotXZCircuit(f"게이트 {index} (wires={gate.wires})가 σx / σz⊗σz 회전이 아닙니다")

    model = circuit_to_edge_model(circuit)
    # 판정 허용 오차 안의 비대칭은 평균으로 정리
    tables = []
    for table in model.tables:
        m = table.matrix
        same, diff = (m[0, 0] + m[1, 1]) / 2, (m[0, 1] + m[1, 0]) / 2
        tables.append(EdgeWeightTable(2, np.array([[same, diff], [diff, same]])))
    model = EdgeModel(model.lattice, 2, tuple(tables))
    return partition_planar_ising(model, left, right)
