"""
Dense 상태 벡터 엔진

전체 회로 유니터리는 만들지 않고, 상태 텐서에 게이트를 하나씩 축약(tensordot)한다.
wire 1이 기저 인덱스의 최상위 자리다.
"""
import math
import logging

import numpy as np

from modules.circuit.ir import Gate
from modules.models.spin_models import as_boundary
from modules.utils.errors import TooLarge, ShapeMismatch

logger = logging.getLogger(__name__)

DEFAULT_MAX_QUBITS = 26


def _check_cap(dims, max_qubits):
    size = sum(math.log2(d) for d in dims)
    if size > max_qubits + 1e-9:
        raise TooLarge(f"상태 벡터 크기 {size:.1f} qubit이 상한 {max_qubits}을 초과합니다")


def _basis_index(dims, values, name):
    values = as_boundary(values).values
    if len(values) != len(dims):
        raise ShapeMismatch(f"{name} 길이 {len(values)} != wires {len(dims)}")
    for v, d in zip(values, dims):
        if not 0 <= v < d:
            raise ShapeMismatch(f"{name} 스핀 값 범위 초과: {v} (차원 {d})")
    return values


def apply_gate(state, gate):
    """
    상태 텐서에 게이트 적용

    Args:
        state (ndarray): 축마다 wire 하나인 상태 텐서
        gate (Gate): 적용할 게이트

    Returns:
        ndarray: 새 상태 텐서
    """
    k = gate.arity
    axes = [w - 1 for w in gate.wires]
    tensor = gate.matrix.reshape(gate.dims + gate.dims)
    # 게이트의 입력 축과 상태의 해당 축을 축약하면 출력 축이 앞으로 온다
    out = np.tensordot(tensor, state, axes=(list(range(k, 2 * k)), axes))
    return np.moveaxis(out, list(range(k)), axes)


def statevector(circuit, right, max_qubits=DEFAULT_MAX_QUBITS):
    """
    G_T ... G_1 |R>

    Args:
        circuit (Circuit): 회로 (혼합 기수 허용)
        right: 입력 기저 상태 R
        max_qubits (int): 상태 벡터 크기 상한 (qubit 환산)

    Returns:
        ndarray: shape이 circuit.dims인 상태 텐서
    """
    dims = circuit.dims
    _check_cap(dims, max_qubits)
    right = _basis_index(dims, right, "R")

    state = np.zeros(dims, dtype=complex)
    state[tuple(right)] = 1.0
    for gate in circuit.gates:
        state = apply_gate(state, gate)
    return state


def amplitude_dense(circuit, left, right, max_qubits=DEFAULT_MAX_QUBITS):
    """
    <L| G_T ... G_1 |R>

    Args:
        circuit (Circuit): 회로
        left, right: 경계 기저 상태
        max_qubits (int): 상태 벡터 크기 상한

    Returns:
        complex: 진폭
    """
    left = _basis_index(circuit.dims, left, "L")
    state = statevector(circuit, right, max_qubits)
    value = complex(state[tuple(left)])
    logger.debug(f"dense 진폭 계산: wires={circuit.wires}, gates={circuit.depth}")
    return value


def is_unitary(gate, tol=1e-10):
    """‖M†M - I‖_max <= tol"""
    matrix = gate.matrix if isinstance(gate, Gate) else np.asarray(gate, dtype=complex)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        return False
    deviation = matrix.conj().T @ matrix - np.eye(matrix.shape[0])
    return bool(np.max(np.abs(deviation)) <= tol) if deviation.size else True


def controlled(gate, control=None):
    """
    |0><0| ⊗ I + |1><1| ⊗ M

    제어 wire는 q와 무관하게 2-준위이다. control이 없으면 게이트 wire 앞 번호(min - 1)를 쓴다.

    Args:
        gate (Gate): 대상 게이트
        control (int, optional): 제어 wire 번호

    Returns:
        Gate: 1 + k wire 게이트
    """
    dim = gate.matrix.shape[0]
    matrix = np.zeros((2 * dim, 2 * dim), dtype=complex)
    matrix[:dim, :dim] = np.eye(dim)
    matrix[dim:, dim:] = gate.matrix
    if control is None:
        control = min(gate.wires) - 1 if min(gate.wires) > 1 else max(gate.wires) + 1
    return Gate((control,) + gate.wires, gate.q, matrix, (2,) + gate.dims)


def shift_gate(q, amount, wire=1):
    """
    S|l> = |(l + amount) mod q>

    Args:
        q (int): 스핀 차원
        amount (int): 0 <= amount < q

    Returns:
        Gate: 순열 게이트
    """
    if not 0 <= amount < q:
        raise ShapeMismatch(f"shift 크기는 0 <= amount < q 이어야 합니다: {amount}")
    matrix = np.zeros((q, q), dtype=complex)
    for level in range(q):
        matrix[(level + amount) % q, level] = 1.0
    return Gate((wire,), q, matrix)


def fuse(first, second):
    """같은 wire 위의 두 게이트를 G2·G1 하나로 합침"""
    if first.wires != second.wires or first.dims != second.dims:
        raise ShapeMismatch("같은 wire 위의 게이트만 합칠 수 있습니다")
    return Gate(first.wires, first.q, second.matrix @ first.matrix, first.dims)
