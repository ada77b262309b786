"""
BQP-완전 환원 인스턴스

- 6-vertex: 교환(exchange) 펄스 회로 C를 V 층으로 감싼 C' = V†^⊗ C V^⊗ 를 vertex 모형으로 바꾸고,
  엇갈린 경계 (01)^{2n_L} 에서의 Z가 논리 진폭 <0_L|C|0_L>과 같음을 확인한다.
- edge: {I₁, H, P, I₂, CP} 회로를 edge 모형으로 바꾸고, 경계 00...0 에서의 Z가 <0..0|C|0..0>과 같음을 확인한다.
"""
import logging
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from modules.circuit.dense import apply_gate, amplitude_dense, DEFAULT_MAX_QUBITS
from modules.circuit.ir import (
    Gate, Circuit, SQRT_HALF, identity_gate, hadamard_gate, phase_gate, controlled_phase_gate
)
from modules.compiler.translator import circuit_to_vertex_model, circuit_to_edge_model
from modules.models.brute_force import brute_force_partition, DEFAULT_MAX_SPINS
from modules.models.spin_models import six_vertex_tensor
from modules.utils.errors import NotBrickwork, WireOutOfRange, UnsupportedGate, InvalidInput, TooLarge
from modules.utils.helpers import complex_to_json

logger = logging.getLogger(__name__)

GATE_SET_TOL = 1e-12
ROUNDING_FLOOR = 1e-12


@dataclass(frozen=True)
class ExchangeCircuitSpec:
    """논리 qubit n_L개 (물리 wire 4·n_L개) 위의 교환 펄스 목록 ((w, w+1), t)"""

    logical_qubits: int
    pulses: Tuple[Tuple[Tuple[int, int], float], ...] = ()

    def __post_init__(self):
        if self.logical_qubits < 1:
            raise InvalidInput(f"논리 qubit 수는 1 이상이어야 합니다: {self.logical_qubits}")
        pulses = []
        for pair, t in self.pulses:
            a, b = (int(w) for w in pair)
            if abs(a - b) != 1:
                raise NotBrickwork(f"교환 펄스는 인접 wire 쌍에만 걸 수 있습니다: {(a, b)}")
            for w in (a, b):
                if not 1 <= w <= self.wires:
                    raise WireOutOfRange(f"wire {w}가 범위 [1, {self.wires}] 밖입니다")
            if isinstance(t, complex) and t.imag != 0:
                raise InvalidInput(f"교환 펄스 각도는 실수여야 합니다: {t}")
            pulses.append(((a, b), float(np.real(t))))
        object.__setattr__(self, "pulses", tuple(pulses))

    @property
    def wires(self):
        return 4 * self.logical_qubits

    def circuit(self):
        """교환 펄스 회로 C"""
        gates = [exchange_gate(t, pair) for pair, t in self.pulses]
        return Circuit(self.wires, 2, tuple(gates))

    def to_json(self):
        return {
            "logical_qubits": self.logical_qubits,
            "pulses": [{"wires": list(pair), "t": t} for pair, t in self.pulses],
        }


@dataclass(frozen=True, eq=False)
class ReductionInstance:
    """환원으로 만든 모형과 경계, 그리고 비교 기준"""

    kind: str
    model: object
    left: Tuple[int, ...]
    right: Tuple[int, ...]
    reference_circuit: Circuit
    spec: Optional[ExchangeCircuitSpec] = field(default=None)


def exchange_gate(t, wires=(1, 2)):
    """
    교환 게이트: 모서리 e^{2it}, 내부 블록 [[cos 2t, i sin 2t], [i sin 2t, cos 2t]]

    e^{itH_ex}와는 전역 위상 e^{-it}만큼 다르다.
    """
    a = np.exp(2j * t)
    b = np.cos(2 * t)
    c = 1j * np.sin(2 * t)
    return Gate(tuple(wires), 2, six_vertex_tensor((a, b, c, c, b, a)).matrix)


def singlet_gate(wires=(1, 2)):
    """V: V|01> = (|01> - |10>)/√2"""
    s = SQRT_HALF
    return Gate(tuple(wires), 2, six_vertex_tensor((1, s, s, -s, s, 1)).matrix)


def staggered_boundary(logical_qubits):
    return (0, 1) * (2 * logical_qubits)


def conjugated_circuit(spec):
    """C' = V†^⊗ C V^⊗ (V 층은 (1,2), (3,4), ... 쌍)"""
    pairs = [(w, w + 1) for w in range(1, spec.wires, 2)]
    v = singlet_gate()
    gates = [v.on(*pair) for pair in pairs]
    gates.extend(spec.circuit().gates)
    gates.extend(v.dagger().on(*pair) for pair in pairs)
    return Circuit(spec.wires, 2, tuple(gates))


def six_vertex_instance(spec):
    """
    6-vertex 환원 인스턴스

    Args:
        spec (ExchangeCircuitSpec): 교환 펄스 회로

    Returns:
        ReductionInstance: 엇갈린 경계 L = R = (01)^{2n_L} 의 vertex 모형
    """
    reference = conjugated_circuit(spec)
    model = circuit_to_vertex_model(reference)
    boundary = staggered_boundary(spec.logical_qubits)
    logger.info(f"6-vertex 환원 인스턴스 생성: n_L={spec.logical_qubits}, pulses={len(spec.pulses)}, M={model.lattice.layers}")
    return ReductionInstance("six_vertex", model, boundary, boundary, reference, spec)


def logical_amplitude(spec, max_qubits=DEFAULT_MAX_QUBITS):
    """
    <0_L|C|0_L>, |0_L> = ((|01> - |10>)/√2)^{⊗2n_L} 를 명시적으로 만들어 dense 계산
    """
    if spec.wires > max_qubits:
        raise TooLarge(f"논리 진폭 계산에 필요한 wire {spec.wires}개가 상한 {max_qubits}을 초과합니다")
    singlet = np.array([0, SQRT_HALF, -SQRT_HALF, 0], dtype=complex)
    state = np.array([1.0 + 0j])
    for _ in range(2 * spec.logical_qubits):
        state = np.kron(state, singlet)
    state = state.reshape((2,) * spec.wires)

    evolved = state
    for gate in spec.circuit().gates:
        evolved = apply_gate(evolved, gate)
    return complex(np.vdot(state, evolved))


EDGE_GATE_SET = {
    "I1": identity_gate((1,)).matrix,
    "H": hadamard_gate(1).matrix,
    "P": phase_gate(1).matrix,
}
EDGE_TWO_QUBIT_SET = {
    "I2": identity_gate((1, 2)).matrix,
    "CP": controlled_phase_gate(1, 2).matrix,
}


def classify_gate(gate):
    """게이트 집합 {I₁, H, P, I₂, CP} 중 어느 것인지 (없으면 UnsupportedGate)"""
    if gate.q != 2:
        raise UnsupportedGate("q=2 게이트만 지원합니다")
    if gate.arity == 1:
        candidates = EDGE_GATE_SET
    elif gate.arity == 2 and abs(gate.wires[0] - gate.wires[1]) == 1:
        candidates = EDGE_TWO_QUBIT_SET
    else:
        raise UnsupportedGate(f"지원하지 않는 게이트 배치: wires={gate.wires}")
    for name, matrix in candidates.items():
        if np.max(np.abs(gate.matrix - matrix)) <= GATE_SET_TOL:
            return name
    raise UnsupportedGate(f"게이트 집합 밖의 게이트입니다: wires={gate.wires}")


def em_instance(circuit):
    """
    edge 모형 환원 인스턴스

    Args:
        circuit (Circuit): {I₁, H, P, I₂, CP} 회로

    Returns:
        ReductionInstance: 경계 L = R = 00...0 의 edge 모형
    """
    for gate in circuit.gates:
        classify_gate(gate)
    model = circuit_to_edge_model(circuit)
    boundary = (0,) * circuit.wires
    logger.info(f"edge 환원 인스턴스 생성: N={circuit.wires}, gates={circuit.depth}, columns={model.lattice.layers}")
    return ReductionInstance("edge", model, boundary, boundary, circuit)


def verify_reduction(instance, reference_circuit=None, tol=1e-9,
                     max_spins=DEFAULT_MAX_SPINS, max_qubits=DEFAULT_MAX_QUBITS):
    """
    환원 항등식 검증

    Args:
        instance (ReductionInstance): 환원 인스턴스
        reference_circuit (Circuit, optional): 기준 회로 (없으면 인스턴스의 기준 사용)
        tol (float): 상대 허용 오차

    Returns:
        dict: 완전 열거 Z, 기준 진폭, 절대/상대 편차, 통과 여부
    """
    z = brute_force_partition(instance.model, instance.left, instance.right, max_spins)
    if reference_circuit is not None:
        reference = amplitude_dense(reference_circuit, instance.left, instance.right, max_qubits)
    elif instance.spec is not None:
        reference = logical_amplitude(instance.spec, max_qubits)
    else:
        reference = amplitude_dense(instance.reference_circuit, instance.left, instance.right, max_qubits)

    abs_dev = abs(z - reference)
    rel_dev = abs_dev / abs(reference) if abs(reference) > 0 else abs_dev
    passed = abs_dev <= max(tol * max(abs(z), abs(reference)), ROUNDING_FLOOR)

    report = {
        "kind": instance.kind,
        "wires": instance.model.lattice.wires,
        "layers": instance.model.lattice.layers,
        "partition_function": complex_to_json(z),
        "reference": complex_to_json(reference),
        "abs_deviation": float(abs_dev),
        "rel_deviation": float(rel_dev),
        "tol": tol,
        "passed": bool(passed),
    }
    if not passed:
        logger.warning(f"환원 검증 실패: kind={instance.kind}, abs_dev={abs_dev:.3e}")
    return report
