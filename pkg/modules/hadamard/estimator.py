"""
Hadamard 검정 시뮬레이션

<L|C|R> = <L|C·S|L> 로 바꾼 뒤 (S는 wire별 shift 게이트, S|L> = |R>), 보조 qubit 하나로
Re/Im 부분을 ±1 측정값의 평균으로 추정한다. 측정 확률은 dense 엔진으로 정확히 계산하고,
표본은 시드가 고정된 numpy Generator(PCG64)로 뽑는다. Re 표본 m개를 먼저, Im 표본 m개를 다음에 뽑는다.
"""
import math
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from modules.circuit.dense import statevector, is_unitary, controlled, shift_gate, DEFAULT_MAX_QUBITS
from modules.circuit.ir import Gate, Circuit, SQRT_HALF
from modules.models.spin_models import as_boundary
from modules.utils.errors import NotUnitary, InvalidInput

logger = logging.getLogger(__name__)

UNITARY_TOL = 1e-10

_HADAMARD = SQRT_HALF * np.array([[1, 1], [1, -1]], dtype=complex)
_S_DAGGER = np.diag([1.0, -1j])


@dataclass(frozen=True)
class AmplitudeEstimate:
    """진폭 추정값 c (|c - <L|C|R>| <= eps, 확률 >= 1 - delta)"""

    value: complex
    eps: float
    delta: float
    samples: int
    seed: Optional[int] = None
    exact: bool = False

    def __post_init__(self):
        _validate(self.eps, self.delta)
        if self.samples < 1:
            raise InvalidInput(f"표본 수는 1 이상이어야 합니다: {self.samples}")


def _validate(eps, delta):
    if not eps > 0:
        raise InvalidInput(f"eps > 0 이어야 합니다: {eps}")
    if not 0 < delta < 1:
        raise InvalidInput(f"0 < delta < 1 이어야 합니다: {delta}")


def sample_count(eps, delta):
    """
    Hoeffding 표본 수 m = ⌈(4/eps²)·ln(4/delta)⌉

    Re, Im 각각이 eps/√2 안에 들어올 확률이 1 - delta/2 이상이 된다.
    """
    _validate(eps, delta)
    return int(math.ceil((4.0 / eps ** 2) * math.log(4.0 / delta)))


def hadamard_test_circuit(circuit, left, right, imaginary=False):
    """
    1 + N wire Hadamard 검정 회로 (보조 wire가 1번, 원래 wire는 한 칸씩 밀림)

    Args:
        circuit (Circuit): 유니터리 회로
        left, right: 경계 기저 상태
        imaginary (bool): True이면 Im 부분 측정용 S† 삽입

    Returns:
        Circuit: 혼합 기수 회로 (보조 wire는 2-준위)
    """
    q = circuit.q
    dims = (2,) + circuit.dims

    body = []
    for w, (l, r) in enumerate(zip(left, right), start=1):
        amount = (r - l) % q
        if amount:
            body.append(shift_gate(q, amount, w))
    body.extend(circuit.gates)

    gates = [Gate((1,), 2, _HADAMARD, (2,))]
    if imaginary:
        gates.append(Gate((1,), 2, _S_DAGGER, (2,)))
    for gate in body:
        moved = Gate(tuple(w + 1 for w in gate.wires), gate.q, gate.matrix, gate.dims)
        gates.append(controlled(moved, control=1))
    gates.append(Gate((1,), 2, _HADAMARD, (2,)))
    return Circuit(circuit.wires + 1, q, tuple(gates), dims)


def _zero_probability(test_circuit, left, max_qubits):
    state = statevector(test_circuit, (0,) + tuple(left), max_qubits)
    p0 = float(np.sum(np.abs(state[0]) ** 2))
    return min(1.0, max(0.0, p0))


def estimate_amplitude(circuit, left, right, eps=0.1, delta=0.05, seed=0, exact=False,
                       max_qubits=DEFAULT_MAX_QUBITS):
    """
    <L|C|R>의 가법적 근사

    Args:
        circuit (Circuit): 모든 게이트가 유니터리인 회로
        left, right: 경계 기저 상태
        eps (float): 목표 정밀도
        delta (float): 실패 확률
        seed (int): 난수 시드
        exact (bool): True이면 표본 없이 해석적 값(m → ∞ 극한) 반환

    Returns:
        AmplitudeEstimate: 추정 결과
    """
    m = sample_count(eps, delta)
    for index, gate in enumerate(circuit.gates):
        if not is_unitary(gate, UNITARY_TOL):
            raise NotUnitary(f"게이트 {index} (wires={gate.wires})가 유니터리가 아닙니다")

    left = as_boundary(left).validate(circuit.wires, circuit.q).values
    right = as_boundary(right).validate(circuit.wires, circuit.q).values

    p_re = _zero_probability(hadamard_test_circuit(circuit, left, right), left, max_qubits)
    p_im = _zero_probability(hadamard_test_circuit(circuit, left, right, imaginary=True), left, max_qubits)

    if exact:
        value = complex(2 * p_re - 1, 2 * p_im - 1)
        logger.info(f"Hadamard 검정 해석값: {value}")
        return AmplitudeEstimate(value, eps, delta, m, seed, exact=True)

    rng = np.random.default_rng(seed)
    re_samples = np.where(rng.random(m) < p_re, 1.0, -1.0)
    im_samples = np.where(rng.random(m) < p_im, 1.0, -1.0)
    value = complex(re_samples.mean(), im_samples.mean())

    logger.info(f"Hadamard 검정 추정 완료: m={m}, seed={seed}, value={value}")
    return AmplitudeEstimate(value, eps, delta, m, seed)
