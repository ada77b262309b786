"""
Matchgate (자유 페르미온) 회로 엔진

wire k를 페르미온 모드 k로 보는 Jordan-Wigner 대응에서 인접 wire 위의 matchgate는 2차 형식의
가우스 연산자가 된다. 회로 전체를 Grassmann 커널

    K = c · ∫ dψ exp(½ Θᵀ A Θ),   Θ = (대기 변수 ψ, 출력 변수 ξ̄_1..N, 입력 변수 ξ'_1..N)

로 추적하고, 행렬 원소는 A의 부분 행렬 Pfaffian으로 읽는다.

    <x|C|y> = c · (-1)^{k(k-1)/2} · Pf(A[대기 ∪ 출력_I ∪ 입력_J]),  I = occ(x), J = occ(y), k = |J|

게이트 하나마다 대기 변수 4개가 생기고, 피벗이 살아 있는 동안 Schur 보수로 두 개씩 소거한다.
비유니터리 게이트와 (allow_singular일 때) 비가역 게이트도 정확히 계산된다.
"""
import logging

import numpy as np

from modules.circuit.ir import Gate
from modules.fermion.pfaffian import pfaffian
from modules.models.spin_models import (
    check_eight_vertex_pattern, free_fermion_sides, as_boundary, ZERO_PATTERN_TOL
)
from modules.utils.errors import NotMatchgate, NonInvertibleGate, NumericalBreakdown

logger = logging.getLogger(__name__)

MATCHGATE_TOL = 1e-10
PIVOT_TOL = 1e-10
MAX_LOG_MAGNITUDE = float(np.log(np.finfo(float).max))

_S = 1.0 / np.sqrt(2.0)

# 진공 성분이 0인 게이트를 쪼갤 때 쓰는 보조 matchgate (짝수 블록 회전, 홀수 블록 항등)
_SPLITTER = np.array([
    [_S, 0, 0, _S],
    [0, 1, 0, 0],
    [0, 0, 1, 0],
    [-_S, 0, 0, _S],
], dtype=complex)
_SPLITTER_INV = np.array([
    [_S, 0, 0, -_S],
    [0, 1, 0, 0],
    [0, 0, 1, 0],
    [_S, 0, 0, _S],
], dtype=complex)


def _matrix_of(gate):
    return gate.matrix if isinstance(gate, Gate) else np.asarray(gate, dtype=complex)


def is_matchgate(gate, tol=MATCHGATE_TOL, pattern_tol=ZERO_PATTERN_TOL):
    """
    matchgate 판정: 8-vertex 영 패턴 + 자유 페르미온 조건

    Args:
        gate (Gate | ndarray): 2-local q=2 게이트
        tol (float): |LHS - RHS| 허용 오차 (게이트 크기로 스케일)

    Returns:
        bool: matchgate 여부
    """
    if isinstance(gate, Gate) and (gate.arity != 2 or gate.dims != (2, 2)):
        return False
    matrix = _matrix_of(gate)
    if matrix.shape != (4, 4) or not check_eight_vertex_pattern(matrix, pattern_tol):
        return False
    lhs, rhs = free_fermion_sides(matrix)
    scale = max(1.0, float(np.max(np.abs(matrix))) ** 2)
    return bool(abs(lhs - rhs) <= tol * scale)


def block_determinants(matrix):
    """짝수 블록(|00>,|11>)과 홀수 블록(|01>,|10>)의 행렬식"""
    m = _matrix_of(matrix)
    even = m[0, 0] * m[3, 3] - m[0, 3] * m[3, 0]
    odd = m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1]
    return even, odd


class KernelState:
    """
    회로 커널 (c, A, 대기 변수 수)

    변수 순서는 [대기 변수, 출력 1..N, 입력 1..N] 이다.
    """

    def __init__(self, modes, pivot_tol=PIVOT_TOL):
        self.modes = modes
        self.pivot_tol = pivot_tol
        # 누적 상수 c = exp(log_magnitude) · phase (큰 격자에서 넘침 방지)
        self.log_magnitude = 0.0
        self.phase = 1.0 + 0j
        self.pending = 0
        n = modes
        self.A = np.zeros((2 * n, 2 * n), dtype=complex)
        self.A[:n, n:] = np.eye(n)
        self.A[n:, :n] = -np.eye(n)
        self.max_pending = 0

    def apply(self, matrix, mode):
        """
        모드 (mode, mode+1) 위의 게이트를 왼쪽에서 곱한다 (G · C)

        Args:
            matrix (ndarray): 진공 성분 G[0,0] != 0 인 4x4 matchgate
            mode (int): 0부터 센 첫 모드
        """
        g = matrix[0, 0]
        x = matrix[3, 0] / g
        z = -matrix[0, 3] / g
        y = np.array([[matrix[2, 2], matrix[2, 1]],
                      [matrix[1, 2], matrix[1, 1]]]) / g

        n, p = self.modes, self.pending
        a, b = mode, mode + 1
        size = p + 4 + 2 * n

        # 이전 출력 변수 a, b는 중간 변수 μ̄_a, μ̄_b가 된다
        mapping = list(range(p))
        for m in range(n):
            if m == a:
                mapping.append(p + 1)
            elif m == b:
                mapping.append(p + 3)
            else:
                mapping.append(p + 4 + m)
        mapping.extend(p + 4 + n + m for m in range(n))

        A = np.zeros((size, size), dtype=complex)
        A[np.ix_(mapping, mapping)] = self.A

        mu = (p, p + 2)
        out = (p + 4 + a, p + 4 + b)
        for k in range(2):
            A[mu[k], mu[k] + 1] = 1.0
            A[mu[k] + 1, mu[k]] = -1.0
        A[out[0], out[1]] = x
        A[out[1], out[0]] = -x
        A[mu[0], mu[1]] = z
        A[mu[1], mu[0]] = -z
        for r in range(2):
            for s in range(2):
                A[out[r], mu[s]] = y[r, s]
                A[mu[s], out[r]] = -y[r, s]

        self.A = A
        self.pending = p + 4
        self._absorb(g)
        self._eliminate()

    def _eliminate(self):
        """대기 변수 블록에서 피벗을 골라 두 개씩 적분해 없앤다"""
        while self.pending >= 2:
            p = self.pending
            block = np.abs(np.triu(self.A[:p, :p], 1))
            i, j = np.unravel_index(int(np.argmax(block)), block.shape)
            pivot = self.A[i, j]
            scale = max(1.0, float(np.max(np.abs(self.A))))
            if abs(pivot) <= self.pivot_tol * scale:
                logger.debug(f"피벗이 작아 대기 변수 {p}개를 유지합니다")
                break

            # (i, j)를 앞으로 옮기는 부호 (-1)^{i + j - 1}
            sign = -1.0 if (i + j - 1) % 2 else 1.0
            self._absorb(sign * pivot)

            keep = [k for k in range(self.A.shape[0]) if k != i and k != j]
            c0 = self.A[i, keep]
            c1 = self.A[j, keep]
            self.A = self.A[np.ix_(keep, keep)] + (np.outer(c1, c0) - np.outer(c0, c1)) / pivot
            # 반올림으로 생긴 대칭 성분 제거
            self.A = (self.A - self.A.T) / 2
            self.pending = p - 2

        self.max_pending = max(self.max_pending, self.pending)

    def element(self, left, right):
        """<left| C |right> (기저 상태는 0/1 튜플)"""
        n, p = self.modes, self.pending
        occupied_out = [m for m in range(n) if left[m] == 1]
        occupied_in = [m for m in range(n) if right[m] == 1]
        if (len(occupied_out) + len(occupied_in)) % 2:
            return 0j

        index = list(range(p)) + [p + m for m in occupied_out] + [p + n + m for m in occupied_in]
        k = len(occupied_in)
        sign = -1.0 if (k * (k - 1) // 2) % 2 else 1.0
        sub = self.A[np.ix_(index, index)]
        pf = pfaffian(sub)
        if not np.isfinite(pf):
            raise NumericalBreakdown("커널 Pfaffian이 유한하지 않습니다")
        if pf == 0:
            return 0j

        log_value = self.log_magnitude + np.log(abs(pf))
        if log_value > MAX_LOG_MAGNITUDE:
            raise NumericalBreakdown(f"진폭 크기가 부동소수점 범위를 넘습니다 (log|Z| = {log_value:.1f})")
        return complex(sign * self.phase * (pf / abs(pf)) * np.exp(log_value))

    def _absorb(self, factor):
        """상수 c에 factor(≠0)를 곱한다"""
        magnitude = abs(factor)
        self.log_magnitude += float(np.log(magnitude))
        self.phase *= factor / magnitude


def _factorize(matrix, tol):
    """
    진공 성분 G[0,0]이 0인 게이트를 진공 성분이 0이 아닌 matchgate 곱으로 분해

    Returns:
        list | None: 적용 순서의 행렬 목록. 0 게이트이면 None
    """
    scale = float(np.max(np.abs(matrix)))
    if scale == 0.0:
        return None
    if abs(matrix[0, 0]) > tol * scale:
        return [matrix]
    if abs(matrix[0, 3]) > tol * scale:
        return [_SPLITTER, matrix @ _SPLITTER_INV]
    if abs(matrix[3, 0]) > tol * scale:
        return [_SPLITTER_INV @ matrix, _SPLITTER]
    if abs(matrix[3, 3]) > tol * scale:
        return [_SPLITTER, _SPLITTER_INV @ matrix @ _SPLITTER_INV, _SPLITTER]
    raise NumericalBreakdown("짝수 블록이 0이고 홀수 블록만 남은 게이트는 가우스 커널로 표현할 수 없습니다")


def _oriented(gate):
    """(w, w+1) 순서의 행렬과 0부터 센 첫 모드"""
    first, second = gate.wires
    matrix = gate.matrix
    if second == first - 1:
        swap = np.eye(4)[[0, 2, 1, 3]]
        return swap @ matrix @ swap, second - 1
    if second != first + 1:
        raise NotMatchgate(f"matchgate는 인접 wire 위에 있어야 합니다: {gate.wires}")
    return matrix, first - 1


def amplitude_matchgate(circuit, left, right, tol=MATCHGATE_TOL, allow_singular=False):
    """
    matchgate 회로의 진폭 <L|C|R> (다항 시간)

    Args:
        circuit (Circuit): 모든 게이트가 인접 wire 위의 q=2 matchgate인 회로
        left, right: 경계 기저 상태
        tol (float): matchgate / 가역성 판정 허용 오차
        allow_singular (bool): 비가역 블록 허용 (정확히 계산됨)

    Returns:
        complex: 진폭
    """
    if circuit.q != 2 or any(d != 2 for d in circuit.dims):
        raise NotMatchgate("matchgate 엔진은 q=2 회로만 지원합니다")
    left = as_boundary(left).validate(circuit.wires, 2).values
    right = as_boundary(right).validate(circuit.wires, 2).values

    oriented = []
    for index, gate in enumerate(circuit.gates):
        if gate.arity != 2:
            raise NotMatchgate(f"게이트 {index}는 2-local이 아닙니다")
        matrix, mode = _oriented(gate)
        if not is_matchgate(matrix, tol):
            raise NotMatchgate(f"게이트 {index} (wires={gate.wires})가 matchgate 조건을 만족하지 않습니다")
        if not allow_singular:
            even, odd = block_determinants(matrix)
            if abs(even) <= tol or abs(odd) <= tol:
                raise NonInvertibleGate(f"게이트 {index}의 2x2 블록이 비가역입니다")
        oriented.append((matrix, mode))

    state = KernelState(circuit.wires)
    for matrix, mode in oriented:
        factors = _factorize(matrix, 1e-12)
        if factors is None:
            return 0j
        for factor in factors:
            state.apply(factor, mode)

    value = state.element(left, right)
    logger.debug(
        f"matchgate 진폭 계산: wires={circuit.wires}, gates={circuit.depth}, 최대 대기 변수={state.max_pending}"
    )
    return value
