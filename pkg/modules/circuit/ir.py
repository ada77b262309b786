"""
회로 중간 표현 (Gate, Circuit)

게이트 목록의 0번이 가장 먼저(|R> 쪽에) 적용된다. wire는 1부터 센다.
행렬의 행은 출력, 열은 입력이며 게이트의 첫 wire가 최상위 자리다.
"""
import logging
from dataclasses import dataclass
from typing import Tuple, Optional

import numpy as np

from modules.utils.errors import ShapeMismatch, WireOutOfRange, InvalidDimensions

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Gate:
    """
    k-local 게이트

    dims가 주어지면 wire별 차원이 다른 혼합 기수 게이트 (Hadamard 검정의 보조 wire 전용).
    """

    wires: Tuple[int, ...]
    q: int
    matrix: np.ndarray
    dims: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        wires = tuple(int(w) for w in self.wires)
        if not wires:
            raise ShapeMismatch("게이트는 최소 한 개의 wire에 작용해야 합니다")
        if len(set(wires)) != len(wires):
            raise ShapeMismatch(f"게이트 wire가 중복됩니다: {wires}")
        dims = tuple(self.dims) if self.dims is not None else (self.q,) * len(wires)
        if len(dims) != len(wires):
            raise ShapeMismatch("dims 길이가 wire 수와 다릅니다")
        dim = int(np.prod(dims))
        matrix = np.array(self.matrix, dtype=complex)
        if matrix.shape != (dim, dim):
            raise ShapeMismatch(f"게이트 행렬 크기 오류: {matrix.shape}, 기대값 ({dim}, {dim})")
        if not np.all(np.isfinite(matrix)):
            raise ShapeMismatch("게이트 행렬에 유한하지 않은 값이 있습니다")
        matrix.setflags(write=False)
        object.__setattr__(self, "wires", wires)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "matrix", matrix)

    @property
    def arity(self):
        return len(self.wires)

    def scaled(self, factor):
        return Gate(self.wires, self.q, self.matrix * factor, self.dims)

    def on(self, *wires):
        """같은 행렬을 다른 wire에 배치"""
        return Gate(wires, self.q, self.matrix, self.dims)

    def dagger(self):
        return Gate(self.wires, self.q, self.matrix.conj().T, self.dims)

    def to_json(self):
        from modules.utils.helpers import matrix_to_json
        return {"wires": list(self.wires), "matrix": matrix_to_json(self.matrix)}


@dataclass(frozen=True, eq=False)
class Circuit:
    """N개의 q-준위 wire 위의 게이트 목록"""

    wires: int
    q: int
    gates: Tuple[Gate, ...] = ()
    dims: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if self.wires < 1:
            raise InvalidDimensions(f"wires >= 1 이어야 합니다: {self.wires}")
        if self.q < 2:
            raise InvalidDimensions(f"q >= 2 이어야 합니다: {self.q}")
        dims = tuple(self.dims) if self.dims is not None else (self.q,) * self.wires
        if len(dims) != self.wires:
            raise ShapeMismatch("dims 길이가 wires와 다릅니다")
        gates = tuple(self.gates)
        for index, gate in enumerate(gates):
            for w in gate.wires:
                if not 1 <= w <= self.wires:
                    raise WireOutOfRange(f"게이트 {index}의 wire {w}가 범위 [1, {self.wires}] 밖입니다")
            if tuple(dims[w - 1] for w in gate.wires) != gate.dims:
                raise ShapeMismatch(f"게이트 {index}의 wire 차원이 회로와 다릅니다")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "gates", gates)

    @property
    def depth(self):
        return len(self.gates)

    def appended(self, *gates):
        return Circuit(self.wires, self.q, self.gates + tuple(gates), self.dims)

    def to_json(self):
        return {"wires": self.wires, "q": self.q, "gates": [g.to_json() for g in self.gates]}


# 게이트 생성자

SQRT_HALF = 1.0 / np.sqrt(2.0)


def identity_gate(wires, q=2):
    wires = tuple(wires) if isinstance(wires, (list, tuple)) else (wires,)
    return Gate(wires, q, np.eye(q ** len(wires), dtype=complex))


def hadamard_gate(wire):
    """H = (1/√2) Σ (-1)^{ij} |i><j|"""
    return Gate((wire,), 2, SQRT_HALF * np.array([[1, 1], [1, -1]], dtype=complex))


def phase_gate(wire, angle=np.pi / 8):
    """P = diag(1, e^{iθ}), 기본 θ = π/8"""
    return Gate((wire,), 2, np.diag([1.0, np.exp(1j * angle)]))


def controlled_phase_gate(upper, lower):
    """CP = diag(1, 1, 1, -1)"""
    return Gate((upper, lower), 2, np.diag([1.0, 1.0, 1.0, -1.0]).astype(complex))


def x_rotation(wire, alpha):
    """exp(iα σx) = [[cos α, i sin α], [i sin α, cos α]]"""
    c, s = np.cos(alpha), 1j * np.sin(alpha)
    return Gate((wire,), 2, np.array([[c, s], [s, c]], dtype=complex))


def zz_rotation(upper, lower, beta):
    """exp(iβ σz⊗σz) = diag(e^{iβ}, e^{-iβ}, e^{-iβ}, e^{iβ})"""
    p, m = np.exp(1j * beta), np.exp(-1j * beta)
    return Gate((upper, lower), 2, np.diag([p, m, m, p]))
