"""
Vertex / edge 스핀 모형

가중치는 복소수로 직접 저장한다. (β, h) 형식의 생성자는 편의 함수일 뿐이며, 모든 엔진은 가중치만 소비한다.
"""
import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from modules.lattice.geometry import (
    TILTED_SQUARE, TILTED_TRIANGULAR, RECTANGULAR, VERTICAL, HORIZONTAL
)
from modules.utils.errors import (
    InvalidDimensions, ShapeMismatch, NotEightVertexForm
)

logger = logging.getLogger(__name__)

ZERO_PATTERN_TOL = 1e-12

# 8-vertex 형식에서 값이 허용되는 (row, col) 위치. row/col 인덱스는 2*s_upper + s_lower
EIGHT_VERTEX_SLOTS = ((0, 0), (0, 3), (1, 1), (1, 2), (2, 1), (2, 2), (3, 0), (3, 3))
SIX_VERTEX_SLOTS = ((0, 0), (1, 1), (1, 2), (2, 1), (2, 2), (3, 3))


@dataclass(frozen=True, eq=False)
class WeightTensor:
    """
    사이트 가중치 텐서 w^{(i..)}_{(k..)} = <출력 스핀 | w | 입력 스핀>

    행은 왼쪽(출력), 열은 오른쪽(입력) 스핀. 낮은 번호 wire가 최상위 자리다.
    """

    q: int
    arity: int
    matrix: np.ndarray

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=complex)
        dim = self.q ** self.arity
        if matrix.shape != (dim, dim):
            raise ShapeMismatch(f"가중치 행렬 크기 오류: {matrix.shape}, 기대값 ({dim}, {dim})")
        if not np.all(np.isfinite(matrix)):
            raise ShapeMismatch("가중치에 유한하지 않은 값이 있습니다")
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)

    def scaled(self, factor):
        return WeightTensor(self.q, self.arity, self.matrix * factor)


@dataclass(frozen=True, eq=False)
class EdgeWeightTable:
    """
    edge 가중치 표 w^e_{ij}

    수평 edge: i = 왼쪽 끝 스핀, j = 오른쪽 끝 스핀. 수직 edge: (i, j) = (위, 아래) 스핀.
    """

    q: int
    matrix: np.ndarray

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=complex)
        if matrix.shape != (self.q, self.q):
            raise ShapeMismatch(f"edge 가중치 표 크기 오류: {matrix.shape}, 기대값 ({self.q}, {self.q})")
        if not np.all(np.isfinite(matrix)):
            raise ShapeMismatch("가중치에 유한하지 않은 값이 있습니다")
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)

    @property
    def is_symmetric_no_field(self):
        m = self.matrix
        return self.q == 2 and abs(m[0, 0] - m[1, 1]) <= 1e-12 and abs(m[0, 1] - m[1, 0]) <= 1e-12


@dataclass(frozen=True, eq=False)
class BoundaryConfig:
    """고정 경계 스핀 (계산 기저 상태 |L>, |R>를 겸함)"""

    values: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def validate(self, wires, q):
        if len(self.values) != wires:
            raise ShapeMismatch(f"경계 길이 {len(self.values)} != wires {wires}")
        for v in self.values:
            if not 0 <= v < q:
                raise ShapeMismatch(f"경계 스핀 값 범위 초과: {v} (q={q})")
        return self

    def flipped(self):
        """q=2 전역 뒤집기"""
        return BoundaryConfig(tuple(1 - v for v in self.values))


def as_boundary(values):
    if isinstance(values, BoundaryConfig):
        return values
    return BoundaryConfig(tuple(values))


@dataclass(frozen=True, eq=False)
class VertexModel:
    """사이트(vertex)에 가중치 텐서가 놓인 모형"""

    lattice: object
    q: int
    site_weights: Tuple[WeightTensor, ...]

    def __post_init__(self):
        if self.lattice.kind not in (TILTED_SQUARE, TILTED_TRIANGULAR):
            raise InvalidDimensions(f"vertex 모형은 tilted 격자가 필요합니다: {self.lattice.kind}")
        weights = tuple(self.site_weights)
        if len(weights) != self.lattice.site_count:
            raise ShapeMismatch(f"텐서 수 {len(weights)} != 사이트 수 {self.lattice.site_count}")
        for site, tensor in zip(self.lattice.sites, weights):
            if tensor.q != self.q or tensor.arity != len(site.wires):
                raise ShapeMismatch(f"사이트 {site.site_id}의 텐서 차수/차원 불일치")
        object.__setattr__(self, "site_weights", weights)

    @property
    def kind(self):
        return "vertex"


@dataclass(frozen=True, eq=False)
class EdgeModel:
    """edge에 가중치 표가 놓인 모형 (Rectangular 격자)"""

    lattice: object
    q: int
    tables: Tuple[EdgeWeightTable, ...]

    def __post_init__(self):
        if self.lattice.kind != RECTANGULAR:
            raise InvalidDimensions(f"edge 모형은 rectangular 격자가 필요합니다: {self.lattice.kind}")
        tables = tuple(self.tables)
        if len(tables) != self.lattice.site_count:
            raise ShapeMismatch(f"가중치 표 수 {len(tables)} != edge 수 {self.lattice.site_count}")
        for table in tables:
            if table.q != self.q:
                raise ShapeMismatch("가중치 표의 q가 모형과 다릅니다")
        object.__setattr__(self, "tables", tables)

    @property
    def kind(self):
        return "edge"

    @property
    def vertical_weights(self):
        return {s.site_id: self.tables[s.site_id] for s in self.lattice.sites if s.kind == VERTICAL}

    @property
    def horizontal_weights(self):
        return {s.site_id: self.tables[s.site_id] for s in self.lattice.sites if s.kind == HORIZONTAL}


def _per_site(values, count, width, name):
    """단일 튜플이면 모든 사이트에 복제"""
    values = list(values)
    if values and not isinstance(values[0], (list, tuple, np.ndarray)):
        values = [values] * count
    if len(values) != count:
        raise ShapeMismatch(f"{name} 튜플 수 {len(values)} != 사이트 수 {count}")
    for v in values:
        if len(v) != width:
            raise ShapeMismatch(f"{name} 튜플 길이는 {width}이어야 합니다: {len(v)}")
    return values


def eight_vertex_tensor(entries):
    """
    8-vertex 텐서 생성

    Args:
        entries: (w00_00, w00_11, w01_01, w01_10, w10_01, w10_10, w11_00, w11_11)

    Returns:
        WeightTensor: 나머지 성분이 정확히 0인 4x4 텐서
    """
    matrix = np.zeros((4, 4), dtype=complex)
    for (r, c), value in zip(EIGHT_VERTEX_SLOTS, entries):
        matrix[r, c] = complex(value)
    return WeightTensor(2, 2, matrix)


def six_vertex_tensor(entries):
    """(w00_00, w01_01, w01_10, w10_01, w10_10, w11_11) → 6-vertex 텐서"""
    a, b, c, d, e, f = entries
    return eight_vertex_tensor((a, 0, b, c, d, e, 0, f))


def _require_square_q2(lattice):
    if lattice.kind != TILTED_SQUARE:
        raise InvalidDimensions(f"8/6-vertex 모형은 tilted_square 격자가 필요합니다: {lattice.kind}")


def eight_vertex_model(lattice, weights):
    """
    8-vertex 모형 (q = 2)

    Args:
        lattice (Lattice): tilted_square 격자
        weights: 단일 8-튜플 또는 사이트별 8-튜플 목록

    Returns:
        VertexModel: 모형
    """
    _require_square_q2(lattice)
    per_site = _per_site(weights, lattice.site_count, 8, "8-vertex")
    return VertexModel(lattice, 2, tuple(eight_vertex_tensor(w) for w in per_site))


def six_vertex_model(lattice, weights):
    """6-vertex 모형: w00_11 = w11_00 = 0 으로 고정"""
    _require_square_q2(lattice)
    per_site = _per_site(weights, lattice.site_count, 6, "6-vertex")
    return VertexModel(lattice, 2, tuple(six_vertex_tensor(w) for w in per_site))


def ising_table(beta, coupling):
    """h(i,j) = -J (같음), +J (다름) 관례의 Boltzmann 표"""
    x = complex(beta) * complex(coupling)
    same, diff = np.exp(x), np.exp(-x)
    return EdgeWeightTable(2, np.array([[same, diff], [diff, same]], dtype=complex))


def ising_edge_model(lattice, beta, couplings):
    """
    Ising edge 모형 (q = 2, 자기장 없음)

    Args:
        lattice (Lattice): rectangular 격자
        beta (complex): 역온도 (복소수 허용)
        couplings: 단일 J 또는 edge(site id)별 J 목록

    Returns:
        EdgeModel: w_same = e^{βJ}, w_diff = e^{-βJ}
    """
    if lattice.kind != RECTANGULAR:
        raise InvalidDimensions("Ising edge 모형은 rectangular 격자가 필요합니다")
    if np.ndim(couplings) == 0:
        couplings = [couplings] * lattice.site_count
    couplings = list(couplings)
    if len(couplings) != lattice.site_count:
        raise ShapeMismatch(f"결합 상수 수 {len(couplings)} != edge 수 {lattice.site_count}")
    return EdgeModel(lattice, 2, tuple(ising_table(beta, J) for J in couplings))


def uniform_edge_model(lattice, table, q=None):
    """모든 edge에 같은 표를 놓는 모형"""
    table = np.asarray(table, dtype=complex)
    q = q or table.shape[0]
    return EdgeModel(lattice, q, tuple(EdgeWeightTable(q, table) for _ in lattice.sites))


def uniform_vertex_model(lattice, matrix, q=2):
    """모든 사이트에 같은 행렬을 놓는 모형"""
    matrix = np.asarray(matrix, dtype=complex)
    tensors = []
    for site in lattice.sites:
        tensors.append(WeightTensor(q, len(site.wires), matrix))
    return VertexModel(lattice, q, tuple(tensors))


def check_eight_vertex_pattern(matrix, tol=ZERO_PATTERN_TOL):
    """8-vertex 영(0) 패턴 확인"""
    matrix = np.asarray(matrix, dtype=complex)
    if matrix.shape != (4, 4):
        return False
    mask = np.ones((4, 4), dtype=bool)
    for r, c in EIGHT_VERTEX_SLOTS:
        mask[r, c] = False
    return bool(np.all(np.abs(matrix[mask]) <= tol))


def check_six_vertex_pattern(matrix, tol=ZERO_PATTERN_TOL):
    matrix = np.asarray(matrix, dtype=complex)
    return check_eight_vertex_pattern(matrix, tol) and abs(matrix[0, 3]) <= tol and abs(matrix[3, 0]) <= tol


def free_fermion_sides(matrix):
    """자유 페르미온 조건의 좌변/우변"""
    m = np.asarray(matrix, dtype=complex)
    lhs = m[0, 0] * m[3, 3] - m[0, 3] * m[3, 0]
    rhs = m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1]
    return lhs, rhs


def free_fermion_condition(tensor, tol=1e-10, pattern_tol=ZERO_PATTERN_TOL):
    """
    자유 페르미온 조건 w00_00 w11_11 - w00_11 w11_00 = w01_01 w10_10 - w01_10 w10_01

    Args:
        tensor (WeightTensor | ndarray): q=2, arity 2 텐서
        tol (float): |LHS - RHS| 허용 오차

    Returns:
        bool: 조건 성립 여부
    """
    matrix = tensor.matrix if isinstance(tensor, WeightTensor) else np.asarray(tensor, dtype=complex)
    if isinstance(tensor, WeightTensor) and (tensor.q != 2 or tensor.arity != 2):
        raise NotEightVertexForm("자유 페르미온 조건은 q=2, 2-local 텐서에만 정의됩니다")
    if not check_eight_vertex_pattern(matrix, pattern_tol):
        raise NotEightVertexForm("8-vertex 영 패턴이 아닙니다")
    lhs, rhs = free_fermion_sides(matrix)
    return bool(abs(lhs - rhs) <= tol)
