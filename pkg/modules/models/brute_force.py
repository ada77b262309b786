"""
완전 열거 분배함수 (검증용 오라클)

모든 내부 스핀 배치를 청크 단위로 벡터화해 열거하고, 사이트/edge 가중치의 곱을 합산한다.
"""
import math
import logging

import numpy as np

from modules.lattice.geometry import VERTICAL, HORIZONTAL
from modules.models.spin_models import VertexModel, EdgeModel, as_boundary
from modules.utils.errors import TooLarge, ShapeMismatch

logger = logging.getLogger(__name__)

DEFAULT_MAX_SPINS = 24
CHUNK_SIZE = 1 << 16


class FactorGraph:
    """스핀 변수와 가중치 인자(factor)의 목록. 경계 변수는 값이 고정(clamp)된다."""

    def __init__(self, q):
        self.q = q
        self.n_vars = 0
        self.factors = []
        self.clamps = {}
        self.conflict = False

    def new_var(self):
        self.n_vars += 1
        return self.n_vars - 1

    def add_factor(self, tensor, scope):
        self.factors.append((np.asarray(tensor, dtype=complex), tuple(scope)))

    def clamp(self, var, value):
        # 같은 변수에 서로 다른 값이 고정되면 Z = 0
        if var in self.clamps and self.clamps[var] != value:
            self.conflict = True
        self.clamps[var] = value

    @property
    def free_vars(self):
        return [v for v in range(self.n_vars) if v not in self.clamps]


def vertex_factor_graph(model, left, right):
    """
    vertex 모형 → factor graph

    각 wire는 게이트 사이의 구간(segment)마다 스핀 변수 하나를 가진다.
    첫 구간은 R, 마지막 구간은 L로 고정된다.
    """
    graph = FactorGraph(model.q)
    wires = model.lattice.wires
    current = {w: graph.new_var() for w in range(1, wires + 1)}
    for w in range(1, wires + 1):
        graph.clamp(current[w], right[w - 1])

    ordered = sorted(model.lattice.sites, key=lambda s: (s.layer, s.wires[0]))
    for site in ordered:
        k = len(site.wires)
        matrix = model.site_weights[site.site_id].matrix
        # 항등 텐서는 입력 스핀을 그대로 출력으로 넘긴다
        if np.array_equal(matrix, np.eye(matrix.shape[0])):
            continue
        inputs = [current[w] for w in site.wires]
        outputs = []
        for w in site.wires:
            current[w] = graph.new_var()
            outputs.append(current[w])
        tensor = matrix.reshape((model.q,) * (2 * k))
        graph.add_factor(tensor, outputs + inputs)

    for w in range(1, wires + 1):
        graph.clamp(current[w], left[w - 1])
    return graph


def edge_factor_graph(model, left, right):
    """
    edge 모형 → factor graph

    스핀은 N x M 격자점에 놓이고, 열 M은 L로, 열 1은 R로 고정된다.
    """
    graph = FactorGraph(model.q)
    rows, columns = model.lattice.wires, model.lattice.layers
    spin = {(r, c): graph.new_var() for c in range(1, columns + 1) for r in range(1, rows + 1)}

    for r in range(1, rows + 1):
        graph.clamp(spin[(r, 1)], right[r - 1])
        graph.clamp(spin[(r, columns)], left[r - 1])

    for site in model.lattice.sites:
        table = model.tables[site.site_id].matrix
        if site.kind == VERTICAL:
            upper, lower = site.wires
            graph.add_factor(table, (spin[(upper, site.column)], spin[(lower, site.column)]))
        elif site.kind == HORIZONTAL:
            (r,) = site.wires
            graph.add_factor(table, (spin[(r, site.column + 1)], spin[(r, site.column)]))
    return graph


def internal_spin_count(model):
    """경계를 제외한 내부 스핀 수"""
    dummy = [0] * model.lattice.wires
    if isinstance(model, VertexModel):
        graph = vertex_factor_graph(model, dummy, dummy)
    else:
        graph = edge_factor_graph(model, dummy, dummy)
    return len(graph.free_vars)


def enumerate_factor_graph(graph, max_spins=DEFAULT_MAX_SPINS, chunk_size=CHUNK_SIZE):
    """
    factor graph의 모든 자유 변수 배치를 합산

    Args:
        graph (FactorGraph): 대상 그래프
        max_spins (int): q=2 기준 내부 스핀 상한 (q^n <= 2^max_spins)

    Returns:
        complex: 분배함수 값
    """
    if graph.conflict:
        return 0j

    q = graph.q
    free = graph.free_vars
    if len(free) * math.log2(q) > max_spins + 1e-9:
        raise TooLarge(f"내부 스핀 {len(free)}개 (q={q})가 상한 {max_spins}을 초과합니다")

    total = q ** len(free)
    base = np.zeros(graph.n_vars, dtype=np.int64)
    for var, value in graph.clamps.items():
        base[var] = value

    acc = 0j
    for start in range(0, total, chunk_size):
        idx = np.arange(start, min(total, start + chunk_size), dtype=np.int64)
        assign = np.tile(base, (len(idx), 1))
        rem = idx.copy()
        for var in reversed(free):
            assign[:, var] = rem % q
            rem //= q

        prod = np.ones(len(idx), dtype=complex)
        for tensor, scope in graph.factors:
            prod *= tensor[tuple(assign[:, v] for v in scope)]
        acc += prod.sum()

    logger.debug(f"완전 열거 완료: 자유 스핀 {len(free)}개, 배치 {total}개")
    return complex(acc)


def brute_force_partition(model, left, right, max_spins=DEFAULT_MAX_SPINS):
    """
    분배함수 Z(L, R) 완전 열거

    Args:
        model (VertexModel | EdgeModel): 스핀 모형
        left, right: 경계 스핀 (길이 = wires)
        max_spins (int): 내부 스핀 상한

    Returns:
        complex: Σ_{내부 스핀} Π 가중치
    """
    left = as_boundary(left).validate(model.lattice.wires, model.q).values
    right = as_boundary(right).validate(model.lattice.wires, model.q).values

    if isinstance(model, VertexModel):
        graph = vertex_factor_graph(model, left, right)
    elif isinstance(model, EdgeModel):
        graph = edge_factor_graph(model, left, right)
    else:
        raise ShapeMismatch(f"지원하지 않는 모형 타입: {type(model).__name__}")

    return enumerate_factor_graph(graph, max_spins)
