"""
격자 기하 정의

모형(vertex / edge)과 회로가 같은 주소 체계를 공유하도록 격자를 wire/layer 단위로 기술한다.
wire와 layer는 모두 1부터 센다. layer 1은 오른쪽 경계(|R⟩)에 붙어 있어 가장 먼저 적용된다.
"""
import logging
from dataclasses import dataclass, field
from typing import Tuple

from modules.utils.errors import InvalidDimensions

logger = logging.getLogger(__name__)

TILTED_SQUARE = "tilted_square"
TILTED_TRIANGULAR = "tilted_triangular"
RECTANGULAR = "rectangular"

LATTICE_KINDS = (TILTED_SQUARE, TILTED_TRIANGULAR, RECTANGULAR)

# 사이트 종류
VERTEX = "vertex"
VERTICAL = "vertical"
HORIZONTAL = "horizontal"


@dataclass(frozen=True)
class Site:
    """상호작용 사이트 하나 (vertex 또는 edge)"""

    site_id: int
    layer: int
    wires: Tuple[int, ...]
    kind: str = VERTEX
    column: int = 0

    @property
    def label(self):
        """layer 표기 (예: 'v-col1', 'h', 정수 layer)"""
        if self.kind == VERTICAL:
            return f"v-col{self.column}"
        if self.kind == HORIZONTAL:
            return "h"
        return self.layer


@dataclass(frozen=True)
class Lattice:
    """
    유한 격자

    Rectangular 격자에서 wires는 행 수 N, layers는 열 수 M이다. 열 1이 가장 오른쪽(R 경계)이며
    슬라이스는 vertical(col 1), horizontal, vertical(col 2), ..., vertical(col M) 순서다.
    """

    kind: str
    wires: int
    layers: int
    sites: Tuple[Site, ...] = field(default=(), repr=False, compare=False)

    @property
    def site_count(self):
        return len(self.sites)

    @property
    def slice_count(self):
        """회로 깊이 (Rectangular는 2M-1 슬라이스)"""
        if self.kind == RECTANGULAR:
            return 2 * self.layers - 1
        return self.layers

    def sites_in_layer(self, layer):
        return [s for s in self.sites if s.layer == layer]

    def to_json(self):
        return {"kind": self.kind, "wires": self.wires, "layers": self.layers}


def _brickwork_spans(wires, layer):
    # 홀수 layer는 wire 1에서, 짝수 layer는 wire 2에서 시작
    start = 1 if layer % 2 == 1 else 2
    return [(w, w + 1) for w in range(start, wires, 2)]


def _triangular_spans(wires, layer):
    # 시작 오프셋이 layer마다 1, 2, 3으로 순환
    start = (layer - 1) % 3 + 1
    return [(w, w + 1, w + 2) for w in range(start, wires - 1, 3)]


def build_lattice(kind, wires, layers):
    """
    격자 생성

    Args:
        kind (str): tilted_square | tilted_triangular | rectangular
        wires (int): wire 수 N (Rectangular는 행 수)
        layers (int): layer 수 M (Rectangular는 열 수)

    Returns:
        Lattice: 사이트 목록이 채워진 격자
    """
    if kind not in LATTICE_KINDS:
        raise InvalidDimensions(f"알 수 없는 격자 종류: {kind}")
    if isinstance(wires, bool) or isinstance(layers, bool):
        raise InvalidDimensions("wires/layers는 정수여야 합니다")
    wires, layers = int(wires), int(layers)

    min_wires = {TILTED_SQUARE: 2, TILTED_TRIANGULAR: 3, RECTANGULAR: 1}[kind]
    if wires < min_wires:
        raise InvalidDimensions(f"{kind} 격자는 wires >= {min_wires} 이어야 합니다: {wires}")
    if layers < 1:
        raise InvalidDimensions(f"layers >= 1 이어야 합니다: {layers}")

    sites = []
    if kind == RECTANGULAR:
        slice_index = 0
        for column in range(1, layers + 1):
            slice_index += 1
            for r in range(1, wires):
                sites.append(Site(len(sites), slice_index, (r, r + 1), VERTICAL, column))
            if column < layers:
                slice_index += 1
                for r in range(1, wires + 1):
                    sites.append(Site(len(sites), slice_index, (r,), HORIZONTAL, column))
    else:
        spans_of = _brickwork_spans if kind == TILTED_SQUARE else _triangular_spans
        for layer in range(1, layers + 1):
            for span in spans_of(wires, layer):
                sites.append(Site(len(sites), layer, span))

    lattice = Lattice(kind, wires, layers, tuple(sites))
    logger.debug(f"격자 생성: {kind}, N={wires}, M={layers}, sites={len(sites)}")
    return lattice


def site_list(lattice):
    """
    사이트 목록 (site id, layer 표기, wire span)

    Args:
        lattice (Lattice): 격자

    Returns:
        list: layer 순, 그 안에서 가장 낮은 wire 순으로 정렬된 튜플 목록
    """
    ordered = sorted(lattice.sites, key=lambda s: (s.layer, s.wires[0]))
    return [(s.site_id, s.label, set(s.wires)) for s in ordered]


def lattice_from_json(data):
    """JSON fragment에서 격자 생성"""
    try:
        return build_lattice(data["kind"], data["wires"], data["layers"])
    except KeyError as e:
        raise InvalidDimensions(f"격자 정의에 필드가 없습니다: {e}")
