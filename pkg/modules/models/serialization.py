"""
모형 / 회로 / 교환 펄스 명세 JSON 입출력

문서는 config/schemas.json 의 스키마로 먼저 검증한다. 복소수는 [re, im], 실수 하나도 허용한다.
"""
import json
import logging
from functools import lru_cache
from pathlib import Path

import jsonschema

from modules.circuit.ir import Gate, Circuit
from modules.lattice.geometry import lattice_from_json
from modules.models.spin_models import VertexModel, EdgeModel, WeightTensor, EdgeWeightTable
from modules.reductions.bqp import ExchangeCircuitSpec
from modules.utils.errors import SchemaError, ShapeMismatch
from modules.utils.helpers import matrix_from_json, matrix_to_json

logger = logging.getLogger(__name__)

SCHEMA_PATH = Path(__file__).resolve().parents[2] / "config" / "schemas.json"


@lru_cache(maxsize=None)
def _schemas(path=str(SCHEMA_PATH)):
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)


def validate_document(doc, name):
    """
    JSON 문서 스키마 검증

    Args:
        doc (dict): 문서
        name (str): model | circuit | exchange_spec

    Raises:
        SchemaError: 검증 실패
    """
    schemas = _schemas()
    schema = dict(schemas[name])
    schema["definitions"] = schemas["definitions"]
    try:
        jsonschema.validate(instance=doc, schema=schema)
    except jsonschema.ValidationError as e:
        path = "/".join(str(p) for p in e.absolute_path)
        raise SchemaError(f"{name} 문서 스키마 오류 ({path or '최상위'}): {e.message}")


def read_json(path):
    """JSON 파일 읽기 (실패하면 SchemaError)"""
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise SchemaError(f"JSON 파일을 읽을 수 없습니다: {path} ({e})")


def _matrix(rows):
    try:
        return matrix_from_json(rows)
    except (TypeError, ValueError) as e:
        raise SchemaError(f"행렬 형식 오류: {e}")


def _boundary(doc):
    boundary = doc.get("boundary") or {}
    left = boundary.get("left")
    right = boundary.get("right")
    return (tuple(left) if left is not None else None, tuple(right) if right is not None else None)


def _per_site_matrices(weights, site_count):
    if "uniform" in weights:
        matrix = _matrix(weights["uniform"])
        return [matrix] * site_count
    matrices = [None] * site_count
    for entry in weights["per_site"]:
        site = entry["site"]
        if site >= site_count or matrices[site] is not None:
            raise ShapeMismatch(f"per_site 항목의 사이트 번호 오류: {site}")
        matrices[site] = _matrix(entry["matrix"])
    missing = [i for i, m in enumerate(matrices) if m is None]
    if missing:
        raise ShapeMismatch(f"가중치가 없는 사이트: {missing}")
    return matrices


def model_from_json(doc):
    """
    모형 문서 → (모형, (L, R))

    Args:
        doc (dict): {"type", "q", "lattice", "weights", "boundary"} 문서

    Returns:
        tuple: (VertexModel | EdgeModel, (left, right)). 경계가 없으면 None
    """
    validate_document(doc, "model")
    lattice = lattice_from_json(doc["lattice"])
    q = doc.get("q", 2)
    matrices = _per_site_matrices(doc["weights"], lattice.site_count)

    if doc["type"] == "vertex":
        tensors = tuple(WeightTensor(q, len(site.wires), m) for site, m in zip(lattice.sites, matrices))
        model = VertexModel(lattice, q, tensors)
    else:
        model = EdgeModel(lattice, q, tuple(EdgeWeightTable(q, m) for m in matrices))

    logger.debug(f"모형 로드: {doc['type']}, {lattice.kind}, N={lattice.wires}, M={lattice.layers}")
    return model, _boundary(doc)


def model_to_json(model, left=None, right=None):
    """모형 → 문서 (사이트별 가중치)"""
    if isinstance(model, VertexModel):
        entries = model.site_weights
    else:
        entries = model.tables
    doc = {
        "type": model.kind,
        "q": model.q,
        "lattice": model.lattice.to_json(),
        "weights": {
            "per_site": [{"site": i, "matrix": matrix_to_json(e.matrix)} for i, e in enumerate(entries)]
        },
    }
    if left is not None or right is not None:
        doc["boundary"] = {}
        if left is not None:
            doc["boundary"]["left"] = list(left)
        if right is not None:
            doc["boundary"]["right"] = list(right)
    return doc


def circuit_from_json(doc):
    """
    회로 문서 → (회로, (L, R))

    Args:
        doc (dict): {"wires", "q", "gates", "boundary"} 문서

    Returns:
        tuple: (Circuit, (left, right))
    """
    validate_document(doc, "circuit")
    q = doc.get("q", 2)
    gates = tuple(Gate(tuple(g["wires"]), q, _matrix(g["matrix"])) for g in doc["gates"])
    return Circuit(doc["wires"], q, gates), _boundary(doc)


def circuit_to_json(circuit, left=None, right=None):
    doc = circuit.to_json()
    if left is not None and right is not None:
        doc["boundary"] = {"left": list(left), "right": list(right)}
    return doc


def exchange_spec_from_json(doc):
    """교환 펄스 명세 문서 → ExchangeCircuitSpec"""
    validate_document(doc, "exchange_spec")
    pulses = tuple((tuple(p["wires"]), p["t"]) for p in doc.get("pulses", []))
    return ExchangeCircuitSpec(doc["logical_qubits"], pulses)
