import os
import json
import copy
import logging

import numpy as np

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = "config/config.json"

# 설정 파일이 없을 때 사용하는 기본값
DEFAULT_CONFIG = {
    "caps": {
        "max_dense_qubits": 26,
        "max_brute_spins": 24
    },
    "tolerances": {
        "zero_pattern": 1e-12,
        "unitary": 1e-10,
        "antisymmetry": 1e-10,
        "family_match": 1e-10,
        "pivot": 1e-10
    },
    "estimator": {
        "eps": 0.1,
        "delta": 0.05,
        "seed": 0
    },
    "crosscheck": {
        "tol": 1e-9,
        "samples": 20
    },
    "export": {
        "export_directory": "./data/exports"
    },
    "logging": {
        "level": "INFO",
        "directory": "logs"
    }
}


def _merge(base, override):
    """중첩 dict 병합 (override 우선)"""
    result = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(result.get(key), dict):
            result[key] = _merge(result[key], value)
        else:
            result[key] = value
    return result


def load_config(config_path=None):
    """
    설정 파일 로드

    Args:
        config_path (str, optional): 설정 파일 경로. 기본값은 config/config.json

    Returns:
        dict: 기본값과 병합된 설정 정보
    """
    config_path = config_path or DEFAULT_CONFIG_PATH

    try:
        if os.path.exists(config_path):
            with open(config_path, 'r', encoding='utf-8') as f:
                config = json.load(f)

            logger.info(f"설정 파일 로드 완료: {config_path}")
            return _merge(DEFAULT_CONFIG, config)
        else:
            logger.warning(f"설정 파일을 찾을 수 없음: {config_path}. 기본 설정을 사용합니다.")
            return copy.deepcopy(DEFAULT_CONFIG)

    except Exception as e:
        logger.error(f"설정 파일 로드 실패: {e}. 기본 설정을 사용합니다.")
        return copy.deepcopy(DEFAULT_CONFIG)


def complex_to_json(value):
    """복소수를 [re, im] 형식으로 변환"""
    value = complex(value)
    return [float(value.real), float(value.imag)]


def complex_from_json(value):
    """
    [re, im] 또는 실수 하나를 복소수로 변환

    Args:
        value (list | float | int): 직렬화된 값

    Returns:
        complex: 복소수 값
    """
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ValueError(f"복소수는 [re, im] 형식이어야 합니다: {value}")
        return complex(float(value[0]), float(value[1]))
    return complex(float(value))


def matrix_to_json(matrix):
    """행렬을 행 우선 [[ [re, im], ... ], ...] 형식으로 변환"""
    matrix = np.asarray(matrix, dtype=complex)
    return [[complex_to_json(x) for x in row] for row in matrix]


def matrix_from_json(rows):
    """직렬화된 행렬을 complex ndarray로 변환"""
    return np.array([[complex_from_json(x) for x in row] for row in rows], dtype=complex)


def parse_bits(text, q=2):
    """
    '0101' 형태의 문자열(또는 정수 리스트)을 스핀 값 리스트로 변환

    Args:
        text (str | list): 경계 스핀 표현
        q (int): 스핀 차원

    Returns:
        list: 정수 리스트
    """
    if isinstance(text, str):
        text = text.replace(",", "").strip()
        values = [int(ch) for ch in text]
    else:
        values = [int(v) for v in text]

    for v in values:
        if not 0 <= v < q:
            raise ValueError(f"스핀 값 범위 초과: {v} (q={q})")
    return values


def format_time(seconds):
    """
    초 단위 시간을 사람이 읽기 좋은 형식으로 변환

    Args:
        seconds (float): 초 단위 시간

    Returns:
        str: 형식화된 시간 문자열
    """
    if seconds < 1:
        return f"{seconds * 1000:.1f}ms"
    elif seconds < 60:
        return f"{seconds:.1f}초"
    elif seconds < 3600:
        minutes = seconds / 60
        return f"{minutes:.1f}분"
    else:
        hours = seconds / 3600
        return f"{hours:.1f}시간"
