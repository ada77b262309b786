"""
Pfaffian 계산 (피벗팅을 쓰는 Parlett-Reid 삼중대각화)
"""
import logging

import numpy as np

from modules.utils.errors import NotAntisymmetric, OddDimension, ShapeMismatch

logger = logging.getLogger(__name__)

ANTISYMMETRY_TOL = 1e-10


def pfaffian(matrix, tol=ANTISYMMETRY_TOL):
    """
    반대칭 행렬의 Pfaffian

    Args:
        matrix (array-like): 2n x 2n 반대칭 행렬
        tol (float): 반대칭성 허용 오차 (행렬 크기에 대한 상대값)

    Returns:
        complex: Pf(A), Pf(A)^2 = det(A)
    """
    A = np.array(matrix, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ShapeMismatch(f"정사각 행렬이 필요합니다: {A.shape}")
    n = A.shape[0]
    if n == 0:
        return 1.0 + 0j
    scale = max(1.0, float(np.max(np.abs(A))))
    if np.max(np.abs(A + A.T)) > tol * scale:
        raise NotAntisymmetric("행렬이 반대칭이 아닙니다")
    if n % 2 == 1:
        raise OddDimension(f"홀수 차원 행렬의 Pfaffian은 정의되지 않습니다: {n}")

    result = 1.0 + 0j
    for k in range(0, n - 1, 2):
        # 열 k에서 절댓값이 가장 큰 성분을 k+1 자리로
        kp = k + 1 + int(np.argmax(np.abs(A[k + 1:, k])))
        if kp != k + 1:
            A[[k + 1, kp], :] = A[[kp, k + 1], :]
            A[:, [k + 1, kp]] = A[:, [kp, k + 1]]
            result = -result

        pivot = A[k, k + 1]
        if pivot == 0:
            return 0j
        result *= pivot

        if k + 2 < n:
            tau = A[k, k + 2:] / pivot
            column = A[k + 2:, k + 1]
            A[k + 2:, k + 2:] += np.outer(tau, column) - np.outer(column, tau)

    return complex(result)
