"""
시드 고정 무작위 인스턴스 생성기 (테스트와 crosscheck --samples 공용)

모든 함수는 numpy Generator를 받아 같은 시드에서 같은 인스턴스를 만든다.
"""
import numpy as np
from scipy.stats import unitary_group

from modules.circuit.ir import (
    Gate, Circuit, identity_gate, hadamard_gate, phase_gate, controlled_phase_gate, x_rotation, zz_rotation
)
from modules.lattice.geometry import build_lattice
from modules.models.spin_models import (
    VertexModel, EdgeModel, WeightTensor, EdgeWeightTable, BoundaryConfig,
    eight_vertex_tensor, six_vertex_tensor
)
from modules.reductions.bqp import ExchangeCircuitSpec


def complex_normal(rng, size):
    return rng.normal(size=size) + 1j * rng.normal(size=size)


def random_vertex_model(rng, kind, wires, layers, q=2, family="generic"):
    """
    무작위 복소 vertex 모형

    Args:
        family (str): generic (임의 텐서) | eight (8-vertex) | six (6-vertex)
    """
    lattice = build_lattice(kind, wires, layers)
    tensors = []
    for site in lattice.sites:
        k = len(site.wires)
        if family == "eight":
            tensors.append(eight_vertex_tensor(complex_normal(rng, 8)))
        elif family == "six":
            tensors.append(six_vertex_tensor(complex_normal(rng, 6)))
        else:
            tensors.append(WeightTensor(q, k, complex_normal(rng, (q ** k, q ** k))))
    return VertexModel(lattice, 2 if family in ("eight", "six") else q, tuple(tensors))


def random_edge_model(rng, wires, layers, q=2, symmetric=False, real=False):
    """
    무작위 edge 모형

    Args:
        symmetric (bool): 자기장 없는 대칭 표 (q=2)
        real (bool): 실수 가중치
    """
    lattice = build_lattice("rectangular", wires, layers)
    tables = []
    for _ in lattice.sites:
        if symmetric:
            same, diff = rng.normal(size=2) if real else complex_normal(rng, 2)
            matrix = np.array([[same, diff], [diff, same]])
            q_site = 2
        else:
            matrix = rng.normal(size=(q, q)) if real else complex_normal(rng, (q, q))
            q_site = q
        tables.append(EdgeWeightTable(q_site, matrix))
    return EdgeModel(lattice, 2 if symmetric else q, tuple(tables))


def random_boundary(rng, wires, q=2):
    return BoundaryConfig(tuple(int(v) for v in rng.integers(0, q, size=wires)))


def random_unitary(rng, dim):
    """Haar 무작위 유니터리"""
    return unitary_group.rvs(dim, random_state=rng)


def random_matchgate(rng, unitary=False):
    """
    무작위 matchgate 행렬

    짝수 블록 A와 홀수 블록 B를 뽑고, det B = det A가 되도록 B에 상수를 곱한다.
    """
    if unitary:
        even, odd = random_unitary(rng, 2), random_unitary(rng, 2)
    else:
        even, odd = complex_normal(rng, (2, 2)), complex_normal(rng, (2, 2))
    odd = odd * np.sqrt(np.linalg.det(even) / np.linalg.det(odd))

    matrix = np.zeros((4, 4), dtype=complex)
    matrix[np.ix_([0, 3], [0, 3])] = even
    matrix[np.ix_([1, 2], [1, 2])] = odd
    return matrix


def random_matchgate_circuit(rng, wires, depth, unitary_fraction=0.5):
    """brickwork 배치의 무작위 matchgate 회로"""
    gates = []
    for layer in range(1, depth + 1):
        start = 1 if layer % 2 == 1 else 2
        for w in range(start, wires, 2):
            unitary = rng.random() < unitary_fraction
            gates.append(Gate((w, w + 1), 2, random_matchgate(rng, unitary)))
    return Circuit(wires, 2, tuple(gates))


def random_xz_circuit(rng, wires, depth):
    """σx 회전 층과 σz⊗σz 회전 층이 번갈아 나오는 회로"""
    gates = []
    for layer in range(1, depth + 1):
        if layer % 2 == 1:
            gates.extend(x_rotation(w, rng.uniform(-np.pi, np.pi)) for w in range(1, wires + 1))
        else:
            gates.extend(zz_rotation(w, w + 1, rng.uniform(-np.pi, np.pi)) for w in range(1, wires))
    return Circuit(wires, 2, tuple(gates))


def random_exchange_spec(rng, logical_qubits, gates):
    """무작위 인접 쌍, t ∈ [0, π) 교환 펄스"""
    wires = 4 * logical_qubits
    pulses = []
    for _ in range(gates):
        w = int(rng.integers(1, wires))
        pulses.append(((w, w + 1), float(rng.uniform(0, np.pi))))
    return ExchangeCircuitSpec(logical_qubits, tuple(pulses))


def random_gateset_circuit(rng, wires, depth):
    """{I₁, H, P, I₂, CP} 에서 고른 무작위 회로"""
    names = ["I1", "H", "P"] + (["I2", "CP"] if wires >= 2 else [])
    gates = []
    for _ in range(depth):
        name = names[int(rng.integers(len(names)))]
        if name in ("I2", "CP"):
            w = int(rng.integers(1, wires))
            gates.append(identity_gate((w, w + 1)) if name == "I2" else controlled_phase_gate(w, w + 1))
        else:
            w = int(rng.integers(1, wires + 1))
            gates.append({"I1": identity_gate((w,)), "H": hadamard_gate(w), "P": phase_gate(w)}[name])
    return Circuit(wires, 2, tuple(gates))
