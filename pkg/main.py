import os
import sys
import json
import time
import logging
import argparse
from itertools import combinations

import numpy as np

from modules.circuit.dense import amplitude_dense, is_unitary
from modules.circuit.ir import Circuit
from modules.compiler.translator import (
    compile_vertex_model, compile_edge_model, circuit_to_vertex_model, circuit_to_edge_model
)
from modules.export.report_exporter import ReportExporter
from modules.fermion.matchgate import amplitude_matchgate
from modules.fermion.planar_ising import partition_planar_ising, simulate_xz_circuit
from modules.hadamard.estimator import estimate_amplitude
from modules.lattice.geometry import TILTED_SQUARE
from modules.models.brute_force import brute_force_partition
from modules.models.serialization import (
    read_json, model_from_json, model_to_json, circuit_from_json, circuit_to_json, exchange_spec_from_json
)
from modules.models.spin_models import VertexModel, EdgeModel, free_fermion_condition
from modules.reductions.bqp import six_vertex_instance, em_instance, verify_reduction
from modules.utils.errors import (
    WorkbenchError, MethodInapplicable, InvalidDimensions, NotBrickwork, NotEdgeShaped, NotEightVertexForm
)
from modules.utils.helpers import load_config, complex_to_json, parse_bits, format_time
from modules.utils.logger import Logger
from modules.utils import sampling

logger = logging.getLogger(__name__)

METHODS = ("brute", "dense", "matchgate", "pfaffian", "hadamard")
FAMILIES = ("vertex", "edge", "matchgate", "xz")

# 0 근처 값 비교에 쓰는 반올림 하한
ROUNDING_FLOOR = 1e-12


class VertexLab:
    """스핀 모형 / 회로 평가 워크벤치 메인 클래스"""

    def __init__(self, config, app_logger=None):
        """
        워크벤치 초기화

        Args:
            config (dict): load_config()로 읽은 설정 (CLI 플래그 반영 후)
            app_logger (Logger, optional): 평가 기록용 로거
        """
        self.config = config
        self.app_logger = app_logger
        caps = config.get("caps", {})
        self.max_dense_qubits = caps.get("max_dense_qubits", 26)
        self.max_brute_spins = caps.get("max_brute_spins", 24)
        self.tolerances = config.get("tolerances", {})
        logger.info(
            f"워크벤치 초기화 완료: dense 상한 {self.max_dense_qubits} qubit, 완전 열거 상한 {self.max_brute_spins} 스핀"
        )

    # 입력 변환

    @staticmethod
    def load(path):
        """
        JSON 파일을 모형 또는 회로로 읽기

        Returns:
            tuple: (모형 또는 회로, (left, right))
        """
        doc = read_json(path)
        if isinstance(doc, dict) and "type" in doc:
            return model_from_json(doc)
        return circuit_from_json(doc)

    @staticmethod
    def as_circuit(subject):
        if isinstance(subject, Circuit):
            return subject
        if isinstance(subject, VertexModel):
            return compile_vertex_model(subject)
        return compile_edge_model(subject)

    @staticmethod
    def as_model(subject):
        if isinstance(subject, (VertexModel, EdgeModel)):
            return subject
        try:
            return circuit_to_vertex_model(subject)
        except (NotBrickwork, InvalidDimensions):
            # wire 1개짜리 회로는 tilted 격자가 없다
            pass
        try:
            return circuit_to_edge_model(subject)
        except NotEdgeShaped:
            raise MethodInapplicable("brickwork 형태도 edge 형태도 아닌 회로는 스핀 모형으로 바꿀 수 없습니다")

    @staticmethod
    def shape_of(subject):
        if isinstance(subject, Circuit):
            return subject.wires, subject.depth
        return subject.lattice.wires, subject.lattice.layers

    # 평가

    def evaluate(self, subject, method, left, right, eps=None, delta=None, seed=None, exact=False):
        """
        한 가지 방법으로 Z(L, R) = <L|C|R> 계산

        Args:
            subject (VertexModel | EdgeModel | Circuit): 평가 대상
            method (str): brute | dense | matchgate | pfaffian | hadamard
            left, right: 경계

        Returns:
            dict: {value, method, wires, layers, runtime_ms, ...}
        """
        estimator = self.config.get("estimator", {})
        start_time = time.time()
        extra = {}

        if method == "brute":
            value = brute_force_partition(self.as_model(subject), left, right, self.max_brute_spins)
        elif method == "dense":
            value = amplitude_dense(self.as_circuit(subject), left, right, self.max_dense_qubits)
        elif method == "matchgate":
            value = amplitude_matchgate(
                self.as_circuit(subject), left, right, tol=self.tolerances.get("family_match", 1e-10)
            )
        elif method == "pfaffian":
            if isinstance(subject, Circuit):
                value = simulate_xz_circuit(subject, left, right)
            else:
                value = partition_planar_ising(subject, left, right)
        elif method == "hadamard":
            eps = eps if eps is not None else estimator.get("eps", 0.1)
            delta = delta if delta is not None else estimator.get("delta", 0.05)
            seed = seed if seed is not None else estimator.get("seed", 0)
            estimate = estimate_amplitude(
                self.as_circuit(subject), left, right, eps, delta, seed, exact, self.max_dense_qubits
            )
            value = estimate.value
            extra = {"seed": seed, "samples": estimate.samples, "eps": eps, "delta": delta, "exact": exact}
        else:
            raise MethodInapplicable(f"알 수 없는 평가 방법: {method}")

        elapsed = time.time() - start_time
        wires, layers = self.shape_of(subject)
        result = {
            "value": complex_to_json(value),
            "method": method,
            "wires": wires,
            "layers": layers,
            "runtime_ms": round(elapsed * 1000, 3),
        }
        result.update(extra)
        logger.info(f"{method} 평가 완료: {value:.6g} ({format_time(elapsed)})")
        return result

    def crosscheck(self, subjects, methods, tol):
        """
        여러 방법의 값이 tol 안에서 일치하는지 확인

        Args:
            subjects (list): (이름, 대상, left, right) 목록
            methods (list): 비교할 방법
            tol (float): 상대 허용 오차 (|a - b| <= max(tol · max(|a|, |b|), 1e-12))

        Returns:
            tuple: (요약 dict, 행 목록)
        """
        rows = []
        for name, subject, left, right in subjects:
            values = {}
            for method in methods:
                values[method] = complex(*self.evaluate(subject, method, left, right)["value"])
            for a, b in combinations(methods, 2):
                abs_dev = abs(values[a] - values[b])
                scale = max(abs(values[a]), abs(values[b]))
                rel_dev = abs_dev / scale if scale > 0 else 0.0
                rows.append({
                    "instance": name,
                    "pair": f"{a},{b}",
                    "left": "".join(map(str, left)),
                    "right": "".join(map(str, right)),
                    f"value_{a}": complex_to_json(values[a]),
                    f"value_{b}": complex_to_json(values[b]),
                    "abs_deviation": float(abs_dev),
                    "rel_deviation": float(rel_dev),
                    "passed": bool(abs_dev <= max(tol * scale, ROUNDING_FLOOR)),
                })

        report = {
            "methods": list(methods),
            "tol": tol,
            "instances": len(subjects),
            "comparisons": len(rows),
            "max_rel_deviation": max((r["rel_deviation"] for r in rows), default=0.0),
            "passed": all(r["passed"] for r in rows),
        }
        if self.app_logger:
            self.app_logger.log_crosscheck(report)
        return report, rows

    def random_subjects(self, family, samples, seed):
        """crosscheck --samples 용 시드 고정 무작위 인스턴스"""
        subjects = []
        for index in range(samples):
            rng = np.random.default_rng(seed + index)
            if family == "vertex":
                subject = sampling.random_vertex_model(rng, TILTED_SQUARE, 4, 3)
            elif family == "edge":
                subject = sampling.random_edge_model(rng, 3, 3, symmetric=True, real=bool(index % 2))
            elif family == "matchgate":
                subject = sampling.random_matchgate_circuit(rng, 6, 6)
            else:
                subject = sampling.random_xz_circuit(rng, 4, 6)
            wires = self.shape_of(subject)[0]
            left = sampling.random_boundary(rng, wires).values
            right = sampling.random_boundary(rng, wires).values
            subjects.append((f"{family}-{seed + index}", subject, left, right))
        return subjects

    # 검사

    def check(self, subject, free_fermion=False):
        """게이트(텐서)별 유니터리 / 자유 페르미온 조건 판정"""
        circuit = self.as_circuit(subject)
        results = []
        for index, gate in enumerate(circuit.gates):
            entry = {"index": index, "wires": list(gate.wires)}
            if free_fermion:
                try:
                    entry["value"] = free_fermion_condition(
                        gate.matrix,
                        tol=self.tolerances.get("family_match", 1e-10),
                        pattern_tol=self.tolerances.get("zero_pattern", 1e-12),
                    )
                except NotEightVertexForm as e:
                    entry["value"] = False
                    entry["reason"] = str(e)
            else:
                entry["value"] = is_unitary(gate, self.tolerances.get("unitary", 1e-10))
            results.append(entry)
        return {
            "check": "free_fermion" if free_fermion else "unitary",
            "all": all(r["value"] for r in results),
            "results": results,
        }


def _boundaries(args, subject, doc_boundary):
    q = subject.q
    wires = VertexLab.shape_of(subject)[0]
    left, right = doc_boundary
    if args.left is not None:
        left = parse_bits(args.left, q)
    if args.right is not None:
        right = parse_bits(args.right, q)
    if left is None or right is None:
        logger.warning("경계가 지정되지 않아 모든 스핀 0을 사용합니다")
    left = tuple(left) if left is not None else (0,) * wires
    right = tuple(right) if right is not None else (0,) * wires
    return left, right


def _emit(doc):
    print(json.dumps(doc, ensure_ascii=False))


def build_parser():
    """명령행 인자 정의"""
    parser = argparse.ArgumentParser(description="vertexlab: 스핀 모형 분배함수 / 회로 진폭 워크벤치")
    parser.add_argument("--config", help="설정 파일 경로 (기본값: config/config.json)")
    parser.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"], help="로그 레벨")
    parser.add_argument("--log-dir", help="로그 디렉토리")
    parser.add_argument("--max-dense-qubits", type=int, help="dense 엔진 상한 (qubit 환산)")
    parser.add_argument("--max-brute-spins", type=int, help="완전 열거 상한 (내부 스핀 수)")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compile", help="스핀 모형 → 회로")
    p.add_argument("input", help="모형 JSON")

    p = sub.add_parser("decompile", help="회로 → 스핀 모형")
    p.add_argument("input", help="회로 JSON")
    p.add_argument("--kind", choices=["vertex", "edge"], required=True, help="출력 모형 종류")
    p.add_argument("--layers", type=int, help="최소 layer(열) 수")

    p = sub.add_parser("evaluate", help="Z(L, R) = <L|C|R> 계산")
    p.add_argument("input", help="모형 또는 회로 JSON")
    p.add_argument("--method", choices=METHODS, required=True, help="평가 방법")
    p.add_argument("--left", help="왼쪽 경계 (예: 0101)")
    p.add_argument("--right", help="오른쪽 경계 (예: 0101)")
    p.add_argument("--eps", type=float, help="Hadamard 검정 정밀도")
    p.add_argument("--delta", type=float, help="Hadamard 검정 실패 확률")
    p.add_argument("--seed", type=int, help="난수 시드")
    p.add_argument("--exact", action="store_true", help="Hadamard 검정 해석값 반환")

    p = sub.add_parser("check", help="게이트 조건 검사")
    p.add_argument("input", help="모형 또는 회로 JSON")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--free-fermion", action="store_true", help="자유 페르미온 조건")
    group.add_argument("--unitary", action="store_true", help="유니터리 조건")

    p = sub.add_parser("reduce", help="BQP 환원 인스턴스 생성")
    p.add_argument("target", choices=["six-vertex", "edge"], help="환원 종류")
    p.add_argument("--spec", help="교환 펄스 명세 JSON (six-vertex)")
    p.add_argument("--circuit", help="{I1, H, P, I2, CP} 회로 JSON (edge)")
    p.add_argument("--tol", type=float, help="검증 허용 오차")
    p.add_argument("--no-verify", action="store_true", help="검증 생략")
    p.add_argument("--report", help="검증 결과를 저장할 경로 (.csv 또는 .json)")

    p = sub.add_parser("crosscheck", help="평가 방법 간 교차 검증")
    p.add_argument("input", nargs="?", help="모형 또는 회로 JSON (없으면 --samples 사용)")
    p.add_argument("--methods", required=True, help="쉼표로 구분한 방법 목록 (예: brute,dense)")
    p.add_argument("--tol", type=float, help="상대 허용 오차")
    p.add_argument("--samples", type=int, help="무작위 인스턴스 수")
    p.add_argument("--family", choices=FAMILIES, default="vertex", help="무작위 인스턴스 종류")
    p.add_argument("--seed", type=int, default=0, help="무작위 인스턴스 시작 시드")
    p.add_argument("--left", help="왼쪽 경계")
    p.add_argument("--right", help="오른쪽 경계")
    p.add_argument("--report", help="인스턴스별 표를 저장할 경로 (.csv 또는 .json)")

    return parser


def _configure(args):
    config = load_config(args.config)
    if args.max_dense_qubits is not None:
        config["caps"]["max_dense_qubits"] = args.max_dense_qubits
    if args.max_brute_spins is not None:
        config["caps"]["max_brute_spins"] = args.max_brute_spins
    if args.log_level:
        config["logging"]["level"] = args.log_level
    if args.log_dir:
        config["logging"]["directory"] = args.log_dir
    return config


def _export_rows(rows, path):
    """행 목록을 확장자(.json / 그 외 csv)에 맞춰 저장"""
    fmt = "json" if path.endswith(".json") else "csv"
    exporter = ReportExporter(os.path.dirname(os.path.abspath(path)))
    return exporter.export_report(rows, fmt, output_file=path)


def _command_compile(lab, args):
    model, (left, right) = lab.load(args.input)
    if not isinstance(model, (VertexModel, EdgeModel)):
        raise NotBrickwork("compile 입력은 모형 문서여야 합니다")
    _emit(circuit_to_json(lab.as_circuit(model), left, right))
    return 0


def _command_decompile(lab, args):
    circuit, (left, right) = lab.load(args.input)
    if not isinstance(circuit, Circuit):
        raise NotBrickwork("decompile 입력은 회로 문서여야 합니다")
    if args.kind == "vertex":
        model = circuit_to_vertex_model(circuit, args.layers)
    else:
        model = circuit_to_edge_model(circuit, args.layers)
    _emit(model_to_json(model, left, right))
    return 0


def _command_evaluate(lab, args):
    subject, doc_boundary = lab.load(args.input)
    left, right = _boundaries(args, subject, doc_boundary)
    result = lab.evaluate(subject, args.method, left, right, args.eps, args.delta, args.seed, args.exact)
    if lab.app_logger:
        lab.app_logger.log_evaluation(dict(result, input=args.input))
    _emit(result)
    return 0


def _command_check(lab, args):
    subject, _ = lab.load(args.input)
    _emit(lab.check(subject, free_fermion=args.free_fermion))
    return 0


def _command_reduce(lab, args):
    tol = args.tol if args.tol is not None else lab.config["crosscheck"].get("tol", 1e-9)
    if args.target == "six-vertex":
        if not args.spec:
            raise NotBrickwork("reduce six-vertex 에는 --spec 이 필요합니다")
        instance = six_vertex_instance(exchange_spec_from_json(read_json(args.spec)))
    else:
        if not args.circuit:
            raise NotEdgeShaped("reduce edge 에는 --circuit 이 필요합니다")
        circuit, _ = circuit_from_json(read_json(args.circuit))
        instance = em_instance(circuit)

    output = {"kind": instance.kind, "model": model_to_json(instance.model, instance.left, instance.right)}
    if not args.no_verify:
        try:
            output["report"] = verify_reduction(instance, tol=tol, max_spins=lab.max_brute_spins,
                                                max_qubits=lab.max_dense_qubits)
        except WorkbenchError as e:
            logger.warning(f"상한을 넘어 검증을 생략합니다: {e}")
            output["report"] = None
    if args.report and output.get("report"):
        output["report_file"] = _export_rows([output["report"]], args.report)
    _emit(output)
    return 0 if not output.get("report") or output["report"]["passed"] else 1


def _command_crosscheck(lab, args):
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    unknown = [m for m in methods if m not in METHODS]
    if len(methods) < 2 or unknown:
        raise MethodInapplicable(f"비교할 방법이 잘못되었습니다: {args.methods}")
    tol = args.tol if args.tol is not None else lab.config["crosscheck"].get("tol", 1e-9)

    if args.input:
        subject, doc_boundary = lab.load(args.input)
        left, right = _boundaries(args, subject, doc_boundary)
        subjects = [(args.input, subject, left, right)]
    else:
        samples = args.samples or lab.config["crosscheck"].get("samples", 20)
        subjects = lab.random_subjects(args.family, samples, args.seed)

    report, rows = lab.crosscheck(subjects, methods, tol)
    if args.report:
        report["report_file"] = _export_rows(rows, args.report)
    _emit(dict(report, rows=rows))
    return 0 if report["passed"] else 1


COMMANDS = {
    "compile": _command_compile,
    "decompile": _command_decompile,
    "evaluate": _command_evaluate,
    "check": _command_check,
    "reduce": _command_reduce,
    "crosscheck": _command_crosscheck,
}


def run(argv=None):
    """
    CLI 실행

    Args:
        argv (list, optional): 명령행 인자

    Returns:
        int: exit code (0 성공, 1 교차 검증 불일치, 2 입력 오류, 3 방법 적용 불가, 4 상한 초과)
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2

    config = _configure(args)
    app_logger = Logger(config["logging"].get("level", "INFO"), config["logging"].get("directory", "logs"))
    lab = VertexLab(config, app_logger)

    try:
        return COMMANDS[args.command](lab, args)
    except WorkbenchError as e:
        logger.error(f"{type(e).__name__}: {e}")
        print(json.dumps({"error": type(e).__name__, "message": str(e)}, ensure_ascii=False), file=sys.stderr)
        return e.exit_code
    except ValueError as e:
        logger.error(f"입력 오류: {e}")
        print(json.dumps({"error": "InvalidInput", "message": str(e)}, ensure_ascii=False), file=sys.stderr)
        return 2


def main():
    """메인 함수"""
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
