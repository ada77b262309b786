"""
공통 예외 계층

모든 엔진은 여기 정의된 예외만 던지고, CLI 계층(main.py)이 exit code로 변환한다.
"""


class WorkbenchError(Exception):
    """워크벤치 예외의 기본 클래스"""

    exit_code = 2


# 입력/스키마 오류 (exit 2)
class InvalidInput(WorkbenchError):
    exit_code = 2


class InvalidDimensions(InvalidInput):
    pass


class ShapeMismatch(InvalidInput):
    pass


class WireOutOfRange(InvalidInput):
    pass


class NotBrickwork(InvalidInput):
    pass


class NotEdgeShaped(InvalidInput):
    pass


class NotAntisymmetric(InvalidInput):
    pass


class OddDimension(InvalidInput):
    pass


class SchemaError(InvalidInput):
    pass


# 방법 적용 불가 (exit 3)
class MethodInapplicable(WorkbenchError):
    exit_code = 3


class NotEightVertexForm(MethodInapplicable):
    pass


class NotMatchgate(MethodInapplicable):
    pass


class NonInvertibleGate(MethodInapplicable):
    pass


class NotUnitary(MethodInapplicable):
    pass


class NotXZCircuit(MethodInapplicable):
    pass


class NotPlanarIsing(MethodInapplicable):
    """자기장 없는 대칭 q=2 표가 아닌 edge 모형"""
    pass


class NumericalBreakdown(MethodInapplicable):
    pass


class UnsupportedGate(MethodInapplicable):
    pass


# 자원 한도 초과 (exit 4)
class ResourceCapExceeded(WorkbenchError):
    exit_code = 4


class TooLarge(ResourceCapExceeded):
    pass
