from typing import Any


class WorkbenchError(Exception):
    """工作台所有异常的基类"""

    def __init__(self, message: str, witness: Any = None) -> None:
        super().__init__(message)
        self.witness = witness


class GroupSpecError(WorkbenchError):
    """群描述串无法解析或参数非法"""


class SpecMismatchError(WorkbenchError):
    """元素与群描述不匹配"""


class SubgroupError(WorkbenchError):
    """子群不封闭，或窗口群上给出了非坐标生成元"""


class QuasiOrderError(WorkbenchError):
    """拟序构造失败"""


class NotReflexive(QuasiOrderError):
    pass


class NotTransitive(QuasiOrderError):
    pass


class NotTotal(QuasiOrderError):
    pass


class ValuationError(WorkbenchError):
    """赋值表非法或标签未知"""


class NotValuational(ValuationError):
    """拟序不是由赋值诱导的"""


class InductionError(WorkbenchError):
    """商群上的诱导拟序不存在"""


class NotConvex(InductionError):
    pass


class InducedNotTransitive(InductionError, NotTransitive):
    pass


class ZeroClassFat(InductionError):
    pass


class ConeError(WorkbenchError):
    """正锥公理不成立"""


class PreconditionError(WorkbenchError):
    """操作的前置条件不满足"""


class TheoremViolation(WorkbenchError):
    """已证明的定理在计算中失败，说明实现有缺陷"""


class UndecidableComparison(WorkbenchError):
    """窗口内的正锥无法判定两个元素的大小"""


class RationalFunctionError(WorkbenchError):
    """有理函数运算错误"""


class DivisionByZero(RationalFunctionError, ZeroDivisionError):
    pass


class ResidueError(RationalFunctionError):
    pass


class NotAHomomorphism(WorkbenchError):
    """方向表无法延拓为群同态 ℤ→{±1}"""


class EnumerationCapExceeded(WorkbenchError):
    """载体规模超过枚举上限"""
