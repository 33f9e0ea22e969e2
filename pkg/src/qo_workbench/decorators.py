import functools
import logging
from collections.abc import Callable
from typing import Any, ParamSpec

from .results import CheckResult

P = ParamSpec("P")

_MAX_WITNESS_CHARS = 80


def _abbreviate_witness(witness: Any) -> str:
    """截断过长的反例文本，日志里只保留前 80 个字符"""
    text = repr(witness)
    if len(text) > _MAX_WITNESS_CHARS:
        return text[:_MAX_WITNESS_CHARS] + "..."
    return text


def traced_check(
    func: Callable[P, CheckResult],
) -> Callable[P, CheckResult]:
    """
    检查函数装饰器
    记录检查的开始与结论，失败时以 warning 级别输出截断后的反例
    """
    logger = logging.getLogger(func.__module__)

    @functools.wraps(func)
    def wrapper(*args: P.args, **kwargs: P.kwargs) -> CheckResult:
        check_name = func.__name__
        logger.debug(f"开始检查 - {check_name}")

        result = func(*args, **kwargs)

        if result.passed:
            logger.debug(
                f"检查通过 - {check_name}: {result.name}, 实例数: {result.instances}, 跳过: {result.skipped}"
            )
        else:
            logger.warning(
                f"检查失败 - {check_name}: {result.name}, 反例: {_abbreviate_witness(result.witness)}"
            )
        return result

    return wrapper
