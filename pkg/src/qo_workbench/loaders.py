"""
输入文件的读取：拟序、赋值、族、序与有理函数语料

坐标键写作 "(1, -2)" 或单个整数 "3"。
"""

import json
import re
from collections.abc import Mapping, Sequence
from pathlib import Path
from typing import Any

from .errors import SpecMismatchError, ValuationError
from .field_bk import RatFunc, parse_ratfunc
from .groups import Carrier, GroupElement, GroupSpec
from .orders import OrderSpec, PositiveCone, lex_order, omega_preimage, order_from_cone, order_qo
from .qo_core import QO, qo_from_classes, qo_from_matrix
from .quotient_lift import QOFamily, level_quotients, lift_family
from .valuations import (
    Valuation,
    coordinate_valuation,
    padic_valuation,
    trivial_valuation,
    valuation_from_table,
    valuational_qo,
)

_INT_RE = re.compile(r"-?\d+")


def load_json(path: str | Path) -> Any:
    with open(path, encoding="utf-8") as f:
        return json.load(f)


def parse_coords(value: str | int | Sequence[int]) -> GroupElement:
    if isinstance(value, int):
        return (value,)
    if isinstance(value, str):
        numbers = _INT_RE.findall(value)
        if not numbers:
            raise SpecMismatchError(f"无法解析坐标 {value!r}")
        return tuple(int(x) for x in numbers)
    return tuple(int(x) for x in value)


def qo_from_data(group: GroupSpec | Carrier, data: Mapping[str, Any]) -> QO:
    """
    {"classes": [[坐标, ...], ...]}（由低到高）、{"matrix": [[0/1, ...], ...]}，
    或带 kind 的描述：matrix、trivial、lex、omega-preimage、valuational、lift

    valuational 与 lift 需要完整的群描述，在商载体上不可用。
    """
    carrier = group.carrier if isinstance(group, GroupSpec) else group
    if "classes" in data:
        return qo_from_classes(carrier, [[parse_coords(g) for g in block] for block in data["classes"]])
    kind = data.get("kind")
    if "matrix" in data or kind == "matrix":
        return qo_from_matrix(carrier, data["matrix"] if "matrix" in data else data["rows"])
    if kind == "trivial":
        return valuational_qo(trivial_valuation(carrier))
    if kind == "lex":
        return order_qo(lex_order(group, data["signs"]))
    if kind == "omega-preimage":
        return omega_preimage(order_from_data(group, data["order"]))
    if kind in ("valuational", "lift"):
        if not isinstance(group, GroupSpec):
            raise SpecMismatchError(f"{kind} 拟序需要群描述，收到载体 {carrier}")
        if kind == "valuational":
            return valuational_qo(valuation_from_data(group, data["valuation"]))
        fam = family_from_data(group, {"valuation": data["valuation"], "members": data["family"]})
        return lift_family(fam)
    raise SpecMismatchError(f"无法识别的拟序描述: {sorted(data)}")


def valuation_from_data(group: GroupSpec, data: Mapping[str, Any]) -> Valuation:
    """标签表，或简写 {"kind": "p-adic", "p": 2} / {"kind": "trivial"} / {"kind": "coordinate"}"""
    kind = data.get("kind")
    if kind == "p-adic":
        return padic_valuation(group, int(data["p"]))
    if kind == "trivial":
        return trivial_valuation(group)
    if kind == "coordinate":
        return coordinate_valuation(group)
    if kind is not None:
        raise ValuationError(f"未知的赋值类型 {kind!r}")
    table = {group.element(parse_coords(k)): str(label) for k, label in data["table"].items()}
    return valuation_from_table(group, [str(x) for x in data["values"]], table)


def order_from_data(group: GroupSpec | Carrier, data: Mapping[str, Any]) -> OrderSpec:
    """{"kind": "lex", "signs": [...]} 或 {"kind": "cone", "elements": [...]}"""
    carrier = group.carrier if isinstance(group, GroupSpec) else group
    kind = data.get("kind")
    if kind == "lex":
        return lex_order(group, data["signs"])
    if kind == "cone":
        members = frozenset(carrier.index_of(parse_coords(g)) for g in data["elements"])
        return order_from_cone(PositiveCone(carrier, members))
    raise SpecMismatchError(f"未知的序类型 {kind!r}")


def family_from_data(group: GroupSpec, data: Mapping[str, Any]) -> QOFamily:
    """{"valuation": ..., "members": {"γ": 拟序描述, ...}}，成员按商载体的代表元书写"""
    v = valuation_from_data(group, data["valuation"])
    views = level_quotients(v)
    members = {}
    for gamma, spec in data["members"].items():
        if gamma not in views:
            raise ValuationError(f"族成员的标签 {gamma!r} 不在值集 {v.values} 中")
        members[gamma] = qo_from_data(views[gamma].carrier, spec)
    return QOFamily(v, members, views)


def corpus_from_data(data: Sequence[str]) -> list[RatFunc]:
    return [parse_ratfunc(text) for text in data]
