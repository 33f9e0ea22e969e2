"""
命令行入口：把各模块串成可复现的验证运行

退出码 0 表示全部结论通过，1 表示验证失败，2 表示用法或输入错误。
"""

import argparse
import json
import logging
import sys
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import Any

from .config import get_config, set_config
from .enumeration import survey
from .errors import InductionError, NotConvex, PreconditionError, WorkbenchError
from .field_bk import classical_bk
from .groups import GroupSpec, make_group, subgroup_closure
from .loaders import (
    corpus_from_data,
    family_from_data,
    load_json,
    order_from_data,
    parse_coords,
    qo_from_data,
    valuation_from_data,
)
from .orders import check_order, omega, omega_preimage, order_qo, same_order
from .qo_core import QO, AxiomId, as_jsonable, check_axiom, classify, evaluate_axiom
from .quotient_lift import (
    FromFamily,
    FromQO,
    QOClass,
    RoundTripReport,
    bk_roundtrip,
    bk_verify_all,
    check_equiv_theorem,
    coarsening_decompose,
    induce_family,
    induce_on_quotient,
    lift_family,
)
from .reports import RunReport, Verdict
from .valuations import Valuation, chain_valuations, check_v_compatible, valuational_qo

logger = logging.getLogger(__name__)

Handler = Callable[[argparse.Namespace, RunReport], None]


def _parse_axioms(text: str) -> list[AxiomId]:
    return [AxiomId.parse(part) for part in text.split(",") if part.strip()]


def _load(report: RunReport, path: str) -> Any:
    data = load_json(path)
    report.add_input(path)
    return data


def _group(args: argparse.Namespace) -> GroupSpec:
    return make_group(args.group)


def _qo(args: argparse.Namespace, report: RunReport, group: GroupSpec) -> QO:
    return qo_from_data(group, _load(report, args.qo))


def _valuation(report: RunReport, group: GroupSpec, path: str) -> Valuation:
    return valuation_from_data(group, _load(report, path))


def _type_detail(qo: QO) -> dict[str, Any]:
    kind = classify(qo)
    return {
        "classes": as_jsonable(qo)["classes"],
        "all_v": kind.all_v,
        "all_o": kind.all_o,
        "order": kind.is_order,
        "valuational": kind.is_valuational,
    }


# ---------------------------------------------------------------------------
# 子命令


def _cmd_check(args: argparse.Namespace, report: RunReport) -> None:
    group = _group(args)
    qo = _qo(args, report, group)
    for axiom in _parse_axioms(args.axioms):
        report.add(Verdict.from_check(check_axiom(qo, axiom)))
    if args.valuation:
        v = _valuation(report, group, args.valuation)
        report.add(Verdict.from_check(check_v_compatible(v, qo)))
    report.add(Verdict("type", True, detail=_type_detail(qo)))


def _cmd_enumerate(args: argparse.Namespace, report: RunReport) -> None:
    group = _group(args)
    axioms = _parse_axioms(args.axioms)
    result = survey(group, axioms, cap=args.cap)
    row = result.row.to_dict()
    if args.witnesses:
        Path(args.witnesses).write_text(
            json.dumps(result.witnesses, indent=2, sort_keys=True, ensure_ascii=False) + "\n",
            encoding="utf-8",
        )
        row["witnesses_path"] = args.witnesses
    report.add(Verdict("census", True, instances=result.row.instances, detail=row))

    # 每个子群链赋值的赋值型拟序都应通过 C 公理
    failures = []
    valuations = chain_valuations(group)
    for v in valuations:
        verdict = evaluate_axiom(valuational_qo(v), AxiomId.C_AXIOMS)
        if not verdict.passed:
            failures.append(v.table())
    report.add(
        Verdict(
            "valuational ⊆ C",
            not failures,
            witness=failures[0] if failures else None,
            instances=len(valuations),
        )
    )


def _cmd_induce(args: argparse.Namespace, report: RunReport) -> None:
    group = _group(args)
    qo = _qo(args, report, group)
    if args.subgroup:
        H = subgroup_closure(group, [parse_coords(g) for g in args.subgroup])
        try:
            induced = induce_on_quotient(qo, H)
        except (PreconditionError, NotConvex) as e:
            report.add(Verdict(f"induce on G/{H}", False, witness=str(e.witness), detail={"error": type(e).__name__}))
            return
        report.add(Verdict(f"induce on G/{H}", True, detail=_type_detail(induced)))
        return

    v = _valuation(report, group, args.valuation)
    if args.theorem:
        equiv = check_equiv_theorem(qo, v, QOClass(args.theorem))
        report.add(Verdict("four conditions agree", equiv.agree, detail=equiv.to_dict()))
        report.add(Verdict("moreover clause", equiv.moreover is not False, detail={"moreover": equiv.moreover}))
        return
    try:
        fam = induce_family(qo, v)
    except (PreconditionError, InductionError) as e:
        report.add(Verdict("induce family", False, witness=str(e.witness), detail={"error": str(e)}))
        return
    report.add(Verdict("induce family", True, detail={g: _type_detail(m) for g, m in fam.members.items()}))


def _cmd_lift(args: argparse.Namespace, report: RunReport) -> None:
    group = _group(args)
    fam = family_from_data(group, _load(report, args.family))
    lifted = lift_family(fam)
    report.add(Verdict("lift", True, detail=_type_detail(lifted)))
    report.add(Verdict.from_check(check_v_compatible(fam.valuation, lifted)))
    for axiom in _parse_axioms(args.axioms):
        report.add(Verdict.from_check(check_axiom(lifted, axiom)))


def _roundtrip_verdict(rt: RoundTripReport) -> Verdict:
    data = rt.to_dict()
    return Verdict(rt.direction, rt.passed, witness=data["witness"], skipped=rt.skipped, detail=data)


def _cmd_bk_verify(args: argparse.Namespace, report: RunReport) -> None:
    group = _group(args)
    v = _valuation(report, group, args.valuation)
    if args.all_families:
        bk = bk_verify_all(v, cap=args.cap)
        report.add(
            Verdict(
                "family count = oracle count",
                bk.product_matches,
                detail={
                    "per_level_counts": bk.per_level_counts,
                    "family_count": bk.family_count,
                    "oracle_count": bk.oracle_count,
                },
            )
        )
        for rt in bk.roundtrips:
            report.add(_roundtrip_verdict(rt))
        return
    if args.family:
        fam = family_from_data(group, _load(report, args.family))
        rt = bk_roundtrip(v, FromFamily(fam))
    else:
        rt = bk_roundtrip(v, FromQO(_qo(args, report, group)))
    report.add(_roundtrip_verdict(rt))


def _cmd_coarsen(args: argparse.Namespace, report: RunReport) -> None:
    group = _group(args)
    v = _valuation(report, group, args.coarse)
    w = _valuation(report, group, args.fine)
    result = coarsening_decompose(v, w)
    components = {g: c.table() for g, c in result.components.items()}
    report.add(Verdict.from_check(result.reconstruction, components=components))


def _cmd_omega(args: argparse.Namespace, report: RunReport) -> None:
    group = _group(args)
    if args.order:
        order = order_from_data(group, _load(report, args.order))
        preimage = omega_preimage(order)
        report.add(Verdict.from_check(check_axiom(preimage, AxiomId.C_AXIOMS)))
        back = omega(preimage)
        report.add(Verdict("Ω(preimage(≤)) = ≤", same_order(back, order), detail={"order": order.describe()}))
        return
    qo = _qo(args, report, group)
    order = omega(qo)
    report.add(Verdict.from_check(check_order(order), order=order.describe()))
    report.add(Verdict("order q.o.", True, detail=as_jsonable(order_qo(order))))


def _cmd_field_demo(args: argparse.Namespace, report: RunReport) -> None:
    corpus = corpus_from_data(_load(report, args.corpus)) if args.corpus else None
    seed = get_config().seed
    report.seed = None if corpus is not None else seed
    result = classical_bk(corpus=corpus, seed=seed)
    data = result.to_dict()
    for tag, tag_data in zip(result.tags, data["tags"], strict=True):
        report.add(Verdict(f"η={tag.eta:+d}", tag.passed, detail=tag_data))
    report.add(
        Verdict(
            "compatible field orders = 2",
            result.passed,
            detail={k: data[k] for k in ("count", "distinct", "exhaustive_count", "corpus", "caveats")},
        )
    )


_COMMANDS: dict[str, Handler] = {
    "check": _cmd_check,
    "enumerate": _cmd_enumerate,
    "induce": _cmd_induce,
    "lift": _cmd_lift,
    "bk-verify": _cmd_bk_verify,
    "coarsen": _cmd_coarsen,
    "omega": _cmd_omega,
    "field-demo": _cmd_field_demo,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="PATH", help="把报告写成 JSON")
    common.add_argument("--seed", type=int, help="随机语料的种子（只影响 field-demo）")
    common.add_argument("--cap", type=int, help="枚举的载体规模上限")
    common.add_argument("--verbose", action="store_true", help="输出 DEBUG 日志")

    parser = argparse.ArgumentParser(prog="qo-workbench", description="拟序群与赋值群的验证工作台")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("check", parents=[common], help="检查拟序的公理")
    p.add_argument("--group", required=True)
    p.add_argument("--qo", required=True)
    p.add_argument("--axioms", default="TOTAL,Q1,Q2,C")
    p.add_argument("--valuation", help="另外检查与该赋值的相容性")

    p = sub.add_parser("enumerate", parents=[common], help="穷举小群上的全拟序并普查")
    p.add_argument("--group", required=True)
    p.add_argument("--axioms", default="C")
    p.add_argument("--witnesses", metavar="PATH", help="把反例存档写到该文件")

    p = sub.add_parser("induce", parents=[common], help="在商群上诱导拟序")
    p.add_argument("--group", required=True)
    p.add_argument("--qo", required=True)
    target = p.add_mutually_exclusive_group(required=True)
    target.add_argument("--subgroup", action="append", metavar="GEN", help="子群生成元，可重复")
    target.add_argument("--valuation")
    p.add_argument("--theorem", choices=[c.value for c in QOClass], help="检查四条件等价定理")

    p = sub.add_parser("lift", parents=[common], help="提升拟序族")
    p.add_argument("--group", required=True)
    p.add_argument("--family", required=True)
    p.add_argument("--axioms", default="C")

    p = sub.add_parser("bk-verify", parents=[common], help="Baer-Krull 往返验证")
    p.add_argument("--group", required=True)
    p.add_argument("--valuation", required=True)
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--all-families", action="store_true")
    source.add_argument("--family")
    source.add_argument("--qo")

    p = sub.add_parser("coarsen", parents=[common], help="粗化分解")
    p.add_argument("--group", required=True)
    p.add_argument("--coarse", required=True, help="粗赋值 v")
    p.add_argument("--fine", required=True, help="细赋值 w")

    p = sub.add_parser("omega", parents=[common], help="Ω 对应与其原像")
    p.add_argument("--group", required=True)
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--qo")
    source.add_argument("--order")

    p = sub.add_parser("field-demo", parents=[common], help="ℚ(t) 上的经典 Baer-Krull")
    p.add_argument("--corpus", help="有理函数字面量列表（JSON）")

    return parser


def run(argv: Sequence[str]) -> RunReport:
    """执行一条命令并返回报告；输入错误以异常形式抛出"""
    args = build_parser().parse_args(list(argv))
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    previous = get_config()
    set_config(previous.with_overrides(seed=args.seed, enumeration_cap=args.cap))
    try:
        report = RunReport(command=list(argv))
        _COMMANDS[args.cmd](args, report)
    finally:
        set_config(previous)
    if args.json:
        report.write(args.json)
    return report


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        report = run(argv)
    except (WorkbenchError, ValueError, KeyError, OSError) as e:
        logger.error(f"输入错误: {e}")
        print(f"error: {e}", file=sys.stderr)
        return 2
    print(report.summary())
    return 0 if report.passed else 1


if __name__ == "__main__":
    raise SystemExit(main())
