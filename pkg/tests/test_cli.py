import hashlib
import json
from pathlib import Path

import pytest

from qo_workbench.cli import build_parser, main, run
from qo_workbench.config import get_config

PADIC_2 = {"kind": "p-adic", "p": 2}


@pytest.fixture
def write_json(tmp_path):
    """把数据写成临时 JSON 文件并返回路径"""

    def write(name, data):
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return str(path)

    return write


@pytest.mark.unit
class TestExitCodes:
    """退出码测试类"""

    def test_pass(self, write_json, capsys):
        """测试全部通过时返回 0"""
        qo = write_json("qo.json", {"classes": [[0], [1]]})
        assert main(["check", "--group", "Z/2", "--qo", qo]) == 0
        out = capsys.readouterr().out
        assert "[PASS] Q2: x≾y≁z⇒x+z≾y+z" in out
        assert out.strip().endswith("overall: PASS")

    def test_verification_failure(self, write_json, capsys):
        """测试验证失败时返回 1 并打印反例"""
        qo = write_json("qo.json", {"classes": [[1], [0]]})
        assert main(["check", "--group", "Z/2", "--qo", qo]) == 1
        out = capsys.readouterr().out
        assert "[FAIL] Q2: x≾y≁z⇒x+z≾y+z  witness=[[1], [0], [1]]" in out
        assert "[PASS] TOTAL: total" in out
        assert out.strip().endswith("overall: FAIL")

    def test_missing_file(self, tmp_path, capsys):
        """测试输入文件不存在"""
        assert main(["check", "--group", "Z/2", "--qo", str(tmp_path / "none.json")]) == 2
        assert capsys.readouterr().err.startswith("error:")

    def test_bad_group(self, write_json):
        """测试非法的群描述串"""
        qo = write_json("qo.json", {"classes": [[0], [1]]})
        assert main(["check", "--group", "Z/1", "--qo", qo]) == 2

    def test_malformed_json(self, tmp_path):
        """测试无法解析的 JSON"""
        path = tmp_path / "qo.json"
        path.write_text("{not json", encoding="utf-8")
        assert main(["check", "--group", "Z/2", "--qo", str(path)]) == 2

    def test_not_a_quasi_order(self, write_json):
        """测试输入的矩阵不是拟序"""
        qo = write_json("qo.json", {"matrix": [[1, 0], [0, 1]]})
        assert main(["check", "--group", "Z/2", "--qo", qo]) == 2

    def test_usage_error(self):
        """测试缺少必需参数"""
        with pytest.raises(SystemExit) as excinfo:
            main(["check"])
        assert excinfo.value.code == 2

    def test_enumeration_cap(self):
        """测试超过枚举上限属于输入错误"""
        assert main(["enumerate", "--group", "Z/3", "--cap", "2"]) == 2


@pytest.mark.unit
class TestReport:
    """JSON 报告测试类"""

    def test_deterministic_json(self, write_json, tmp_path):
        """测试同一输入两次运行的报告逐字节相同"""
        qo = write_json("qo.json", {"classes": [[0], [2], [1, 3]]})
        v = write_json("v.json", PADIC_2)
        target = tmp_path / "report.json"
        outputs = []
        for _ in range(2):
            main(["check", "--group", "Z/4", "--qo", qo, "--valuation", v, "--json", str(target)])
            outputs.append(target.read_bytes())
        assert outputs[0] == outputs[1]
        assert json.loads(outputs[0])["passed"] is True

    def test_report_contents(self, write_json, tmp_path):
        """测试报告记录命令、输入摘要与结论"""
        qo = write_json("qo.json", {"classes": [[0], [1]]})
        target = tmp_path / "report.json"
        argv = ["check", "--group", "Z/2", "--qo", qo, "--axioms", "Q1,Q2", "--json", str(target)]
        main(argv)
        data = json.loads(target.read_text(encoding="utf-8"))
        assert data["command"] == argv
        assert data["inputs"] == {qo: hashlib.sha256(Path(qo).read_bytes()).hexdigest()}
        assert [v["name"] for v in data["verdicts"]] == ["Q1: cl(0)={0}", "Q2: x≾y≁z⇒x+z≾y+z", "type"]
        assert data["passed"] is True

    def test_config_restored(self):
        """测试命令行覆盖项只在本次运行内有效"""
        run(["enumerate", "--group", "Z/2", "--cap", "3"])
        assert get_config().enumeration_cap == 8

    def test_parser_lists_subcommands(self):
        """测试子命令齐全"""
        parser = build_parser()
        for cmd in ("check", "enumerate", "induce", "lift", "bk-verify", "coarsen", "omega", "field-demo"):
            assert parser.parse_args(_minimal_args(cmd)).cmd == cmd


def _minimal_args(cmd):
    required = {
        "check": ["--group", "Z/2", "--qo", "q.json"],
        "enumerate": ["--group", "Z/2"],
        "induce": ["--group", "Z/2", "--qo", "q.json", "--subgroup", "1"],
        "lift": ["--group", "Z/2", "--family", "f.json"],
        "bk-verify": ["--group", "Z/2", "--valuation", "v.json", "--all-families"],
        "coarsen": ["--group", "Z/2", "--coarse", "v.json", "--fine", "w.json"],
        "omega": ["--group", "Z[B=2]", "--order", "o.json"],
        "field-demo": [],
    }
    return [cmd, *required[cmd]]


@pytest.mark.unit
class TestCommands:
    """各子命令测试类"""

    def test_enumerate(self, tmp_path):
        """测试普查并存档反例"""
        witnesses = tmp_path / "witnesses.json"
        report = run(["enumerate", "--group", "Z/3", "--witnesses", str(witnesses)])
        census = report.verdicts[0]
        assert census.detail["candidates"] == 13
        assert census.detail["passes"] == 1
        assert census.detail["witnesses_path"] == str(witnesses)
        assert json.loads(witnesses.read_text(encoding="utf-8"))
        assert report.verdicts[1].name == "valuational ⊆ C"
        assert report.passed

    def test_induce_subgroup(self, write_json):
        """测试商群上的诱导与非凸失败"""
        good = write_json("good.json", {"classes": [[0], [2], [1, 3]]})
        flat = write_json("flat.json", {"kind": "trivial"})
        assert main(["induce", "--group", "Z/4", "--qo", good, "--subgroup", "(2,)"]) == 0
        report = run(["induce", "--group", "Z/4", "--qo", flat, "--subgroup", "2"])
        assert not report.passed
        assert report.verdicts[0].witness == "((0,), (1,), (2,))"
        assert report.verdicts[0].detail == {"error": "NotConvex"}

    def test_induce_subgroup_without_star(self, write_json):
        """测试不满足 (*) 的拟序报告为失败的判定而不是内部错误"""
        qo = write_json("qo.json", {"classes": [[1], [0], [2], [3]]})
        assert main(["induce", "--group", "Z/4", "--qo", qo, "--subgroup", "2"]) == 1
        report = run(["induce", "--group", "Z/4", "--qo", qo, "--subgroup", "2"])
        assert not report.passed
        assert report.verdicts[0].detail == {"error": "PreconditionError"}
        assert report.verdicts[0].witness == "((0,), (2,), (3,))"

    def test_induce_family(self, write_json):
        """测试按赋值诱导拟序族"""
        qo = write_json("qo.json", {"classes": [[0], [2], [1, 3]]})
        v = write_json("v.json", PADIC_2)
        report = run(["induce", "--group", "Z/4", "--qo", qo, "--valuation", v])
        assert report.passed
        assert set(report.verdicts[0].detail) == {"0", "1"}

    def test_induce_theorem(self, write_json):
        """测试四条件同时失败时等价定理成立"""
        flat = write_json("flat.json", {"kind": "trivial"})
        v = write_json("v.json", PADIC_2)
        report = run(["induce", "--group", "Z/4", "--qo", flat, "--valuation", v, "--theorem", "cqo"])
        assert report.passed
        assert report.verdicts[0].detail["conditions"] == [False, False, False, False]

    def test_lift(self, write_json):
        """测试提升 Z/4 上的拟序族"""
        family = write_json(
            "family.json",
            {"valuation": PADIC_2, "members": {"0": {"classes": [[0], [1]]}, "1": {"classes": [[0], [2]]}}},
        )
        report = run(["lift", "--group", "Z/4", "--family", family])
        assert report.passed
        assert report.verdicts[0].detail["classes"] == [[[0]], [[2]], [[1], [3]]]

    def test_bk_verify_all_families(self, write_json):
        """测试 Z/4 与 2-进赋值上的全部往返"""
        v = write_json("v.json", PADIC_2)
        assert main(["bk-verify", "--group", "Z/4", "--valuation", v, "--all-families"]) == 0
        report = run(["bk-verify", "--group", "Z/4", "--valuation", v, "--all-families"])
        counts = report.verdicts[0].detail
        assert counts["family_count"] == counts["oracle_count"] == 1
        assert [r.name for r in report.verdicts[1:]] == ["family→qo→family", "qo→family→qo"]

    def test_bk_verify_single_qo(self, write_json):
        """测试单个拟序的往返"""
        qo = write_json("qo.json", {"classes": [[0], [2], [1, 3]]})
        v = write_json("v.json", PADIC_2)
        assert main(["bk-verify", "--group", "Z/4", "--valuation", v, "--qo", qo]) == 0

    def test_coarsen(self, write_json):
        """测试平凡赋值是 2-进赋值的粗化"""
        coarse = write_json("v.json", {"kind": "trivial"})
        fine = write_json("w.json", PADIC_2)
        report = run(["coarsen", "--group", "Z[B=8]", "--coarse", coarse, "--fine", fine])
        assert report.passed
        assert set(report.verdicts[0].detail["components"]) == {"0"}

    def test_coarsen_precondition(self, write_json):
        """测试不是粗化时为输入错误"""
        coarse = write_json("v.json", PADIC_2)
        fine = write_json("w.json", {"kind": "trivial"})
        assert main(["coarsen", "--group", "Z[B=8]", "--coarse", coarse, "--fine", fine]) == 2

    def test_omega_from_order(self, write_json):
        """测试 Ω 原像的往返"""
        order = write_json("order.json", {"kind": "lex", "signs": [-1]})
        report = run(["omega", "--group", "Z[B=5]", "--order", order])
        assert report.passed
        assert report.verdicts[-1].name == "Ω(preimage(≤)) = ≤"

    def test_omega_from_qo(self, write_json):
        """测试从 C-拟序取 Ω"""
        qo = write_json("qo.json", {"kind": "omega-preimage", "order": {"kind": "lex", "signs": [1, -1]}})
        report = run(["omega", "--group", "Z^2[B=2]", "--qo", qo])
        assert report.passed

    def test_field_demo_with_corpus(self, write_json):
        """测试给定语料的经典 Baer-Krull"""
        corpus = write_json("corpus.json", ["t", "1 + t", "(2 - t)/(t^2)", "-3t^3 + t^4"])
        report = run(["field-demo", "--corpus", corpus])
        assert report.passed
        assert report.seed is None
        assert [v.name for v in report.verdicts] == ["η=+1", "η=-1", "compatible field orders = 2"]

    def test_field_demo_seeded(self, workbench_config):
        """测试随机语料记录种子"""
        workbench_config(corpus_size=10)
        report = run(["field-demo", "--seed", "4"])
        assert report.passed
        assert report.seed == 4
        assert report.verdicts[-1].detail["corpus"] == {"seed": 4, "size": 10}
