"""CLI 命令模块单元测试"""

import argparse
import json
from pathlib import Path
from unittest.mock import patch

import pytest

from gp_synth.cli import commands, strip_timings
from gp_synth.core.errors import DomainDefinitionError
from gp_synth.model import dump_domain, dump_instance


# ============ fixtures ============
@pytest.fixture
def toy_dir(tmp_path: Path, toy_ext, toy_instance) -> Path:
    """含 domain.gpd 与两个实例文件的问题目录"""
    directory = tmp_path / "toy"
    directory.mkdir()
    (directory / "domain.gpd").write_text(dump_domain(toy_ext.domain), encoding="utf-8")
    for size in (2, 3):
        instance = toy_instance(size)
        (directory / f"{instance.name}.gpi").write_text(dump_instance(instance), encoding="utf-8")
    return directory


@pytest.fixture
def paint_once(tmp_path: Path) -> Path:
    """只涂一格的错误程序"""
    path = tmp_path / "paint-once.prog"
    path.write_text("0. paint(i)\n1. end\n", encoding="utf-8")
    return path


class TestCreateParser:
    """参数解析器测试类"""

    def test_create_parser(self) -> None:
        """测试创建解析器"""
        parser = commands.create_parser()
        assert isinstance(parser, argparse.ArgumentParser)
        assert parser.prog == "gp-synth"

    def test_parse_version(self) -> None:
        """测试版本参数"""
        with pytest.raises(SystemExit) as exc_info:
            commands.create_parser().parse_args(["--version"])
        assert exc_info.value.code == 0

    def test_parse_synth(self) -> None:
        """测试 synth 参数"""
        args = commands.create_parser().parse_args(
            ["synth", "--domain", "sorting", "--lines", "9", "--eval", "f4", "--no-infinite-detection"]
        )
        assert args.command == "synth"
        assert args.lines == 9
        assert args.infinite_detection is False
        assert args.output is None

    def test_parse_validate_defaults(self) -> None:
        """测试 validate 默认使用验证集"""
        args = commands.create_parser().parse_args(["validate", "--domain", "find", "--corpus"])
        assert args.instance_set == "validation"
        assert args.infinite_detection == "off"

    def test_usage_error_exits_with_one(self, capsys) -> None:
        """测试用法错误以退出码 1 结束"""
        with pytest.raises(SystemExit) as exc_info:
            commands.main(["synth"])
        assert exc_info.value.code == 1
        assert "--domain" in capsys.readouterr().err

    def test_program_and_corpus_exclusive(self) -> None:
        """测试 --program 与 --corpus 互斥"""
        with pytest.raises(SystemExit) as exc_info:
            commands.main(["validate", "--domain", "find", "--corpus", "--program", "p"])
        assert exc_info.value.code == 1


class TestPointers:
    """指针参数测试"""

    def test_defaults(self) -> None:
        """测试不指定时使用默认指针"""
        source = commands.load_source("sorting")
        assert [p.name for p in commands.resolve_pointers(None, source)] == ["i", "j"]
        assert [p.name for p in commands.resolve_pointers("2", source)] == ["i", "j"]
        assert [p.name for p in commands.resolve_pointers("cell:2", source)] == ["i", "j"]

    def test_more_pointers(self) -> None:
        """测试增加指针时自动命名"""
        source = commands.load_source("sorting")
        assert [str(p) for p in commands.resolve_pointers("3", source)] == [
            "i:cell",
            "j:cell",
            "k:cell",
        ]

    def test_multiple_types_need_counts(self) -> None:
        """测试多类型领域不能只给总数"""
        source = commands.load_source("gripper")
        with pytest.raises(DomainDefinitionError, match="type:count"):
            commands.resolve_pointers("5", source)

    @pytest.mark.parametrize("text", ["cell", "cell:x", ":2"])
    def test_bad_counts(self, text: str) -> None:
        """测试格式错误"""
        with pytest.raises(DomainDefinitionError):
            commands.parse_pointer_counts(text)


class TestSynthCommand:
    """synth 子命令测试"""

    def test_finds_program(self, toy_dir: Path, capsys) -> None:
        """测试在目录问题上找到解"""
        code = commands.main(["synth", "--domain", str(toy_dir), "--lines", "4"])
        out = capsys.readouterr().out
        assert code == 0
        assert "✅ 找到解" in out
        assert "3. end" in out

    def test_writes_output_file(self, toy_dir: Path, tmp_path: Path) -> None:
        """测试把解写入文件"""
        output = tmp_path / "solution.prog"
        assert commands.main(["synth", "--domain", str(toy_dir), "--lines", "4", str(output)]) == 0
        assert output.read_text(encoding="utf-8").endswith("3. end\n")

    def test_no_solution(self, toy_dir: Path, capsys) -> None:
        """测试搜索空间耗尽时退出码为 2"""
        assert commands.main(["synth", "--domain", str(toy_dir), "--lines", "3"]) == 2
        assert "exhausted" in capsys.readouterr().err

    def test_lines_required_for_directory(self, toy_dir: Path, capsys) -> None:
        """测试目录问题必须指定行数"""
        assert commands.main(["synth", "--domain", str(toy_dir)]) == 1
        assert "--lines" in capsys.readouterr().err

    def test_json_report(self, toy_dir: Path, tmp_path: Path) -> None:
        """测试 JSON 报告，两次运行去掉计时后一致"""
        reports = []
        for n in range(2):
            path = tmp_path / f"report-{n}.json"
            commands.main(["synth", "--domain", str(toy_dir), "--lines", "4", "--json", str(path)])
            reports.append(json.loads(path.read_text(encoding="utf-8")))
        first = reports[0]
        assert first["status"] == "solved"
        assert first["exit_code"] == 0
        assert first["arguments"]["instances"] == ["toy-2", "toy-3"]
        assert "elapsed" in first["stats"]
        assert strip_timings(reports[0]) == strip_timings(reports[1])

    def test_unknown_domain(self, capsys) -> None:
        """测试未知领域"""
        assert commands.main(["synth", "--domain", "nonexistent"]) == 1
        assert "❌" in capsys.readouterr().err


class TestValidateCommand:
    """validate 子命令测试"""

    def test_corpus_on_synthesis_set(self, capsys) -> None:
        """测试回归程序求解合成集"""
        code = commands.main(["validate", "--domain", "sorting", "--corpus", "--set", "synthesis"])
        assert code == 0
        assert "全部 10 个实例求解" in capsys.readouterr().out

    def test_failing_program(self, toy_dir: Path, paint_once: Path, tmp_path: Path, capsys) -> None:
        """测试实例失败时退出码为 3，报告在第一个失败处停止"""
        report_path = tmp_path / "report.json"
        code = commands.main(
            [
                "validate",
                "--domain",
                str(toy_dir),
                "--program",
                str(paint_once),
                "--json",
                str(report_path),
            ]
        )
        assert code == 3
        assert "toy-2" in capsys.readouterr().err
        report = json.loads(report_path.read_text(encoding="utf-8"))
        assert report["status"] == "failed"
        assert len(report["instances"]) == 1
        assert report["instances"][0]["reason"] == "incorrect"
        assert "cpu_time" in report["instances"][0]

    def test_step_limit(self, toy_dir: Path, tmp_path: Path, capsys) -> None:
        """测试关闭检测时死循环由步数上限终止"""
        program = tmp_path / "loop.prog"
        program.write_text("0. inc(i)\n1. goto(0, !(Yz&Yc))\n2. end\n", encoding="utf-8")
        args = ["validate", "--domain", str(toy_dir), "--program", str(program)]
        assert commands.main(args + ["--step-limit", "100"]) == 3
        assert "step-limit" in capsys.readouterr().err
        assert commands.main(args + ["--infinite-detection", "on"]) == 3
        assert "infinite" in capsys.readouterr().err

    @pytest.mark.parametrize(("value", "expected"), [("on", True), ("off", False)])
    def test_infinite_detection_values(self, tmp_path: Path, value: str, expected: bool) -> None:
        """测试 --infinite-detection on/off 都能解析并写入报告"""
        report_path = tmp_path / "report.json"
        code = commands.main(
            [
                "validate",
                "--domain",
                "reverse",
                "--corpus",
                "--count",
                "1",
                "--infinite-detection",
                value,
                "--json",
                str(report_path),
            ]
        )
        assert code == 0
        report = json.loads(report_path.read_text(encoding="utf-8"))
        assert report["arguments"]["infinite_detection"] is expected

    def test_program_required(self, capsys) -> None:
        """测试没有指定程序"""
        assert commands.main(["validate", "--domain", "sorting"]) == 1
        assert "--program" in capsys.readouterr().err

    def test_program_syntax_error(self, tmp_path: Path, capsys) -> None:
        """测试程序文件语法错误"""
        program = tmp_path / "bad.prog"
        program.write_text("0. inc(q)\n1. end\n", encoding="utf-8")
        assert commands.main(["validate", "--domain", "sorting", "--program", str(program)]) == 1


class TestGenCommand:
    """gen 子命令测试"""

    def test_stdout_is_deterministic(self, capsys) -> None:
        """测试相同种子输出逐字节一致"""
        outputs = []
        for _ in range(2):
            assert commands.main(["gen", "--domain", "find", "--seed", "7", "--count", "3"]) == 0
            outputs.append(capsys.readouterr().out)
        assert outputs[0] == outputs[1]
        assert "DOMAIN find" in outputs[0]
        assert "INSTANCE find-4" in outputs[0]

        commands.main(["gen", "--domain", "find", "--seed", "8", "--count", "3"])
        assert capsys.readouterr().out != outputs[0]

    def test_writes_directory(self, tmp_path: Path) -> None:
        """测试写出的目录可以作为 --domain 使用"""
        out = tmp_path / "sorting"
        assert commands.main(["gen", "--domain", "sorting", "--count", "3", "--out", str(out)]) == 0
        assert sorted(p.name for p in out.iterdir()) == [
            "domain.gpd",
            "sorting-2.gpi",
            "sorting-3.gpi",
            "sorting-4.gpi",
        ]
        source = commands.load_source(str(out))
        assert not source.builtin
        assert [i.name for i in source.instances] == ["sorting-2", "sorting-3", "sorting-4"]

    def test_validate_generated_directory(self, tmp_path: Path, capsys) -> None:
        """测试在生成的目录上验证回归程序"""
        out = tmp_path / "reverse"
        commands.main(["gen", "--domain", "reverse", "--out", str(out)])
        assert commands.main(["validate", "--domain", str(out), "--corpus"]) == 0

    def test_constraint_goal_style(self, capsys) -> None:
        """测试约束目标输出 GOALEXPR"""
        commands.main(["gen", "--domain", "sorting", "--count", "2", "--goal-style", "constraint"])
        assert "GOALEXPR" in capsys.readouterr().out

    def test_unsupported_goal_style(self, capsys) -> None:
        """测试不支持约束目标的领域"""
        assert commands.main(["gen", "--domain", "reverse", "--goal-style", "constraint"]) == 1


class TestTranslateCommand:
    """translate 子命令测试"""

    def test_round_trip(self, pddl_dir: Path, tmp_path: Path) -> None:
        """测试翻译结果可以读回"""
        out = tmp_path / "bw"
        code = commands.main(
            [
                "translate",
                "--pddl-domain",
                str(pddl_dir / "blocksworld-domain.pddl"),
                "--pddl-problem",
                str(pddl_dir / "blocksworld-p3.pddl"),
                "--out",
                str(out),
            ]
        )
        assert code == 0
        source = commands.load_source(str(out))
        assert source.name == "blocksworld"
        assert [p.name for p in source.domain.default_pointers] == ["i", "j"]
        assert [i.name for i in source.instances] == ["blocks-3"]

    def test_pointer_counts(self, pddl_dir: Path, capsys) -> None:
        """测试指定指针数"""
        code = commands.main(
            [
                "translate",
                "--pddl-domain",
                str(pddl_dir / "gripper-domain.pddl"),
                "--pointers",
                "room:2,ball:2,gripper:1",
            ]
        )
        assert code == 0
        assert "POINTERS r1:room r2:room b1:ball b2:ball g1:gripper" in capsys.readouterr().out

    def test_missing_file(self, tmp_path: Path, capsys) -> None:
        """测试 PDDL 文件不存在"""
        code = commands.main(["translate", "--pddl-domain", str(tmp_path / "none.pddl")])
        assert code == 1


class TestListAndMain:
    """list 与主入口测试"""

    def test_list(self, capsys) -> None:
        """测试列出基准"""
        assert commands.main(["list"]) == 0
        out = capsys.readouterr().out
        assert "sorting" in out
        assert "总计: 11 个基准" in out

    def test_no_command_prints_help(self, capsys) -> None:
        """测试没有子命令时打印帮助"""
        assert commands.main([]) == 1
        assert "gp-synth" in capsys.readouterr().out

    def test_keyboard_interrupt(self) -> None:
        """测试中断返回 130"""

        def interrupted(args):
            raise KeyboardInterrupt

        with patch.dict(commands.COMMANDS, {"gen": interrupted}):
            assert commands.main(["gen", "--domain", "find"]) == 130

    def test_report_write_failure(self, tmp_path: Path, capsys) -> None:
        """测试报告无法写出"""
        target = tmp_path / "missing" / "report.json"
        assert commands.main(["gen", "--domain", "find", "--count", "1", "--json", str(target)]) == 1
        assert "无法写出报告" in capsys.readouterr().err
