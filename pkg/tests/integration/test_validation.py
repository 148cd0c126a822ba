"""大规模验证与合成测试（需 --runslow）"""

import pytest

from gp_synth.cli import commands
from gp_synth.domains import (
    CORPUS,
    benchmark_loader,
    builtin_extended_domain,
    corpus_program,
    generate_instances,
)
from gp_synth.engine import ExecutionConfig, Interpreter, SearchLimits, Solved, bfgp

pytestmark = pytest.mark.slow

VALIDATION_CONFIG = ExecutionConfig(value_bound=10**9, infinite_detection=False)


class TestCorpusOnValidationSets:
    """回归程序在验证集上的表现"""

    @pytest.mark.parametrize("name", sorted(CORPUS))
    def test_first_validation_instances(self, name: str) -> None:
        """测试回归程序求解验证集的前几个实例"""
        ext = builtin_extended_domain(name)
        program = corpus_program(name, ext)
        instances = generate_instances(name, count=3, instance_set="validation")
        outcomes = Interpreter(ext, VALIDATION_CONFIG).run_all(program, instances)
        assert all(isinstance(o, Solved) for o in outcomes), [o.to_dict() for o in outcomes]

    def test_validate_command_on_reverse(self, capsys) -> None:
        """测试 validate 命令处理千元素以上的实例"""
        code = commands.main(["validate", "--domain", "reverse", "--corpus", "--count", "5"])
        assert code == 0
        assert "全部 5 个实例求解" in capsys.readouterr().out

    def test_plan_length_grows_with_size(self) -> None:
        """测试更大的实例需要更长的计划"""
        ext = builtin_extended_domain("sorting")
        program = corpus_program("sorting", ext)
        instances = generate_instances("sorting", count=5, instance_set="validation")
        outcomes = Interpreter(ext, VALIDATION_CONFIG).run_all(program, instances)
        lengths = [o.plan_length for o in outcomes if isinstance(o, Solved)]
        assert len(lengths) == 5
        assert lengths[0] < lengths[-1]


class TestSynthesis:
    """真实基准上的短时合成"""

    @pytest.mark.parametrize("name", ["triangular-sum", "corridor"])
    def test_solution_rechecks(self, name: str) -> None:
        """测试限时合成；找到的解在合成实例上复查通过"""
        ext = builtin_extended_domain(name)
        spec = benchmark_loader.load(name)
        instances = generate_instances(name, count=4)
        solution, stats = bfgp(
            instances, ext, spec.lines, ("f5", "f7"), SearchLimits(timeout=120, max_nodes=10**6)
        )
        assert stats.evaluated >= stats.expanded
        if solution is None:
            pytest.skip(f"限时内未找到解: {stats.status.value}")
        outcomes = Interpreter(ext).run_all(solution, instances)
        assert all(isinstance(o, Solved) for o in outcomes)
