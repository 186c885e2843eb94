"""Tests for the command layer: parameters, exit codes, registry and built-in commands"""

import pytest

from domlab.cache import ResultCache
from domlab.commands.base_command import (
    EXIT_CAP,
    EXIT_INTERNAL,
    EXIT_MISMATCH,
    EXIT_OK,
    EXIT_USAGE,
    BaseCommand,
    CommandContext,
    CommandMetadata,
    CommandParameter,
    CommandRegistry,
    CommandResult,
    ParameterType,
    exit_code_for,
)
from domlab.commands.builtin import (
    ComputeCommand,
    ProfileCommand,
    RefuteCommand,
    SimulateCommand,
    build_registry,
    compute_record,
    describe_certificate,
)
from domlab.core.engine import InvariantEngine
from domlab.errors import (
    EngineInvariantError,
    GraphSpecError,
    NoRefutationError,
    ResourceCapExceeded,
)
from domlab.graph.spec import generate


class EchoCommand(BaseCommand):
    def get_metadata(self) -> CommandMetadata:
        return CommandMetadata(
            name="echo",
            description="Echo a word",
            parameters=[
                CommandParameter("word", ParameterType.STRING, "Word", positional=True),
                CommandParameter("times", ParameterType.INTEGER, "Repeats", required=False, default=1, min_value=1),
            ],
        )

    def execute(self, context, word, times):
        if word == "boom":
            raise RuntimeError("unexpected")
        if word == "cap":
            raise ResourceCapExceeded(4, 10)
        return CommandResult(success=True, message=" ".join([word] * times), data={"word": word})


class TestParameters:
    def test_required(self):
        param = CommandParameter("spec", ParameterType.STRING, "Spec")
        assert param.validate(None) == (False, "Parameter 'spec' is required")

    def test_types(self):
        assert not CommandParameter("k", ParameterType.INTEGER, "k").validate("3")[0]
        assert not CommandParameter("k", ParameterType.INTEGER, "k").validate(True)[0]
        assert not CommandParameter("flag", ParameterType.BOOLEAN, "f").validate(1)[0]
        assert CommandParameter("path", ParameterType.PATH, "p").validate("out.jsonl")[0]

    def test_minimum_and_choices(self):
        assert not CommandParameter("k", ParameterType.INTEGER, "k", min_value=1).validate(0)[0]
        param = CommandParameter("invariant", ParameterType.STRING, "i", choices=["gamma"])
        assert not param.validate("eternal")[0]
        assert param.validate("gamma") == (True, None)


class TestBaseCommand:
    def test_defaults_are_filled(self):
        result = EchoCommand().safe_execute(CommandContext(), word="hi")
        assert result.success
        assert result.message == "hi"
        assert result.execution_time >= 0

    def test_validation_failure_is_usage_error(self):
        result = EchoCommand().safe_execute(CommandContext(), word="hi", times=0)
        assert result.exit_code == EXIT_USAGE
        assert "times" in result.error

    def test_unexpected_parameter(self):
        result = EchoCommand().safe_execute(CommandContext(), word="hi", colour="red")
        assert result.exit_code == EXIT_USAGE

    def test_unexpected_exception(self):
        result = EchoCommand().safe_execute(CommandContext(), word="boom")
        assert not result.success
        assert result.exit_code == EXIT_INTERNAL
        assert result.error == "unexpected"

    def test_cap_exception(self):
        assert EchoCommand().safe_execute(CommandContext(), word="cap").exit_code == EXIT_CAP

    def test_result_dict(self):
        data = EchoCommand().safe_execute(CommandContext(), word="hi").to_dict()
        assert data["exit_code"] == EXIT_OK
        assert data["data"] == {"word": "hi"}

    def test_metadata_checks(self):
        class Nameless(EchoCommand):
            def get_metadata(self):
                return CommandMetadata(name="", description="x")

        with pytest.raises(ValueError):
            Nameless()

    @pytest.mark.parametrize("error, code", [
        (ResourceCapExceeded(3, 1), EXIT_CAP),
        (EngineInvariantError("chain broken"), EXIT_MISMATCH),
        (GraphSpecError("bad"), EXIT_USAGE),
        (NoRefutationError("secure"), EXIT_USAGE),
        (ValueError("bad"), EXIT_USAGE),
        (FileNotFoundError("gone"), EXIT_USAGE),
        (KeyError("bug"), EXIT_INTERNAL),
        (RuntimeError("bug"), EXIT_INTERNAL),
    ])
    def test_exit_code_mapping(self, error, code):
        assert exit_code_for(error) == code


class TestRegistry:
    def test_registration_order(self):
        assert build_registry().list_commands() == [
            "compute", "profile", "refute", "realize", "simulate", "verify-paper", "export-dot", "schema",
        ]

    def test_lookup(self):
        registry = CommandRegistry()
        registry.register(EchoCommand())
        assert isinstance(registry.get_command("echo"), EchoCommand)
        assert registry.get_command("missing") is None

    def test_threads_resolution(self):
        assert CommandContext.resolve_threads(3) == 3
        assert CommandContext.resolve_threads(0) >= 1


class TestBuiltins:
    def test_compute_record_uses_cache(self, tmp_path):
        cache = ResultCache(tmp_path / "results.jsonl")
        context = CommandContext(node_cap=None, cache=cache)
        g = generate("path:7")
        first = compute_record(context, g, "autonomous")
        assert first.value == 5
        assert first.certificate["kind"] == "family"
        assert len(cache) == 1
        assert compute_record(context, g, "autonomous") == first

    def test_cached_record_keeps_the_requested_spec(self, tmp_path):
        context = CommandContext(cache=ResultCache(tmp_path / "results.jsonl"))
        compute_record(context, generate("ladder:3"), "autonomous")
        product = generate("cart(path:2,path:3)")
        record = compute_record(context, product, "autonomous")
        assert record.spec == product.name
        assert record.value == 3

    def test_compute_unknown_is_exit_3(self):
        result = ComputeCommand().safe_execute(CommandContext(node_cap=1), spec="path:7", invariant="autonomous")
        assert result.exit_code == EXIT_CAP
        assert result.data["status"] == "unknown"
        assert result.data["value"] is None
        assert result.data["k"] == 3

    def test_profile_rows_are_cached(self, tmp_path):
        cache = ResultCache(tmp_path / "results.jsonl")
        context = CommandContext(cache=cache)
        first = ProfileCommand().safe_execute(context, spec="house9", kmax=4)
        assert [row["k"] for row in first.data["rows"]] == [2, 3, 4]
        assert first.data["rows"][0]["feasible"] is True
        assert first.data["rows"][1]["feasible"] is False
        second = ProfileCommand().safe_execute(CommandContext(cache=ResultCache(cache.path)), spec="house9", kmax=4)
        assert second.data == first.data

    def test_refute_secure_start(self):
        context = CommandContext()
        representative = InvariantEngine(generate("path:7")).autonomous_feasible(5)[1].representative
        start = ",".join(str(v) for v in range(7) if representative >> v & 1)
        result = RefuteCommand().safe_execute(context, spec="path:7", k=5, start=start)
        assert result.exit_code == EXIT_MISMATCH
        assert result.data["trajectory"] is None

    def test_simulate_rejects_unknown_adversary(self):
        result = SimulateCommand().safe_execute(CommandContext(), spec="path:4", start="a_2,a_4", adversary="sly")
        assert result.exit_code == EXIT_USAGE

    def test_simulate_uses_configured_defaults(self):
        context = CommandContext(config={"simulation": {"seed": 4, "rounds": 7, "trials": 1, "adversary": "greedy"}})
        result = SimulateCommand().safe_execute(context, spec="complete:4", start="v_1")
        assert result.data["seed"] == 4
        assert result.data["adversary"] == "greedy"
        assert result.data["rounds"] == 7

    def test_certificate_descriptions(self):
        assert describe_certificate(None) == "-"
        assert describe_certificate({"kind": "witness", "witness_labels": "{a_2}"}) == "dominating set {a_2}"
        assert describe_certificate({"kind": "formula", "formula": "n - min_degree = 4 - 1"}) == "n - min_degree = 4 - 1"
