import pytest

from src.application.suites import PropertyRun, SuiteContext, suite_registry
from src.application.verify_use_cases import VerifyUseCase
from src.domain.entities import SUITES, ComputationLimits, RunConfig
from src.infrastructure.repositories import StructuredLoggerRepository

SMALL = ComputationLimits(
    cyclo_pairs=40,
    reciprocity_triples=10,
    basis_perturbations=6,
    quasi_iso_pairs=4,
    isometry_vectors=10,
)


@pytest.fixture
def context(corpus):
    return SuiteContext(corpus, 20240607, 1e-9, SMALL)


def test_registry_covers_all_suites():
    assert set(suite_registry()) == set(SUITES)


@pytest.mark.parametrize("name", SUITES)
def test_suite_passes(context, name):
    results = suite_registry()[name](context)
    assert results
    failures = [r.to_dict() for r in results if not r.passed]
    assert not failures


def test_suites_are_deterministic(corpus):
    run = suite_registry()["cyclo"]
    first = run(SuiteContext(corpus, 7, 1e-9, SMALL))
    second = run(SuiteContext(corpus, 7, 1e-9, SMALL))
    assert [r.to_dict() for r in first] == [r.to_dict() for r in second]


def test_property_run_keeps_first_failure():
    run = PropertyRun("demo", "cyclo", 3)
    assert run.record(True, x=1)
    assert not run.record(False, x=2)
    run.record(False, x=3)
    result = run.result()
    assert not result.passed
    assert result.reproduction == {"suite": "cyclo", "seed": 3, "sample": 1, "case": {"x": 2}}
    assert result.detail["samples"] == 3


def test_verify_use_case(corpus):
    use_case = VerifyUseCase(corpus, StructuredLoggerRepository(), SMALL)
    result = use_case.execute(RunConfig("verify", seed=1, suite="groupchar"))
    assert result.exit_code == 0
    assert result.report.items[0]["suite"] == "groupchar"
    assert result.report.to_dict()["command"]["suite"] == "groupchar"


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig("verify", suite="nope")
    with pytest.raises(ValueError):
        RunConfig("chars", precision_bits=8)
    with pytest.raises(ValueError):
        RunConfig("unknown")
    assert RunConfig("verify").suites == SUITES


def test_basis_checks_cover_every_group(context):
    results = {r.name: r for r in suite_registry()["metcomplex"](context)}
    expected = SMALL.basis_perturbations * len(context.tables())
    for name in ("p_basis_independence", "q_basis_independence", "W_basis_independence"):
        assert results[f"metcomplex.{name}"].detail["samples"] == expected
