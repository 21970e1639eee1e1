import json

import pytest

from src.domain.errors import ComputationOverflow, DescriptorError, NotABasis
from src.infrastructure.corpus_repository import CorpusRepository


def _write(path, data):
    path.write_text(json.dumps(data), encoding="utf-8")
    return path


def test_bundled_entries(corpus):
    assert len(corpus.get_all_entries("groups")) == 9
    assert {e.id for e in corpus.get_all_entries("fields")} == {
        "q_zeta5", "q_zeta7", "q_sqrt_m3_sqrt5", "s3_cubic", "rationals",
    }
    assert len(corpus.get_all_entries("complexes")) == 4
    assert corpus.get_entry("q8").kind == "groups"
    assert corpus.get_entry("missing") is None


def test_unknown_reference(corpus):
    with pytest.raises(DescriptorError):
        corpus.resolve("no_such_group")


def test_tables_are_cached(corpus):
    assert corpus.load_group("s3") is corpus.load_group("groups/s3.json")


def test_malformed_json_reports_position(corpus, data_dir):
    with pytest.raises(DescriptorError) as excinfo:
        corpus.load_group(str(data_dir / "malformed_group.json"))
    assert any(problem.startswith("行 ") for problem in excinfo.value.problems)


def test_bad_rank_complex(corpus, data_dir):
    with pytest.raises(NotABasis):
        corpus.load_complex(str(data_dir / "bad_rank.json"))


def test_group_order_limit():
    small = CorpusRepository(max_group_order=4)
    with pytest.raises(ComputationOverflow):
        small.load_group("s3")


def test_declared_order_must_match(corpus, tmp_path):
    path = _write(tmp_path / "c2.json", {"name": "C2", "order": 3, "mul_table": [[0, 1], [1, 0]]})
    with pytest.raises(DescriptorError) as excinfo:
        corpus.load_group(str(path))
    assert any("order" in problem for problem in excinfo.value.problems)


def test_group_needs_table(corpus, tmp_path):
    path = _write(tmp_path / "empty.json", {"name": "empty"})
    with pytest.raises(DescriptorError):
        corpus.load_group(str(path))


def test_field_with_bad_conjugation(corpus, tmp_path):
    path = _write(tmp_path / "bad_conj.json", {
        "name": "Q(zeta5) with wrong c",
        "group": "c4",
        "normal_basis": {"n": 5, "terms": {"1": 1}},
        "galois_exponents": [1, 2, 4, 3],
        "conj_element": 1,
        "ramification": [
            {"p": 5, "f": 1, "num_primes_above": 1, "inertia": [0, 1, 2, 3], "inertia_char": {"1": 1}},
        ],
    })
    with pytest.raises(DescriptorError):
        corpus.load_field(str(path))


def test_field_with_bad_splitting_data(corpus, tmp_path):
    path = _write(tmp_path / "bad_efg.json", {
        "name": "Q(zeta5) with wrong f",
        "group": "c4",
        "normal_basis": {"n": 5, "terms": {"1": 1}},
        "galois_exponents": [1, 2, 4, 3],
        "ramification": [
            {"p": 5, "f": 2, "num_primes_above": 1, "inertia": [0, 1, 2, 3], "inertia_char": {"1": 1}},
        ],
    })
    with pytest.raises(DescriptorError) as excinfo:
        corpus.load_field(str(path))
    assert any("e·f·g" in problem for problem in excinfo.value.problems)


def test_complex_descriptor(corpus):
    descriptor = corpus.load_complex("two_term_c2")
    assert descriptor.complex.ranks == (1, 1)
    assert descriptor.primes == [2]
    assert set(descriptor.q_bases) == {0}
    assert descriptor.forms.forms[1][0, 0] == 2.0
    assert corpus.load_complex("rescale_s3").rescale == [2.0, 3.0, 1.5]


def test_custom_corpus_directory(tmp_path):
    (tmp_path / "groups").mkdir()
    _write(tmp_path / "groups" / "c2.json", {"name": "C2", "mul_table": [[0, 1], [1, 0]]})
    _write(tmp_path / "corpus_config.json", {
        "groups": [{"id": "two", "name": "C2", "filename": "groups/c2.json"}],
    })
    repository = CorpusRepository(str(tmp_path))
    assert [e.id for e in repository.get_all_entries()] == ["two"]
    assert repository.load_group("two").group.order == 2
