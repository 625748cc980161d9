import json

import pytest

from toricfano.corpus import (
    ORDER,
    CorpusError,
    certificate_from_json,
    certificates_document,
    default_root,
    dumps,
    load_corpus,
    paircase_from_json,
    paircases_document,
    variety_from_json,
    variety_to_json,
    write_bundle,
)


@pytest.mark.parametrize("name", ORDER)
def test_files_round_trip_byte_for_byte(by_name, name):
    b = by_name[name]
    d = default_root() / name
    assert dumps(variety_to_json(b.spec)) == (d / "variety.json").read_text()
    assert dumps(certificates_document(name, b.certificates)) == (d / "certificates.json").read_text()
    assert dumps(paircases_document(name, b.paircases)) == (d / "paircases.json").read_text()


def test_write_and_reload(tmp_path, corpus):
    for b in corpus:
        write_bundle(tmp_path / b.spec.name, b)
    again = load_corpus(tmp_path)
    assert [x.spec for x in again] == [b.spec for b in corpus]
    assert [x.certificates for x in again] == [b.certificates for b in corpus]


def test_corpus_shape(corpus):
    assert sum(len(b.certificates) for b in corpus) == 27
    assert all(len(b.certificates) == 3 for b in corpus)
    labels = {(b.spec.name, c.pair) for b in corpus for c in b.paircases}
    assert len(labels) == 27
    statuses = [c.status for b in corpus for c in b.paircases]
    assert statuses.count("fails") == 1 and statuses.count("empty") == 5
    assert len(statuses) == 31


def test_expected_values_present(corpus):
    assert "copies" not in corpus[0].spec.expected
    assert all("copies" in b.spec.expected for b in corpus[1:])
    assert all("sections" in b.spec.expected for b in corpus)


def test_dumps_is_stable():
    doc = {"a": [1, 2, 3], "b": {"c": None, "d": "x"}}
    assert dumps(json.loads(dumps(doc))) == dumps(doc)


def _variety(**over):
    base = {"name": "X", "rays": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
            "max_cones": [[0, 1, 2, 3]]}
    base.update(over)
    return base


def test_malformed_variety():
    with pytest.raises(CorpusError):
        variety_from_json({"name": "X"})
    with pytest.raises(CorpusError):
        variety_from_json(_variety(max_cones=[[0, 1, 2, 9]]))
    assert variety_from_json(_variety()).basis_rays == (3, 4)


def test_malformed_certificate():
    good = {"type": [0, 1], "forms": [["1"], ["0", "1"]], "class": [0, 1],
            "hypersurface": [{"exps": [1, 1], "coeff": "2/3"}]}
    assert certificate_from_json("X", 1, good).curve.degrees == (0, 1)
    with pytest.raises(CorpusError):
        certificate_from_json("X", 1, {**good, "forms": [["1"], ["0", "1", "2"]]})
    with pytest.raises(CorpusError):
        certificate_from_json("X", 1, {**good, "forms": [["0"], ["0", "1"]]})
    with pytest.raises(CorpusError):
        certificate_from_json("X", 1, {**good, "hypersurface": [{"exps": [1, 1], "coeff": "1/0"}]})
    with pytest.raises(CorpusError):
        certificate_from_json("X", 1, {k: v for k, v in good.items() if k != "class"})


def test_malformed_paircase():
    with pytest.raises(CorpusError):
        paircase_from_json("X", {"pair": "C1C2", "status": "maybe", "types": [], "templates": []})


def test_missing_directory(tmp_path):
    with pytest.raises(CorpusError):
        load_corpus(tmp_path / "nothing")
    with pytest.raises(CorpusError):
        load_corpus(tmp_path)
