import json

import numpy as np
import pytest

from fermiupb import constructions as C
from fermiupb import io
from fermiupb.exterior import Factorization, basis_nvector, wedge_expand
from fermiupb.scalars import ExactComplex
from fermiupb.search import SearchConfig
from fermiupb.verifier import verify_candidate
from helpers import rand_fact, rand_nvec


def roundtrip(obj):
    return io.loads(io.dumps(obj))


def test_exact_nvector_roundtrip():
    v = basis_nvector(4, 1, 2) * ExactComplex(1, 3) / 7 + basis_nvector(4, 2, 4)
    d = io.to_dict(v)
    assert d["entries"][0] == {"idx": [1, 2], "re": "1/7", "im": "3/7"}
    assert roundtrip(v) == v


def test_float_roundtrip_is_bit_exact():
    rng = np.random.default_rng(0)
    for _ in range(20):
        v = rand_nvec(rng, 3, 6)
        back = roundtrip(v)
        assert np.array_equal(back.dense(), v.dense())
        f = rand_fact(rng, 2, 5)
        assert np.array_equal(roundtrip(f).matrix(), f.matrix())


def test_candidate_roundtrip():
    for s in (C.vandermonde_gfupb(2, 4), C.fupb_c4(), C.slater_basis(2, 3)):
        back = roundtrip(s)
        assert (back.m, back.n, back.kind, back.claims, len(back)) == (s.m, s.n, s.kind, s.claims, len(s))
        for a, b in zip(s, back):
            assert a.backend == b.backend
            assert wedge_expand(a) == wedge_expand(b)


def test_roundtrip_preserves_verdict():
    cfg = SearchConfig(restarts=20)
    for s in (C.fupb_c4(), C.vandermonde_gfupb(2, 4)):
        a = verify_candidate(s, cfg)
        b = verify_candidate(roundtrip(s), cfg)
        assert a.verdict == b.verdict
        assert a.orthogonality_residual == b.orthogonality_residual


def test_backend_inferred_and_type_optional():
    d = {"m": 4, "n": 2, "entries": [{"idx": [1, 2], "re": "1", "im": "0"}]}
    assert io.from_dict(d) == basis_nvector(4, 1, 2)
    d = {"m": 3, "factors": [[{"re": 1.0, "im": 0.0}, {"re": 0, "im": 0}, {"re": 0, "im": 0}]]}
    f = io.from_dict(d)
    assert isinstance(f, Factorization) and f.backend == "float"


def test_report_serializes():
    s = C.slater_basis(2, 4)
    r = verify_candidate(s.replace(members=s.members[:-1]))
    d = json.loads(json.dumps(io.to_dict(r)))
    assert d["verdict"] == {"unextendible": "refuted", "certificate": "none"}
    w = io.from_dict(d["search"]["witness"])
    assert wedge_expand(w) == basis_nvector(4, 3, 4)
    assert d["config"]["seed"] == 0


@pytest.mark.parametrize(
    "bad",
    [
        [],
        {"type": "mystery"},
        {"hello": 1},
        {"type": "nvector", "m": 4, "n": 2},
        {"type": "nvector", "m": 4, "n": 2, "entries": [{"idx": [2, 1], "re": "1", "im": "0"}]},
        {"type": "nvector", "m": 4, "n": 2, "entries": [{"idx": [1, 2], "re": "x", "im": "0"}]},
        {"type": "nvector", "m": 4, "n": 2, "backend": "exact", "entries": [{"idx": [1, 2], "re": 1.5, "im": 0}]},
        {"type": "nvector", "m": 4, "n": 2, "backend": "quad", "entries": []},
        {"type": "nvector", "m": 4, "n": 2,
         "entries": [{"idx": [1, 2], "re": "1", "im": "0"}, {"idx": [1, 2], "re": "1", "im": "0"}]},
        {"type": "factorization", "m": 2, "n": 3, "factors": [[{"re": 1.0, "im": 0.0}, {"re": 0.0, "im": 0.0}]]},
        {"type": "candidate-set", "m": 4, "n": 2, "members": []},
        {"type": "candidate-set", "m": 4, "n": 2, "claims": {"orthogonal": "yes"},
         "members": [{"m": 4, "factors": [[{"re": "1", "im": "0"}] * 4] * 2}]},
    ],
)
def test_malformed_input_rejected(bad):
    with pytest.raises(ValueError):
        io.from_dict(bad)


def test_non_finite_rejected():
    v = basis_nvector(4, 1, 2).to_float()
    with pytest.raises(ValueError):
        io.scalar_to_json(complex(float("inf"), 0), "float")
    with pytest.raises(ValueError):
        io.scalar_from_json({"re": float("nan"), "im": 0}, "float")
    assert io.dumps(v)
    with pytest.raises(TypeError):
        io.to_dict(object())
