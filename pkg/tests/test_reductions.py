import copy
import json

import pytest

from noether.errors import HypothesisError
from noether.groups import abelian, central_extension_data, cyclic, dihedral, quotient
from noether.reductions import Certificate, SchemaError, reverify
from noether.reductions.crosscheck import crosscheck_abelian
from noether.reductions.fischer import fischer_construct
from noether.reductions.theorem11 import iterated_generators, theorem11_embed
from noether.reductions.theorem16 import (split_extension, theorem14_reduce, theorem15_pipeline, theorem16_reduce,
                                          theorem17_chain, theorem18_chain)
from noether.reductions.theorem19 import theorem19_construct
from noether.reductions.theorem42 import theorem42_pipeline
from noether.reductions.theorem110 import theorem110_construct
from noether.reductions.witness import trivial_witness
from noether.scalars import parse_field

Q, F2, F3 = parse_field("Q"), parse_field("Fp:2"), parse_field("Fp:3")
K3 = parse_field("Q(zeta:3)")


def _round_trip(cert: Certificate):
    data = json.loads(cert.dumps())
    rows = reverify(data)
    assert rows and all(stored == now for _, stored, now, _ in rows)
    return data


def _names(cert):
    return [c["name"] for c in cert.claims]


def test_fischer_c3_basis():
    cert, w = fischer_construct(cyclic(3), K3)
    assert cert.ok and len(w.exprs) == 3
    exps = sorted(tuple(next(iter(e.num.terms))) for e in w.exprs)
    assert exps == sorted([(1, 0, 0), (0, 1, 1), (0, 0, 3)])
    _round_trip(cert)


def test_fischer_needs_roots_of_unity():
    with pytest.raises(HypothesisError):
        fischer_construct(cyclic(3), Q)


def test_theorem11_small_and_degenerate():
    cert = theorem11_embed(cyclic(2), cyclic(2), Q)
    assert cert.ok
    _round_trip(cert)
    solo = theorem11_embed(cyclic(3), cyclic(1), K3)
    assert solo.ok and len(iterated_generators(solo)) == 3


def test_theorem11_peels_largest_factor_first():
    cert = theorem11_embed(abelian([2, 4]), cyclic(1), parse_field("Q(zeta:4)"))
    assert cert.notes["layers"] == [4, 2]
    assert cert.ok


def test_theorem16_requires_char_p():
    ext = split_extension(cyclic(3))
    with pytest.raises(HypothesisError, match="requires char K = p"):
        theorem16_reduce(ext, Q)


def test_theorem16_z4():
    Z4 = cyclic(4)
    ext = central_extension_data(Z4, 2, quotient(Z4, Z4.subgroup_generated([2])))
    cert = theorem16_reduce(ext, F2)
    assert cert.ok
    _round_trip(cert)


def test_theorem17_and_18():
    chain = theorem17_chain(cyclic(9), cyclic(1), F3)
    assert chain.ok and chain.notes["chain_length"] == 2
    with pytest.raises(HypothesisError):
        theorem17_chain(cyclic(6), cyclic(1), F2)
    assert theorem18_chain(cyclic(4), range(4), F2).ok


def test_theorem14_dispatch():
    assert theorem14_reduce(cyclic(3), Q).sub[0].theorem == "1.1"
    assert theorem14_reduce(cyclic(3), F2).sub[0].theorem == "1.6"
    assert theorem14_reduce(dihedral(3), F3).ok


def test_theorem15():
    cert = theorem15_pipeline(3, Q)
    assert cert.ok
    with pytest.raises(HypothesisError):
        theorem15_pipeline(4, Q)


def test_theorem19_c2_c2():
    cert = theorem19_construct(cyclic(2), cyclic(2), Q)
    assert cert.ok
    rank = next(c for c in cert.claims if c["check"]["type"] == "rank" and c["check"]["system"] == "UV")
    assert rank["check"]["expected"] == 3
    _round_trip(cert)


def test_theorem19_trivial_h_and_witness():
    assert theorem19_construct(cyclic(1), cyclic(3), Q, trivial_witness(cyclic(1), Q)).ok
    w = fischer_construct(cyclic(3), K3)[1]
    cert = theorem19_construct(cyclic(3), dihedral(3), K3, w)
    assert cert.ok
    with pytest.raises(HypothesisError):
        theorem19_construct(cyclic(2), dihedral(3), K3, w)


def test_theorem110_variants():
    w2 = fischer_construct(cyclic(2), Q)[1]
    for w in (w2, w2.stabilized(2)):
        cert = theorem110_construct(cyclic(2), cyclic(2), Q, w)
        assert cert.ok
        _round_trip(cert)
    assert theorem110_construct(cyclic(1), cyclic(3), Q, trivial_witness(cyclic(1), Q)).ok


def test_theorem42():
    w = fischer_construct(cyclic(3), K3)[1]
    cert = theorem42_pipeline(3, K3, w)
    assert cert.ok and [s.theorem for s in cert.sub] == ["1.10", "1.9", "1.5"]
    assert theorem42_pipeline(1, Q, None).ok
    with pytest.raises(HypothesisError):
        theorem42_pipeline(4, Q, None)
    with pytest.raises(HypothesisError):
        theorem42_pipeline(3, K3, None)


def test_crosscheck():
    assert crosscheck_abelian(abelian([2, 2]), Q).ok
    with pytest.raises(HypothesisError):
        crosscheck_abelian(dihedral(3), Q)


def test_tampering_detected():
    cert, _ = fischer_construct(cyclic(3), K3)
    data = json.loads(cert.dumps())
    bad = copy.deepcopy(data)
    term = bad["systems"]["Y"]["defs"][1]["num"][0]
    term["coeff"][0] = -term["coeff"][0]
    rows = reverify(bad)
    assert any(not now for _, _, now, _ in rows)


def test_schema_errors():
    with pytest.raises(SchemaError):
        reverify({"schema": "something-else"})
    cert, _ = fischer_construct(cyclic(2), Q)
    data = json.loads(cert.dumps())
    del data["systems"]
    with pytest.raises(SchemaError):
        reverify(data)


def test_certificates_deterministic():
    a = theorem11_embed(cyclic(2), dihedral(3), Q, seed=5).dumps()
    b = theorem11_embed(cyclic(2), dihedral(3), Q, seed=5).dumps()
    assert a == b
