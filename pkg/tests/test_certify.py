import copy
import itertools
import json

import numpy as np
import pytest

from thickness_lab.certify import (
    certificate_to_dict,
    save_certificate,
    verify_certificate,
)
from thickness_lab.errors import SchemaError
from thickness_lab.groups import parse_group_spec
from thickness_lab.trigpoly import TrigPolynomial, random_unit_polynomial
from thickness_lab.witness import witness_block_basis, witness_general, witness_lp


@pytest.fixture(scope="module")
def block_cert_dict():
    g = parse_group_spec("Z2^12")
    window = [g.character(tuple(1 if j == i else 0 for j in range(12))) for i in range(12)]
    head = [
        g.character(tuple(e) + (0,) * 8)
        for e in itertools.product(range(2), repeat=4)
    ]
    fam = [random_unit_polynomial(head, np.random.SeedSequence([3, i])) for i in range(3)]
    cert = witness_block_basis(fam, window, 0.1, seed=3)
    return certificate_to_dict(cert)


def test_round_trip_passes(block_cert_dict):
    report = verify_certificate(block_cert_dict)
    assert report.passed, report.failures
    assert len(report.recomputed) == 3


def test_json_serializable(block_cert_dict, tmp_path):
    path = tmp_path / "cert.json"
    text = json.dumps(block_cert_dict, sort_keys=True)
    assert json.loads(text) == json.loads(json.dumps(json.loads(text), sort_keys=True))
    # atomic writer round-trips too
    g = parse_group_spec("Z4")
    cert = witness_general(
        [TrigPolynomial.constant(g)], [g.character((1,))], 0.5
    )
    save_certificate(cert, str(path))
    assert verify_certificate(json.loads(path.read_text())).passed


def test_tampered_achieved_fails(block_cert_dict):
    bad = copy.deepcopy(block_cert_dict)
    bad["per_function"][1]["achieved"] += 0.1
    report = verify_certificate(bad)
    assert not report.passed
    assert any("function 1" in f for f in report.failures)


def test_tampered_witness_coefficient_fails(block_cert_dict):
    bad = copy.deepcopy(block_cert_dict)
    bad["witness"]["coeffs"][0][1] += 0.1  # real part of one coefficient
    report = verify_certificate(bad)
    assert not report.passed


def test_tampered_point_fails(block_cert_dict):
    bad = copy.deepcopy(block_cert_dict)
    point = bad["per_function"][0]["point"]
    point[-1] = (point[-1] + 1) % 2
    report = verify_certificate(bad)
    assert not report.passed


def test_schema_mismatch(block_cert_dict):
    bad = copy.deepcopy(block_cert_dict)
    bad["schema"] = "witness/0"
    with pytest.raises(SchemaError):
        verify_certificate(bad)


def test_group_mismatch(block_cert_dict):
    bad = copy.deepcopy(block_cert_dict)
    bad["space"]["group"] = "Z2^11"
    with pytest.raises(Exception):
        verify_certificate(bad)


def test_lp_certificate_verification():
    cert = witness_lp([{0: 0.6, 3: 0.8}], p=2.0)
    data = certificate_to_dict(cert)
    assert verify_certificate(data).passed
    bad = copy.deepcopy(data)
    bad["per_function"][0]["achieved"] += 1e-3
    assert not verify_certificate(bad).passed
    worse = copy.deepcopy(data)
    worse["family"][0]["entries"][0][1] *= 2  # breaks the unit norm
    assert not verify_certificate(worse).passed
