import json
from fractions import Fraction

import pytest

from qmatspec import NotHeckeError, ScalarBackend, TensorOp, drinfeld_jimbo, hecke_symmetry, load_r_matrix, validate
from qmatspec.braiding import NotSkewInvertibleError, r_matrix_json, recover_q
from qmatspec.scalar import RatFunc, q_int
from qmatspec.tensor import flip, identity

q = RatFunc.q()


@pytest.mark.parametrize("N", [1, 2, 3])
def test_drinfeld_jimbo_structure(N):
    H = drinfeld_jimbo(N)
    assert all(e["pass"] for e in validate(H))
    assert H.m == N
    # C is diagonal with entries q^{-2N+1}, ..., q^{-1}
    for i in range(N):
        for j in range(N):
            want = q ** (-2 * (N - i) + 1) if i == j else 0
            assert H.C[i, j] == want
    assert sum((H.C[i, i] for i in range(N)), RatFunc(0)) == q**-N * q_int(N, q)


def test_r_trace_of_r(dj2):
    # <R>_2 = I and <R^{-1}>_2 = q^{-2m} I
    assert dj2.rtrace(dj2.R, [2]) == dj2.identity(1)
    assert dj2.rtrace(dj2.R_inv, [2]) == dj2.identity(1).scale(q ** (-2 * dj2.m))


def test_twisted_symmetry(twisted2):
    H = twisted2
    assert all(e["pass"] for e in validate(H))
    assert H.m == 2
    assert H.R != H.R.transpose()
    assert H.rtrace(H.R, [2]) == H.identity(1)


def test_recover_q_symbolic(dj2):
    assert recover_q(dj2.R, dj2.backend) == q
    H = hecke_symmetry(dj2.R, dj2.backend)  # q recovered
    assert H.q == q and H.m == 2


def test_recover_q_sampled():
    b = ScalarBackend.sampled(Fraction(7, 3))
    H = drinfeld_jimbo(2, b)
    assert recover_q(H.R, b) == Fraction(7, 3)


def test_not_hecke():
    b = ScalarBackend.symbolic()
    R = flip(2, b.one).scale(2)
    with pytest.raises(NotHeckeError):
        hecke_symmetry(R, b, q=b.q)


def test_not_skew_invertible():
    # the superposition q*flip projected to a single basis vector has a singular reshuffle
    b = ScalarBackend.symbolic()
    R = TensorOp(2, 2, {0: {0: b.one}})
    with pytest.raises((NotSkewInvertibleError, NotHeckeError)):
        hecke_symmetry(R, b, q=b.q)


def test_unchecked_bundle_reports_failures():
    b = ScalarBackend.symbolic()
    H = hecke_symmetry(flip(2, b.one).scale(2), b, check=False)
    report = {e["check"]: e["pass"] for e in validate(H)}
    assert report["hecke"] is False


def test_json_round_trip(dj2):
    text = r_matrix_json(dj2)
    H = load_r_matrix(text, ScalarBackend.symbolic())
    assert H.R == dj2.R and H.m == 2
    sampled = load_r_matrix(text, ScalarBackend.sampled(Fraction(3, 2)))
    assert sampled.q == Fraction(3, 2)


def test_corrupted_file_rejected(dj2):
    data = json.loads(r_matrix_json(dj2))
    data["R"][1][2] = "2"
    with pytest.raises(NotHeckeError):
        load_r_matrix(json.dumps(data), ScalarBackend.symbolic())
    H = load_r_matrix(json.dumps(data), ScalarBackend.symbolic(), check=False)
    braid = next(e for e in validate(H) if e["check"] == "braid")
    assert not braid["pass"] and braid["witness"]
    data["R"] = data["R"][:3]
    with pytest.raises(ValueError):
        load_r_matrix(json.dumps(data), ScalarBackend.symbolic())
