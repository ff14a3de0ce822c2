from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qmatspec import (
    NewtonError,
    NotScalarError,
    TensorOp,
    cayley_hamilton_residual,
    extract_character,
    lemma44_check,
    monomial_action_t,
    newton_convert,
    power_matrices,
    represented_generators,
    spectral_power_sums,
    spectrum,
    young_idempotents,
)
from qmatspec.heckerep import partitions
from qmatspec.scalar import RatFunc, q_int
from qmatspec.spectral import elementary

q = RatFunc.q()


def nonzero_tableaux(H, k):
    return [Y for Y in young_idempotents(H, k) if not Y.E.is_zero()]


# -- power matrices and base cases ------------------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_base_case_power_matrices(dj2, n):
    PM = power_matrices(dj2, 0, n)
    m = 2
    assert PM.T[0, 0] == q ** (m * (1 - 2 * n)) * q_int(m, q)
    assert PM.P[0, 0] == q ** (-m) * q_int(m, q)


def test_power_matrices_validate_arguments(dj2):
    with pytest.raises(ValueError):
        power_matrices(dj2, -1, 1)
    with pytest.raises(ValueError):
        power_matrices(dj2, 0, 0)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_power_matrices_are_scalar_on_isotypic_components(dj2, k):
    for n in (1, 2):
        PM = power_matrices(dj2, k, n)
        for Y in nonzero_tableaux(dj2, k):
            want_t = spectral_power_sums(spectrum(Y.shape, 2, "V", q).mu, n, "t", q)
            want_p = spectral_power_sums(spectrum(Y.shape, 2, "V*", q).mu, n, "p", q)
            assert extract_character(PM.T, Y) == want_t
            assert extract_character(PM.P, Y) == want_p


def test_characters_at_sampled_q_for_n3(dj3_sampled):
    H = dj3_sampled
    for k in range(3):
        for Y in nonzero_tableaux(H, k):
            for n in (1, 2):
                PM = power_matrices(H, k, n)
                assert extract_character(PM.T, Y) == spectral_power_sums(spectrum(Y.shape, 3, "V", H.q).mu, n, "t", H.q)
                assert extract_character(PM.P, Y) == spectral_power_sums(spectrum(Y.shape, 3, "V*", H.q).mu, n, "p", H.q)


def test_characters_of_twisted_symmetry(twisted2):
    H = twisted2
    assert H.m == 2
    for Y in nonzero_tableaux(H, 2):
        PM = power_matrices(H, 2, 2)
        assert extract_character(PM.P, Y) == spectral_power_sums(spectrum(Y.shape, 2, "V*", H.q).mu, 2, "p", H.q)


# -- extract_character --------------------------------------------------------------------

def test_extract_character_simple():
    E = TensorOp.from_dense([[1, 0], [0, 0]], 2)
    M = TensorOp.from_dense([[7, 3], [0, 5]], 2)
    assert extract_character(M, E) == 7


def test_extract_character_rejects_non_scalar():
    E = TensorOp.from_dense([[1, 0], [0, 1]], 2)
    M = TensorOp.from_dense([[1, 0], [0, 2]], 2)
    with pytest.raises(NotScalarError):
        extract_character(M, E)


def test_extract_character_rejects_zero_idempotent():
    with pytest.raises(ValueError):
        extract_character(TensorOp.from_dense([[1, 0], [0, 1]], 2), TensorOp(1, 2))


# -- Newton relations ----------------------------------------------------------------------

generic_q = st.sampled_from([Fraction(3, 2), Fraction(5, 3), Fraction(2, 7), Fraction(11, 4)])
rationals = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@settings(max_examples=40, deadline=None)
@given(qv=generic_q, p=st.lists(rationals, min_size=1, max_size=5))
def test_power_sum_conversions_round_trip(qv, p):
    t = newton_convert("t_from_p", p, qv)
    assert newton_convert("p_from_t", t, qv) == p
    assert newton_convert("a_from_p", p, qv) == newton_convert("a_from_t", t, qv)


@settings(max_examples=30, deadline=None)
@given(
    qv=generic_q,
    mu=st.lists(st.integers(-3, 3), min_size=1, max_size=3, unique=True),
)
def test_newton_against_elementary_symmetric(qv, mu):
    """For a generic spectrum, ``q^n a_n = e_n(mu)`` with ``a_n`` recovered from power sums."""
    spec = [qv ** (2 * e) for e in mu]
    n_max = len(spec) + 1
    p = [spectral_power_sums(spec, n, "p", qv) for n in range(1, n_max + 1)]
    t = [spectral_power_sums(spec, n, "t", qv) for n in range(1, n_max + 1)]
    want = [elementary(spec, n, Fraction(0)) / qv**n for n in range(1, n_max + 1)]
    assert newton_convert("a_from_p", p, qv, m=len(spec)) == want
    assert newton_convert("a_from_t", t, qv, m=len(spec)) == want
    assert newton_convert("p_from_t", t, qv) == p


def test_newton_symbolic_base_case():
    m = 2
    t = [q ** (m * (1 - 2 * n)) * q_int(m, q) for n in range(1, 5)]
    a = newton_convert("a_from_t", t, q, m=m)
    assert a[0] == (q ** (-2) + 1) / q  # e_1(q^-2, 1) / q
    assert a[1] == q ** (-4)  # e_2 / q^2
    assert a[2:] == [0, 0]


def test_newton_detects_excess_elementary():
    with pytest.raises(NewtonError):
        newton_convert("a_from_p", [Fraction(1), Fraction(5)], Fraction(3, 2), m=1)


def test_newton_rejects_bad_input():
    with pytest.raises(ValueError):
        newton_convert("a_from_p", [], Fraction(2))
    with pytest.raises(ValueError):
        newton_convert("nonsense", [Fraction(1)], Fraction(2))


# -- represented generators ---------------------------------------------------------------------

@pytest.mark.parametrize("side", ["V", "V*"])
@pytest.mark.parametrize("k", [0, 1, 2])
def test_generators_satisfy_reflection_equation(dj2, k, side):
    gens = represented_generators(dj2, k, side)
    assert gens.re_residual(dj2.R).is_zero()
    trace = gens.r_trace(dj2.C)
    if side == "V":
        assert trace == power_matrices(dj2, k, 1).T.transpose()
    else:
        assert trace == power_matrices(dj2, k, 1).P


@pytest.mark.parametrize("side", ["V", "V*"])
def test_generators_of_twisted_symmetry(twisted2, side):
    H = twisted2
    gens = represented_generators(H, 2, side)
    assert gens.re_residual(H.R).is_zero()
    want = power_matrices(H, 2, 1).T.transpose() if side == "V" else power_matrices(H, 2, 1).P
    assert gens.r_trace(H.C) == want


def test_generators_reject_bad_arguments(dj2):
    with pytest.raises(ValueError):
        represented_generators(dj2, -1)
    with pytest.raises(ValueError):
        represented_generators(dj2, 1, "W")


# -- Cayley-Hamilton ------------------------------------------------------------------------------

@pytest.mark.parametrize("k", [1, 2, 3])
@pytest.mark.parametrize("side", ["V", "V*"])
def test_cayley_hamilton_dj2(dj2, k, side):
    for Y in nonzero_tableaux(dj2, k):
        assert cayley_hamilton_residual(dj2, k, Y.shape, Y.tableau, side).is_zero()


@pytest.mark.parametrize("side", ["V", "V*"])
def test_cayley_hamilton_twisted(twisted2, side):
    for Y in nonzero_tableaux(twisted2, 2):
        assert cayley_hamilton_residual(twisted2, 2, Y.shape, Y.tableau, side).is_zero()


def test_cayley_hamilton_wrong_spectrum_fails(dj2):
    """Using the spectrum of another shape leaves a nonzero residual."""
    from qmatspec.heckerep import standard_tableaux

    T = standard_tableaux((1, 1))[0]
    L = represented_generators(dj2, 2, "V*").assembled()
    E = young_idempotents(dj2, 2, (1, 1))[0].E
    from qmatspec.tensor import embed

    out = embed(E, 2, 3)
    for mu in spectrum((2,), 2, "V*", q).mu:
        out = L.plus_scalar(-mu) @ out
    assert not out.is_zero()
    assert cayley_hamilton_residual(dj2, 2, (1, 1), T, "V*").is_zero()


def test_cayley_hamilton_shape_mismatch(dj2):
    from qmatspec.heckerep import standard_tableaux

    with pytest.raises(ValueError):
        cayley_hamilton_residual(dj2, 2, (2,), standard_tableaux((1, 1))[0])


# -- recursions --------------------------------------------------------------------------------------

@pytest.mark.parametrize("k,n", [(k, n) for k in range(4) for n in range(1, 4) if k + n <= 5])
def test_monomial_route_agrees(dj2, k, n):
    assert monomial_action_t(dj2, k, n) == power_matrices(dj2, k, n).T


def test_monomial_route_twisted(twisted2):
    for k, n in [(0, 2), (1, 2), (1, 3)]:
        assert monomial_action_t(twisted2, k, n) == power_matrices(twisted2, k, n).T


@pytest.mark.parametrize("k", [1, 2, 3])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_recursions_in_k(dj2, k, n):
    for Y in nonzero_tableaux(dj2, k):
        entries = lemma44_check(dj2, k, n, Y.tableau)
        names = {e["check"] for e in entries}
        assert names == {
            "rj_exchange",
            "p_recursion_matrix",
            "t_recursion_matrix",
            "p_recursion_projected",
            "t_recursion_projected",
        }
        assert all(e["pass"] for e in entries), entries


def test_recursions_twisted(twisted2):
    for Y in nonzero_tableaux(twisted2, 2):
        assert all(e["pass"] for e in lemma44_check(twisted2, 2, 2, Y.tableau))


def test_recursion_rejects_bad_arguments(dj2):
    with pytest.raises(ValueError):
        lemma44_check(dj2, 0, 1)


def test_partition_sweep_size():
    assert sum(len(partitions(k, 2)) for k in range(4)) == 6  # (), 1, 2, 11, 3, 21
