from __future__ import annotations

import itertools
import json
from math import comb

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from hkdensity.errors import BadPrime, DegreeCapExceeded, InfiniteColength, NotStabilized, Overflow
from hkdensity.gradedring import (
    GradedPresentation,
    ModPFiber,
    colength,
    find_n0,
    fit_hilbert_data,
    frobenius_power,
    graded_piece_dim,
    graded_piece_dims,
    hilbert_data,
    hilbert_function_prefix,
    polynomial_ring,
    quotient_dims,
)
from hkdensity.polynomial import Polynomial

from oracles import expand_power_mod_p, standard_monomial_count

P = Polynomial.parse


def P2(text: str) -> Polynomial:
    return Polynomial.parse(text, ("x", "y"))


def gb_hilbert_function(polys: list[Polynomial], nvars: int, p: int, j: int) -> int:
    """Degree-``j`` standard monomials of a sympy Groebner basis over F_p."""
    xs = sympy.symbols(f"v0:{nvars}")
    exprs = [sum(c * sympy.Mul(*[x**e for x, e in zip(xs, m)]) for m, c in f.terms.items()) for f in polys]
    gb = sympy.groebner(exprs, *xs, modulus=p, order="grevlex")
    leads = [sympy.Poly(g, *xs).monoms(order="grevlex")[0] for g in gb.exprs]
    return standard_monomial_count(nvars, leads, j)


class TestPresentation:
    def test_validation(self):
        with pytest.raises(ValueError):
            polynomial_ring(3, relations=[P("x^2 + y")])
        with pytest.raises(ValueError):
            GradedPresentation(2, (), (), 2)
        with pytest.raises(ValueError):
            polynomial_ring(2, dimension=3)

    def test_json_round_trip_and_hash(self, fermat_quartic):
        blob = fermat_quartic.to_json()
        back = GradedPresentation.from_json(json.loads(json.dumps(blob)))
        assert back == fermat_quartic
        assert back.content_hash() == fermat_quartic.content_hash()
        assert polynomial_ring(2).content_hash() != fermat_quartic.content_hash()

    def test_mu_and_degrees(self):
        pres = polynomial_ring(2, generators=[P2("x^2"), P2("x*y"), P2("y^2")])
        assert pres.mu == 3 and pres.generator_degrees == (2, 2, 2)


class TestFiber:
    def test_bad_prime_relation(self):
        pres = polynomial_ring(3, relations=[P("6*x*y")])
        with pytest.raises(BadPrime):
            pres.fiber(3)

    def test_bad_prime_generator(self):
        pres = polynomial_ring(2, generators=[P2("x"), P2("5*y")])
        with pytest.raises(BadPrime):
            pres.fiber(5)

    def test_infinite_colength(self):
        with pytest.raises(InfiniteColength):
            polynomial_ring(2, generators=[P2("x")]).fiber(3)

    @pytest.mark.parametrize(
        "gens,expected",
        [(None, 1), (["x^2", "x*y", "y^2"], 2)],
    )
    def test_n0(self, gens, expected):
        pres = polynomial_ring(2, generators=None if gens is None else [P2(g) for g in gens])
        assert pres.fiber(5).n0 == expected

    def test_n0_quartic(self, fermat_quartic):
        assert fermat_quartic.fiber(5).n0 == 1

    def test_pickle_drops_cache(self, plane):
        import pickle

        f = plane.fiber(3)
        colength(f, 1)
        g = pickle.loads(pickle.dumps(f))
        assert g._cache == {} and colength(g, 1) == 9


class TestFrobenius:
    def test_examples(self):
        assert frobenius_power(polynomial_ring(2, generators=[P2("x + y"), P2("x")]).fiber(2), 1)[0] == P2(
            "x^2 + y^2"
        ).reduce(2)
        fib = polynomial_ring(1, names=("x",)).fiber(3)
        assert frobenius_power(fib, 2)[0].terms == {(9,): 1}
        fib = polynomial_ring(3, generators=[P("x^2 + y*z"), P("x"), P("y"), P("z")]).fiber(5)
        assert frobenius_power(fib, 1)[0] == P("x^10 + y^5*z^5").reduce(5)

    @pytest.mark.parametrize("p,n", [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1)])
    @pytest.mark.parametrize("gen", ["x + y", "2*x^2 + y*z - z^2", "x^2*y + 3*y*z^2"])
    def test_matches_expansion(self, p, n, gen):
        g = P(gen)
        pres = polynomial_ring(3, generators=[g, P("x"), P("y"), P("z")])
        ours = frobenius_power(pres.fiber(p), n)[0]
        assert dict(ours.terms) == expand_power_mod_p(dict(g.reduce(p).terms), 3, p**n, p)
        assert ours.degree == g.degree * p**n

    def test_overflow(self, plane):
        fib = plane.fiber(7, max_degree=100)
        with pytest.raises(Overflow):
            frobenius_power(fib, 3)

    def test_degree_cap(self, plane):
        fib = plane.fiber(2, max_degree=50)
        with pytest.raises(DegreeCapExceeded):
            graded_piece_dim(fib, [], 51)


class TestGradedPieces:
    def test_examples(self, plane):
        fib = plane.fiber(2)
        extra = [P2("x^2"), P2("y^2")]
        assert graded_piece_dim(fib, extra, 1) == 2
        assert graded_piece_dim(fib, extra, 2) == 1
        assert graded_piece_dim(fib, [], 0) == 1

    def test_hilbert_function_examples(self, fermat_quartic):
        assert hilbert_function_prefix(polynomial_ring(3).fiber(5), 3) == [1, 3, 6, 10]
        assert hilbert_function_prefix(fermat_quartic.fiber(5), 6) == [1, 3, 6, 10, 14, 18, 22]
        pres = polynomial_ring(2, relations=[P2("x^2")], dimension=1)
        assert hilbert_function_prefix(pres.fiber(3), 3) == [1, 2, 2, 2]

    @settings(max_examples=30, deadline=None)
    @given(
        st.integers(1, 3),
        st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4)), min_size=1, max_size=4),
        st.sampled_from([2, 3, 5]),
        st.integers(0, 12),
    )
    def test_monomial_ideals_match_enumeration(self, nvars, raw, p, j):
        gens = sorted({g[:nvars] for g in raw if any(g[:nvars])})
        if not gens:
            return
        pres = polynomial_ring(nvars, generators=[Polynomial.variable(i, nvars) for i in range(nvars)],
                               names=("x", "y", "z")[:nvars])
        fib = pres.fiber(p)
        extra = [Polynomial.monomial(g) for g in gens]
        assert graded_piece_dim(fib, extra, j) == standard_monomial_count(nvars, gens, j)

    @pytest.mark.parametrize("p", [2, 3, 5])
    @pytest.mark.parametrize(
        "rels,extra",
        [
            (["x^4 + y^4 + z^4"], ["x^2 + y*z", "y^3"]),
            (["x*y - z^2"], ["x^3 + y^3", "z^2 - x*y + y^2"]),
            ([], ["x^2 + y^2 + z^2", "x*y*z"]),
        ],
    )
    def test_matches_groebner_oracle(self, p, rels, extra):
        rels_p, extra_p = [P(r) for r in rels], [P(e) for e in extra]
        pres = polynomial_ring(3, relations=rels_p, dimension=3 - len(rels_p))
        fib = pres.fiber(p)
        gens = [f.reduce(p) for f in rels_p + extra_p]
        for j in range(9):
            assert graded_piece_dim(fib, extra_p, j) == gb_hilbert_function(gens, 3, p, j)

    @pytest.mark.parametrize("p", [2, 3])
    def test_adding_generators_never_increases(self, fermat_quartic, p):
        fib = fermat_quartic.fiber(p)
        small = [P("x^2"), P("y^3")]
        big = small + [P("x*z + y^2")]
        for j in range(12):
            assert graded_piece_dim(fib, big, j) <= graded_piece_dim(fib, small, j)

    def test_parallel_merge_is_deterministic(self, fermat_quartic):
        fib = fermat_quartic.fiber(3)
        gens = frobenius_power(fib, 1)
        serial = graded_piece_dims(fib, gens, range(8), workers=1)
        assert graded_piece_dims(fib, gens, range(8), workers=2) == serial


class TestColength:
    @pytest.mark.parametrize("p,n,expected", [(3, 1, 9), (2, 2, 16)])
    def test_plane(self, plane, p, n, expected):
        assert colength(plane.fiber(p), n) == expected

    def test_degree_two_ideal(self):
        pres = polynomial_ring(2, generators=[P2("x^2"), P2("x*y"), P2("y^2")])
        fib = pres.fiber(3)
        assert sum(graded_piece_dim(fib, fib.generators, j) for j in range(4)) == 3

    @pytest.mark.parametrize("p,n", [(2, 1), (2, 2), (3, 1), (5, 1)])
    def test_low_degrees_and_support(self, fermat_quartic, p, n):
        fib = fermat_quartic.fiber(p)
        q = p**n
        dims = quotient_dims(fib, n)
        hf = hilbert_function_prefix(fib, q - 1)
        assert dims[:q] == hf
        gens = frobenius_power(fib, n)
        bound = fib.support_bound(q)
        assert len(dims) == bound
        for j in range(bound, bound + fib.d + 2):
            assert graded_piece_dim(fib, gens, j) == 0
        # and the early stop did not hide anything below the bound
        for j in range(bound):
            assert dims[j] == graded_piece_dim(fib, gens, j)

    def test_non_maximal_ideal_support(self):
        pres = polynomial_ring(2, generators=[P2("x^2"), P2("y^2")])
        fib = pres.fiber(3)
        dims = quotient_dims(fib, 1)
        assert sum(dims) == 36  # exponents below 6 in each variable


class TestHilbertData:
    @pytest.mark.parametrize("v", [2, 3, 4])
    def test_polynomial_rings(self, v):
        hd = hilbert_data(polynomial_ring(v).fiber(5))
        assert hd.e == (1,) + (0,) * v

    def test_quartic(self, fermat_quartic):
        hd = hilbert_data(fermat_quartic.fiber(5))
        assert hd.e[:2] == (4, 6)
        for m in range(hd.stable_from, hd.stable_from + 5):
            assert hd(m) == sum(hilbert_function_prefix(fermat_quartic.fiber(5), m + 1)[:m])

    def test_constant_sequence(self):
        assert fit_hilbert_data([5] * 12, 1).e0 == 5

    def test_wrong_dimension(self):
        # k[x, y, z] declared as a curve: cumulative sums are cubic, so no
        # quadratic window fits
        with pytest.raises(NotStabilized):
            fit_hilbert_data([comb(j + 2, 2) for j in range(20)], 2)

    def test_stable_from_extends_down(self):
        vals = [1, 3, 6, 10, 14, 18, 22, 26, 30, 34, 38, 42]
        hd = fit_hilbert_data(vals, 2)
        sums = list(itertools.accumulate([0] + vals))
        for m in range(hd.stable_from, len(sums)):
            assert hd(m) == sums[m]
        assert hd.stable_from <= 3
