from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hkdensity.densityfn import (
    StepFunction,
    convergence_report,
    density_function,
    ehk_estimate,
    integrate,
    sampled_distance,
    sup_norm_diff,
)
from hkdensity.errors import IncompatibleGrids, InfiniteColength
from hkdensity.gradedring import colength, polynomial_ring
from hkdensity.polynomial import Polynomial

from oracles import box_lattice_count, sup_distance_to_irwin_hall

F = Fraction


def P2(text):
    return Polynomial.parse(text, ("x", "y"))


step_functions = st.builds(
    lambda q, vals, off: StepFunction(q, tuple(F(n, q) for n in vals), off),
    st.sampled_from([1, 2, 3, 4, 8, 9]),
    st.lists(st.integers(0, 20), max_size=12),
    st.integers(0, 4),
)


class TestExamples:
    def test_tent_p2(self, plane):
        f = density_function(plane.fiber(2), 1)
        assert f.values == (F(1, 2), F(1), F(1, 2))
        assert f(F(5, 4)) == F(1, 2) and f(F(3, 2)) == 0
        assert integrate(f) == 1

    def test_tent_p3_entry(self, plane):
        assert density_function(plane.fiber(3), 1).at_index(2) == 1

    def test_constant_piece(self, fermat_quartic):
        for p in (3, 5):
            assert density_function(fermat_quartic.fiber(p), 1).at_index(0) == F(1, p)

    def test_tail_view(self, plane):
        t = density_function(plane.fiber(2), 1, "tail")
        assert t.offset == 2 and t.values == (F(1, 2),)
        assert integrate(t) == F(1, 4)
        assert t(F(1, 2)) == 0

    def test_bad_view(self, plane):
        with pytest.raises(ValueError):
            density_function(plane.fiber(2), 1, "middle")

    def test_zero_function(self):
        assert integrate(StepFunction(4, ())) == 0


class TestNorm:
    def test_constant_gap(self):
        f = StepFunction(2, (F(1), F(1)))
        g = StepFunction(4, (F(3, 4),) * 4)
        assert sup_norm_diff(f, g) == F(1, 4)

    def test_incompatible(self):
        with pytest.raises(IncompatibleGrids):
            sup_norm_diff(StepFunction(2, (F(1),)), StepFunction(3, (F(1),)))

    def test_tent_levels_p2(self, plane):
        fib = plane.fiber(2)
        f1, f2 = density_function(fib, 1), density_function(fib, 2)
        # enumerate the 8 cells of the finer grid directly from lattice counts
        expected = max(
            abs(F(box_lattice_count(2, 2, k // 2), 2) - F(box_lattice_count(2, 4, k), 4)) for k in range(8)
        )
        assert sup_norm_diff(f1, f2) == expected == F(1, 4)

    @settings(max_examples=80, deadline=None)
    @given(step_functions, step_functions, step_functions)
    def test_metric_axioms(self, f, g, h):
        try:
            dfg = sup_norm_diff(f, g)
            dgh = sup_norm_diff(g, h)
            dfh = sup_norm_diff(f, h)
        except IncompatibleGrids:
            return
        assert sup_norm_diff(f, f) == 0
        assert dfg == sup_norm_diff(g, f)
        assert dfh <= dfg + dgh

    def test_metric_on_computed_functions(self, plane):
        fib = plane.fiber(2)
        fs = [density_function(fib, n) for n in (1, 2, 3)]
        d = {(i, j): sup_norm_diff(fs[i], fs[j]) for i in range(3) for j in range(3)}
        assert all(d[i, i] == 0 for i in range(3))
        assert d[0, 2] <= d[0, 1] + d[1, 2]

    def test_sampled_distance_identical(self, plane):
        f = density_function(plane.fiber(3), 1)
        assert sampled_distance(f, f) == 0


class TestInvariants:
    @pytest.mark.parametrize("p,n", [(2, 1), (2, 2), (3, 1), (5, 1)])
    def test_lengths_and_views(self, fermat_quartic, p, n):
        fib = fermat_quartic.fiber(p)
        q = p**n
        full, tail = density_function(fib, n), density_function(fib, n, "tail")
        for j, v in full.items():
            assert v >= 0
            assert (v * q ** (fib.d - 1)).denominator == 1
            assert j < fib.support_bound(q)
        for j in range(q, full.end + 1):
            assert tail.at_index(j) == full.at_index(j)
        assert ehk_estimate(fib, n) == integrate(full)

    @pytest.mark.parametrize("v,cases", [(2, [(2, 1), (2, 3), (3, 2), (5, 1)]), (3, [(2, 2), (3, 1), (3, 2)]),
                                         (4, [(2, 1), (3, 1)])])
    def test_polynomial_ring_near_irwin_hall(self, v, cases):
        fib_for = {}
        for p, n in cases:
            fib = fib_for.setdefault(p, polynomial_ring(v).fiber(p))
            q = p**n
            f = density_function(fib, n)
            for j in range(v * q + 2):
                assert f.at_index(j) * q ** (v - 1) == box_lattice_count(v, q, j)
            assert sup_distance_to_irwin_hall(f, v) <= F(2, q)


class TestEstimates:
    @pytest.mark.parametrize("p,n", [(2, 1), (3, 2), (5, 1)])
    def test_regular_ring(self, plane, p, n):
        assert ehk_estimate(plane.fiber(p), n) == 1

    @pytest.mark.parametrize("n", [1, 2])
    def test_squares_ideal(self, n):
        fib = polynomial_ring(2, generators=[P2("x^2"), P2("y^2")]).fiber(2)
        assert colength(fib, n) == 4 * 4**n
        assert ehk_estimate(fib, n) == 4

    def test_infinite_colength(self):
        with pytest.raises(InfiniteColength):
            polynomial_ring(2, generators=[P2("x^2"), P2("x*y")]).fiber(2)


class TestSerialization:
    def test_csv_matches_documented_layout(self, plane):
        f = density_function(plane.fiber(2), 1)
        assert f.to_csv() == "j,x_lo,num,den\n0,0.0,1,2\n1,0.5,1,1\n2,1.0,1,2\n"

    @settings(max_examples=60, deadline=None)
    @given(step_functions)
    def test_round_trips(self, f):
        assert StepFunction.from_json(f.to_json()) == f
        back = StepFunction.from_csv(f.to_csv(), f.q)
        assert all(back.at_index(j) == f.at_index(j) for j in range(f.end + 2))

    def test_meta(self, fermat_quartic):
        f = density_function(fermat_quartic.fiber(3), 1)
        assert f.meta["p"] == 3 and f.meta["d"] == 2 and f.meta["n0"] == 1
        assert f.meta["ring_hash"] == fermat_quartic.content_hash()


class TestReport:
    def test_plane(self, plane):
        rep = convergence_report(plane, [2, 3], 3)
        assert not rep.failures
        for row in rep.rows:
            assert row.norm <= F(1, row.p**row.n)
            assert row.ehk_n == row.ehk_next == 1
        assert all(rep.non_increasing.values())
        assert len(rep.cross_prime) == 3

    def test_single_prime_minimal(self, plane):
        rep = convergence_report(plane, [5], 2)
        assert len(rep.rows) == 1 and rep.decay_exponents[5] is None

    def test_failures_recorded(self):
        pres = polynomial_ring(2, relations=[], generators=[P2("3*x"), P2("y")])
        rep = convergence_report(pres, [2, 3], 2)
        assert set(rep.failures) == {3} and rep.rows_for(2)

    @pytest.mark.parametrize("primes,max_n", [([], 2), ([2], 1)])
    def test_bad_arguments(self, plane, primes, max_n):
        with pytest.raises(ValueError):
            convergence_report(plane, primes, max_n)

    def test_json(self, plane):
        blob = convergence_report(plane, [2], 3).to_json()
        assert blob["rows"][0]["norm"] == {"num": 1, "den": 4}
