import pytest

from fractions import Fraction

from schmidtools.arith.interval import Interval, Ball2, Similarity
from schmidtools.games.alice import (CombineMode, alice_null, alice_meps,
                                     alice_ba1, alice_fn, alice_bad_simplex,
                                     alice_random, ba1_band, ba1_members_meeting,
                                     combine_alice, simplex_constant,
                                     affinely_dependent, fit_hyperplane,
                                     ba1_uniqueness_sweep, simplex_sweep)
from schmidtools.games.bob import (bob_subdivision, bob_construction_survival,
                                   bob_random, subdivision_admissible, subdivide,
                                   never_stuck_sweep)
from schmidtools.games.game import MatchStatus, Transcript, run_match
from schmidtools.games.params import GameParams, Obstacle, Verdict
from schmidtools.sets.cantor import TERNARY


sixth = Fraction(1, 6)
quarter = Fraction(1, 4)


def transcript_at(params, ball):
    transcript = Transcript(params)
    transcript.record_bob(ball, Verdict.ok())
    return transcript


def test_subdivision_admissible():
    check = subdivision_admissible(2, quarter, sixth)
    assert check.admissible
    assert check.equality

    assert not subdivision_admissible(1, Fraction(3, 4), quarter).admissible


def test_subdivide():
    children = subdivide(Interval(0, 1), 3, sixth)

    assert children == [Interval(0, sixth), Interval(Fraction(5, 12), Fraction(7, 12)),
                        Interval(Fraction(5, 6), 1)]


def test_bob_subdivision_invalid():
    with pytest.raises(ValueError):
        bob_subdivision(1, quarter, quarter)
    with pytest.raises(ValueError):
        bob_subdivision(3, Fraction(1, 2), quarter)
    with pytest.raises(ValueError):
        bob_subdivision(2, quarter, Fraction(3, 4))

    assert bob_subdivision(2, quarter, Fraction(3, 4), strict=False).decay == (1, quarter)


def test_alice_meps_params():
    alice = alice_meps(Fraction(1, 49), sixth)

    assert alice.params.alpha == quarter
    assert alice.params.rho == Fraction(2, 49)
    assert alice.params.k == 1


def test_alice_meps_deletes_gap():
    alice = alice_meps(Fraction(1, 49), sixth)
    transcript = transcript_at(alice.params, Interval(Fraction(1, 5), Fraction(3, 5)))

    obstacles = alice.respond(transcript)

    assert len(obstacles) == 1
    assert obstacles[0].hull() == Interval(Fraction(24, 49), Fraction(25, 49))
    assert alice.skips == []


def test_alice_meps_deletes_touching_gap():
    alice = alice_meps(Fraction(1, 49), sixth)
    transcript = transcript_at(alice.params, Interval(0, Fraction(24, 49)))

    obstacles = alice.respond(transcript)

    assert obstacles == [Obstacle.from_interval(Interval(Fraction(24, 49),
                                                         Fraction(25, 49)), turn=0)]


def test_alice_meps_ball_between_gaps():
    # stage-2 interval [600/2401, 24/49] touches the gaps of stages 0 and 1
    alice = alice_meps(Fraction(1, 49), sixth)
    transcript = transcript_at(alice.params, Interval(Fraction(600, 2401),
                                                      Fraction(24, 49)))

    assert alice.respond(transcript) == []


def test_alice_meps_skips_large_gap():
    alice = alice_meps(Fraction(1, 49), sixth)
    x = Fraction(24, 49)
    transcript = transcript_at(alice.params, Interval(x - Fraction(1, 1000),
                                                      x + Fraction(1, 1000)))

    assert alice.respond(transcript) == []
    assert len(alice.skips) == 1
    assert alice.skips[0]["stage"] == 0


def test_alice_meps_large_ball():
    alice = alice_meps(Fraction(1, 49), sixth)

    assert alice.respond(transcript_at(alice.params, Interval(0, 1))) == []


def test_ba1_band():
    assert ba1_band(Fraction(1, 5), quarter, Fraction(1, 100)) == (4, 7)


def test_alice_ba1():
    eps = Fraction(1, 5)
    alice = alice_ba1(eps, quarter)

    assert alice.params.alpha == Fraction(8, 3)
    assert alice.params.rho == Fraction(1, 8)

    ball = Interval(Fraction(2, 5), Fraction(1, 2))
    assert ba1_members_meeting(eps, quarter, ball) == [Interval(Fraction(9, 20),
                                                                Fraction(11, 20))]

    obstacles = alice.respond(transcript_at(alice.params, ball))
    assert [o.point for o in obstacles] == [(Fraction(1, 2),)]

    far = Interval(Fraction(3, 10), Fraction(2, 5))
    assert alice.respond(transcript_at(alice.params, far)) == []


def test_alice_ba1_invalid():
    with pytest.raises(ValueError):
        alice_ba1(Fraction(1, 2), quarter)
    with pytest.raises(ValueError):
        alice_ba1(Fraction(1, 3), Fraction(1, 5))


def test_alice_fn():
    alice = alice_fn(19, Fraction(1, 3))

    assert alice.params.alpha == Fraction(1, 3)
    assert alice.params.rho == sixth
    assert alice.tag == "F_19"

    with pytest.raises(ValueError):
        alice_fn(2, Fraction(1, 5))
    with pytest.raises(ValueError):
        alice_fn(1, Fraction(1, 2))


def test_simplex_constant():
    assert simplex_constant(1) == (Fraction(1, 2), Fraction(1, 2))

    lo, hi = simplex_constant(2)
    assert lo**2 <= Fraction(1, 8) <= hi**2

    with pytest.raises(ValueError):
        simplex_constant(3)


def test_affine_dependence():
    assert affinely_dependent([(0, 0), (1, 1), (2, 2)])
    assert not affinely_dependent([(0, 0), (1, 0), (0, 1)])
    assert affinely_dependent([(0, 0), (1, 0)])


def test_fit_hyperplane():
    points = [(Fraction(0), Fraction(1)), (Fraction(1), Fraction(3))]
    (a, b), c = fit_hyperplane(points)

    assert (a, b) != (0, 0)
    assert all(a * x + b * y == c for x, y in points)


def test_alice_bad_simplex_line():
    alice = alice_bad_simplex(Fraction(1, 100), quarter, 1)

    assert alice.params.alpha == Fraction(2, 23)

    ball = Interval(Fraction(2, 5), Fraction(3, 5))
    obstacles = alice.respond(transcript_at(alice.params, ball))
    assert [o.point for o in obstacles] == [(Fraction(1, 2),)]


def test_alice_bad_simplex_plane():
    alice = alice_bad_simplex(Fraction(1, 100), quarter, 2)
    ball = Ball2((Fraction(1, 2), Fraction(1, 2)), Fraction(1, 10))

    obstacles = alice.respond(transcript_at(alice.params, ball))

    assert len(obstacles) == 1
    assert obstacles[0].carrier == "hyperplane"
    assert obstacles[0].meets(Ball2((Fraction(1, 2), Fraction(1, 2)), 0))


def test_alice_bad_simplex_invalid():
    with pytest.raises(ValueError):
        alice_bad_simplex(Fraction(1, 4), Fraction(1, 4), 1)


def test_promote_and_potential():
    alice = alice_meps(Fraction(1, 49), sixth)
    promoted = alice.promote(alpha=Fraction(1, 2))

    assert promoted.params.alpha == Fraction(1, 2)
    assert promoted.params.rho == alice.params.rho

    with pytest.raises(ValueError):
        alice.promote(alpha=Fraction(1, 8))

    assert alice.as_potential(1).params.as_tuple() == (quarter, sixth, 1, Fraction(2, 49))


def test_combine_absolute():
    params = GameParams.absolute(quarter, sixth, Fraction(1, 24))
    combined = combine_alice([alice_null(params), alice_null(params)],
                             CombineMode.ABSOLUTE_SUM,
                             [Similarity(1, 0), Similarity(2, -1)])

    assert combined.params.as_tuple() == (quarter, sixth, Fraction(1, 12), 2)

    with pytest.raises(ValueError):
        combined.as_potential(1)


def test_combine_potential():
    params = GameParams.potential(quarter, sixth, Fraction(1, 2), Fraction(1, 24))
    combined = combine_alice([alice_null(params)] * 2, "potential-sum")

    assert combined.params.alpha == 1
    assert combined.params.c == Fraction(1, 2)

    params = GameParams.potential(quarter, sixth, 1, Fraction(1, 24))
    combined = combine_alice([alice_null(params)] * 3, CombineMode.POTENTIAL_SUM)
    assert combined.params.alpha == Fraction(3, 4)


def test_combine_invalid():
    a = alice_null(GameParams.absolute(quarter, sixth, 1))
    b = alice_null(GameParams.absolute(quarter, quarter, 1))

    with pytest.raises(ValueError):
        combine_alice([a, b], CombineMode.ABSOLUTE_SUM)
    with pytest.raises(ValueError):
        combine_alice([a], CombineMode.POTENTIAL_SUM)
    with pytest.raises(ValueError):
        combine_alice([], CombineMode.ABSOLUTE_SUM)


def test_combine_pushes_obstacles_forward():
    alice = alice_meps(Fraction(1, 49), sixth)
    g = Similarity(2, 0)
    combined = combine_alice([alice], CombineMode.ABSOLUTE_SUM, [g])

    ball = Interval(Fraction(2, 5), Fraction(6, 5))
    obstacles = combined.respond(transcript_at(combined.params, ball))

    assert [o.hull() for o in obstacles] == [Interval(Fraction(48, 49), Fraction(50, 49))]


def test_alice_random_is_deterministic():
    params = GameParams.absolute(Fraction(1, 5), quarter, Fraction(1, 8), k=2)
    transcript = transcript_at(params, Interval(0, 1))

    first = alice_random(params, seed=3).respond(transcript)
    second = alice_random(params, seed=3).respond(transcript)

    assert first == second
    assert len(first) <= 2


def test_subdivision_against_random_alice():
    k = 2
    beta = Fraction(1, 6)
    alpha = Fraction(9, 10) * (1 - 3 * beta) / k
    params = GameParams.absolute(alpha, beta, beta / 2, k=k)

    result = run_match(params, alice_random(params, seed=7), bob_subdivision(3, beta, alpha),
                       10, budget=0)

    assert result.status is MatchStatus.DEPTH_REACHED
    assert result.cleared


def test_bob_construction_survival():
    params = GameParams.absolute(Fraction(1, 10), Fraction(1, 3), Fraction(1, 6))
    result = run_match(params, alice_null(params), bob_construction_survival(TERNARY), 4)

    assert result.status is MatchStatus.DEPTH_REACHED
    assert result.enclosure == Interval(0, Fraction(1, 81))


def test_bob_random_legal():
    params = GameParams.absolute(Fraction(1, 10), quarter, Fraction(1, 8))
    result = run_match(params, alice_null(params), bob_random(params, seed=2), 5)

    assert result.status is MatchStatus.DEPTH_REACHED
    assert all(b.radius > 0 for b in result.transcript.bob_moves)


def test_never_stuck_sweep():
    rows = never_stuck_sweep(6, seed=1, depth=8)

    assert len(rows) == 6
    assert all(row["status"] == "depth-reached" for row in rows)
    assert all(row["backtracks"] == 0 for row in rows)
    assert all(row["k"] * row["alpha"] + (row["k"] + 1) * row["beta"] < 1 for row in rows)


def test_never_stuck_sweep_families():
    rows = never_stuck_sweep(40, seed=5, depth=4)

    assert all(row["status"] == "depth-reached" for row in rows)
    assert len({(row["k"], row["beta"]) for row in rows}) > 1
    assert any(row["k"] * row["alpha"] + (row["k"] + 1) * row["beta"] < Fraction(9, 10)
               for row in rows)


def test_never_stuck_sweep_processes():
    assert never_stuck_sweep(8, seed=3, depth=4, n_jobs=2) == never_stuck_sweep(8, seed=3,
                                                                              depth=4)


def test_ba1_uniqueness_sweep():
    rows = ba1_uniqueness_sweep(40, seed=1)

    assert len(rows) == 40
    assert all(row["members"] <= 1 for row in rows)
    assert all(row["agrees"] for row in rows)
    assert all((row["eps"] / (1 - row["eps"]))**2 <= row["beta"] < 1 for row in rows)


def test_simplex_sweep():
    rows = simplex_sweep(10, seed=1)

    assert [row["case"] for row in rows] == list(range(10))
    assert all(row["error"] == "" for row in rows)
    assert all(row["obstacles"] <= 1 for row in rows)
