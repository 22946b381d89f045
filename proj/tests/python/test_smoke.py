import pytest

import uskolem


def test_membership_examples():
    r = uskolem.in_s(1053)
    assert r["member"] and r["window"] == 10
    assert r["reps"] == [(2, 523, 7), (2, 521, 11)]
    assert uskolem.in_s(1025)["reason"] == "TooFewReps"
    assert uskolem.in_s(512)["reason"] == "BelowRange"


def test_large_n_round_trips_big_integers():
    n = 2**71 + 123456790
    r = uskolem.in_s(n)
    assert r["window"] == 71
    assert r["reps"] == [(5, 472236648286989212719, 43)]
    assert 5 * 472236648286989212719 + 43 == n
    assert r["certainty"] == "ProbablePrime"


def test_window_and_enumeration():
    p = uskolem.window_params(10)
    assert p["q_primes"] == [2]
    members = [n for n, _ in uskolem.enumerate_window(10)]
    assert 1053 in members
    assert uskolem.enumerate_window(30) == []
    with pytest.raises(ValueError):
        uskolem.window_params(9)


def test_moment_identities():
    for w in (10, 13):
        s = uskolem.moment_scan(w)
        assert s["M1"] == uskolem.first_moment_oracle(w)
        assert s["M2"] == uskolem.second_moment_pair_count(w)
    a = uskolem.moment_scan(20, sample=2000, seed=3)
    b = uskolem.moment_scan(20, sample=2000, seed=3)
    assert a == b


def test_constants_and_pairs():
    c, tail = uskolem.euler_products(10**6)
    assert 1.3202 <= c <= 1.3205 and tail < 1e-5
    cf, _ = uskolem.bh_constant((1, 0), (1, 2))
    assert cf == pytest.approx(c)
    assert uskolem.count_pairs((1, 0), (1, 2), 100) == 8
    assert uskolem.bound_report((1, 0), (1, 2), 10**5)["actual"] == 1224
    assert uskolem.mean_g_check(10**5)["rel_err"] < 0.01


def test_recurrences():
    assert uskolem.term_exact([1, 1], [0, 1], 90) == 2880067194370816120
    assert uskolem.term_mod([1, 1], [0, 1], 10**30, 10**9 + 7) == uskolem.term_mod([1, 1], [0, 1], 10**30, 10**9 + 7)
    assert uskolem.is_degenerate([0, -1], [1, 0]) == (True, 2)
    z = uskolem.find_zeros([4, -4], [-1053, -2104], 2048)
    assert z["zeros"] == [(1053, "Exact")]
    assert uskolem.find_zeros([0, -1], [1, 0], 4096)["zero_progressions"] == [(1, 2)]


def test_cli_entry_point():
    code, out, _ = uskolem.run_cli(["skolem", "member", "1053"])
    assert code == 0 and out.startswith("1053\tmember")
    assert uskolem.run_cli(["nonsense"])[0] == 2
