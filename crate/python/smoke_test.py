"""Smoke test for the bernlab extension module.

Build and install first:  pip install --no-build-isolation ./crates/python
"""

import math

import bernlab


def main():
    tau = bernlab.Algebraic("x^2-x-1")
    assert abs(float(tau) - (1 + math.sqrt(5)) / 2) < 1e-12
    assert tau.classify()["class"] == "pisot"
    assert bernlab.classify("x^3-2x-2")["class"] == "garsia"

    o = bernlab.orbit("tau2", "1/2")
    assert o.closed and len(o) == 5
    lo, hi = o.growth_rate
    assert abs(lo - 2 ** (1 / 3)) < 1e-10 and abs(hi - 2 ** (1 / 3)) < 1e-10
    assert "digraph" in o.to_dot()

    assert bernlab.fibonacci_words(3) == ["10000", "01100", "01011"]

    t, poly = bernlab.t_star("1/3")
    assert abs(t - 0.618034) < 1e-6 and poly == "t^2+t-1"
    assert abs(bernlab.curve("1/3", 0.6) - 0.375) < 1e-12

    (hit,) = bernlab.intersect("4/9", "8/15")
    assert abs(hit["s"] - 0.569840) < 1e-6 and hit["class"] == "pisot"

    h = bernlab.Histogram(0.6, bins=2000)
    assert len(h) == 2000 and abs(sum(h.mass) - 1) < 1e-9
    assert abs(h.cdf(0.5) - 0.5) < 1e-9
    assert h.quantile_residual("1/3") < 2 / 2000 + 5e-3

    assert bernlab.hole_counts("3/7", 8) == [2, 4, 6, 10, 16, 26, 42, 68]

    central = bernlab.central_points(0.5, 0.58, n_max=3)
    assert any(abs(r["t"] - 0.565198) < 1e-6 and r["class"] == "garsia" for r in central)

    try:
        bernlab.classify("x^2-1")
    except ValueError:
        pass
    else:
        raise AssertionError("reducible polynomial accepted")
    try:
        bernlab.t_star("1/4")
    except ValueError:
        pass
    else:
        raise AssertionError("1/4 is not an itinerary")

    print("bernlab smoke test ok")


if __name__ == "__main__":
    main()
