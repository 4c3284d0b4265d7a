"""Smoke test for the graphsep extension. Run after `pip install -e crates/python`."""

import json
from fractions import Fraction

import graphsep


def main():
    c4 = graphsep.Graph.builtin("C4")
    assert c4.n == 4
    assert c4.cut_rank("AB|CD") == 1 and c4.cut_rank("AC|BD") == 2
    assert c4.oracle_max_deviation() < 1e-10

    lower, upper, exact = c4.white_noise_threshold()
    assert exact == "5/13" and lower == upper == exact

    at = graphsep.classify(graphsep.State.white_noise(c4, Fraction(5, 13)))
    assert at.is_biseparable and at.verify() and at.num_terms > 0

    above = graphsep.classify(graphsep.State.white_noise(c4, Fraction(5, 13) + Fraction(1, 10**6)))
    assert above.is_gme and above.verify()
    assert Fraction(above.witness_value) < 0

    path = graphsep.Graph(3, [(0, 1), (1, 2)])
    weights = [Fraction(0)] * 8
    weights[0] = Fraction(3, 4)
    weights[7] = Fraction(1, 4)
    state = graphsep.State(path, weights)
    assert graphsep.State.from_json(state.to_json()).weights() == state.weights()
    verdict = graphsep.classify(state)
    assert verdict.label == "GME"

    noisy = graphsep.State.white_noise(c4, Fraction(1, 2))
    cert = json.loads(graphsep.classify(noisy).to_json())["certificate"]
    valid, value = graphsep.check_witness(json.dumps(cert["witness"]), noisy)
    assert valid and value == cert["value"]

    print("graphsep smoke test passed")


if __name__ == "__main__":
    main()
