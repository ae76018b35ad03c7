"""Smoke test for the pylissajous extension module."""

import pylissajous as pl


def main() -> None:
    report = pl.classify(4, -5)
    assert report["level"] == 2
    assert report["slope"] == "0/1"
    assert report["friezeW"] == "dbdpqp"
    assert report["matrix"] == [[10, 3], [3, 1]]
    assert report["cf"]["period"] == [3]

    big = pl.classify(-23, 28)
    assert big["matrix"] == [[31162, -103259], [-103259, 342161]]
    assert big["far_endpoint"] == "(509+5√14933)/338"

    assert pl.from_label(1, "2/3")["input"] == {"m": -11, "n": 16}
    assert pl.type_of(2, "0/1") == (4, -5)
    assert pl.level_slope(-11, 16) == (1, "2/3")
    assert pl.normalize(2, 5) == (-2, -5, 1)
    assert pl.is_collision_free(4, -5) and not pl.is_collision_free(-5, 7)

    h = pl.frieze_h(-11, 16)
    assert str(h) == "bqpqbqpqb"
    w = h * h.second_half()
    assert w == pl.frieze_w(-11, 16)
    assert w.matrix() == [[586, -741], [-741, 937]]
    assert len(w) == 18 and h.is_palindrome()
    assert pl.FriezeWord("qdqpb") == pl.FriezeWord("q")

    cf = pl.continued_fraction(-11, 16)
    assert cf["far_endpoint"] == "(9+5√61)/38"
    assert sorted(cf["period"]) == [1, 1, 1, 3, 3]

    seq = pl.syzygy_sequence(-8, 13, group=True)
    assert seq == "1231312.3123231.2312123.1231312.3123231.2312123"
    assert pl.omega(1, "1/4") == "+++-+++"
    assert pl.christoffel("4/7") == "00100100101"
    assert pl.palindromic_conjugate("00101") == "01010"
    assert pl.braid_w(1, -2) == "ABBAB"
    assert pl.epsilon_bits(4, -5) == "01101001"
    assert pl.itinerary(1, -2) == ["I-", "I+", "III+", "III-", "II-"]
    assert (1, -2) in pl.enumerate_p0(10)
    assert pl.verify("bijection", max_m=30) == (0, pl.verify("bijection", max_m=30)[1])

    try:
        pl.classify(3, 2)
    except pl.LissajousError as e:
        assert "divisible by 3" in str(e)
    else:
        raise AssertionError("expected an error for (3,2)")

    print("smoke test ok")


if __name__ == "__main__":
    main()
