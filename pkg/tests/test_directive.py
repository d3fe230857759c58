"""
Directive word tests
====================

Letter access, the multiplicative form, P(k) / j(k), regularity detection and the
textual grammar.
"""

import pytest

from directive import DirectiveWord, MultiplicativeEntry, parse_directive
from errors import InvalidArgumentError, SpecParseError


@pytest.fixture
def three_ones() -> DirectiveWord:
    """regular(2, a = 3, 1, 1, ...), i.e. 0^3 1 0 1 0 ..."""
    return DirectiveWord.regular(2, ((3,), (1,)))


@pytest.mark.unit
class TestLetters:
    """y_n and the run decomposition."""

    def test_letter_access(self, tribonacci, three_letter, three_ones):
        assert tribonacci.letter(4) == 0
        assert three_letter.letter(3) == 1
        assert three_ones.letter(3) == 0
        assert three_ones.letter(4) == 1

    def test_multiplicative_entries(self, tribonacci, three_letter, three_ones):
        assert three_letter.multiplicative(2) == MultiplicativeEntry(k=2, x=1, a=2, r=4)
        assert tribonacci.multiplicative(3) == MultiplicativeEntry(k=3, x=2, a=1, r=3)
        assert three_ones.multiplicative(1) == MultiplicativeEntry(k=1, x=0, a=3, r=3)

    def test_runs_reproduce_the_word(self, reference_systems, three_ones):
        for delta in reference_systems + [three_ones]:
            rebuilt = []
            for k in range(1, 40):
                rebuilt.extend([delta.x(k)] * delta.a(k))
            assert rebuilt == [delta.letter(n) for n in range(1, len(rebuilt) + 1)]

    def test_consecutive_runs_differ_and_r_accumulates(self, reference_systems):
        for delta in reference_systems:
            for k in range(1, 30):
                assert delta.x(k) != delta.x(k + 1)
                assert delta.r(k) - delta.r(k - 1) == delta.a(k)
        assert reference_systems[0].r(0) == 0

    def test_run_of(self, three_letter):
        assert [three_letter.run_of(n) for n in range(1, 7)] == [1, 1, 2, 2, 3, 3]

    @pytest.mark.edge_case
    def test_position_zero_rejected(self, fibonacci):
        with pytest.raises(InvalidArgumentError):
            fibonacci.letter(0)


@pytest.mark.unit
class TestPAndJ:
    """P(k) on positions and j(k) on runs."""

    def test_pfun(self, tribonacci, fibonacci):
        assert tribonacci.pfun(4) == 1
        assert tribonacci.pfun(1) is None
        assert fibonacci.pfun(3) == 1

    def test_jfun_examples(self, tribonacci):
        assert tribonacci.jfun(3) == 1
        assert tribonacci.jfun(2) is None

    def test_jfun_regular_formula(self, reference_systems):
        for delta in reference_systems:
            d = delta.regular_period
            for k in range(1, 40):
                assert delta.jfun(k) == (k - d + 1 if k >= d else None)

    def test_jfun_defined_iff_p_exists(self, fibonacci, tribonacci):
        irregular = parse_directive("periodic:0|0102")
        for delta in (fibonacci, tribonacci, irregular):
            for k in range(1, 20):
                assert (delta.jfun(k) is None) == (delta.pfun(delta.r(k) + 1) is None)


@pytest.mark.unit
class TestRegularity:
    """Detection of regular directive words."""

    def test_detect_regular(self, three_letter, fibonacci):
        assert three_letter.detect_regular() == 3
        assert fibonacci.detect_regular() == 2
        assert parse_directive("periodic:|0102").detect_regular() is None

    def test_regular_constructor(self):
        delta = DirectiveWord.regular(3, ((), (2,)))
        assert delta.regular_period == 3
        assert [delta.x(k) for k in range(1, 7)] == [0, 1, 2, 0, 1, 2]
        assert delta.a(5) == 2

    def test_bounded_and_unbounded_quotients(self, three_letter):
        assert not three_letter.has_unbounded_quotients()
        assert three_letter.max_partial_quotient() == 2
        stream = DirectiveWord.regular(2, lambda k: k)
        assert stream.is_stream
        assert stream.has_unbounded_quotients()
        assert stream.run_structure() is None

    def test_infinite_letters(self):
        delta = parse_directive("periodic:2|01")
        assert delta.infinite_letters() == frozenset({0, 1})
        assert delta.d == 2


@pytest.mark.edge_case
class TestGrammar:
    """`periodic:` and `regular:` specifications."""

    def test_roundtrip_text(self):
        assert str(parse_directive("periodic:|001122")) == "periodic:|001122"
        assert str(parse_directive("regular:d=3;a=|2")) == "regular:d=3;a=|2"

    def test_regular_with_preperiod(self):
        delta = parse_directive("regular:d=2;a=3|1")
        assert [delta.a(k) for k in range(1, 5)] == [3, 1, 1, 1]

    def test_streamed_quotients(self):
        delta = parse_directive("regular:d=2;a=k")
        assert [delta.a(k) for k in range(1, 5)] == [1, 2, 3, 4]

    def test_largest_grammar_alphabet(self):
        delta = parse_directive("regular:d=10;a=|1")
        assert delta.alphabet == 10
        assert [delta.letter(i) for i in range(1, 12)] == list(range(10)) + [0]

    @pytest.mark.parametrize("spec", [
        "periodic:001122",
        "periodic:|",
        "periodic:|0a1",
        "periodic:0|1",
        "regular:d=3",
        "regular:d=1;a=|1",
        "regular:d=2;a=|0",
        "regular:d=11;a=|1",
        "sturmian:|01",
    ])
    def test_rejected_specs(self, spec):
        with pytest.raises(SpecParseError):
            parse_directive(spec)

    def test_eventually_constant_rejected_by_constructor(self):
        with pytest.raises(InvalidArgumentError):
            DirectiveWord.eventually_periodic((0, 1), (1, 1))
