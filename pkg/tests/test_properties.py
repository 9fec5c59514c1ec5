"""
Property-based tests for scores, splicing and parsing
"""
from decimal import Decimal

from django.core.cache import cache
from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from solidity_mutator.engine import MutantStatus, generate_campaign
from solidity_mutator.nodes import Mutation, SourceSpan, splice, visit
from solidity_mutator.operators import OperatorCatalog
from solidity_mutator.parser import parse
from solidity_mutator.reporting import Counts, mutation_score

from .helpers import source

names = st.from_regex(r'[a-z][a-z0-9]{0,6}', fullmatch=True).map(lambda s: 'v_' + s)
integers = st.integers(min_value=0, max_value=10 ** 6).map(str)
booleans = st.sampled_from(['true', 'false'])

STATUSES = [MutantStatus.STILLBORN, MutantStatus.KILLED, MutantStatus.LIVE,
            MutantStatus.TIMED_OUT, MutantStatus.ERROR, MutantStatus.GENERATED]

VALUE_OPERATORS = ['AOR', 'BLR', 'BOR', 'CSC', 'ILR', 'RSD', 'UORD']


@st.composite
def contracts(draw):
    """Small contracts with integer and boolean state and one function using them."""
    variables = draw(st.lists(names, min_size=1, max_size=4, unique=True))
    lines = ['contract Generated {']
    integer_vars = []
    for name in variables:
        if draw(st.booleans()):
            lines.append(f'    uint256 {name} = {draw(integers)};')
            integer_vars.append(name)
        else:
            lines.append(f'    bool {name} = {draw(booleans)};')
    lines.append('    function f(uint256 x) public returns (uint256) {')
    for name in integer_vars:
        operator = draw(st.sampled_from(['+', '-', '*', '/', '%']))
        lines.append(f'        {name} += x {operator} {draw(integers)};')
    lines.append(f'        if (x > {draw(integers)}) {{')
    lines.append('            return x;')
    lines.append('        }')
    lines.append('        return !(x == 0) ? 1 : 0;')
    lines.append('    }')
    lines.append('}')
    return '\n'.join(lines) + '\n'


@st.composite
def edits(draw):
    """A text and a non-identity edit of one of its character ranges."""
    text = draw(st.text(min_size=1, max_size=40))
    start = draw(st.integers(min_value=0, max_value=len(text)))
    end = draw(st.integers(min_value=start, max_value=len(text)))
    replacement = draw(st.text(max_size=10).filter(lambda r: r != text[start:end]))
    return text, start, end, replacement


class ScorePropertyTestCase(SimpleTestCase):
    """Properties of the mutation score"""

    @given(st.integers(min_value=1, max_value=10 ** 6), st.data())
    def test_score_matches_formula(self, non_equivalent, data):
        """Test the rounded score is within rounding distance of the exact ratio"""
        surviving = data.draw(st.integers(min_value=0, max_value=non_equivalent))
        score = mutation_score(non_equivalent, surviving)
        exact = Decimal(non_equivalent - surviving) * 100 / Decimal(non_equivalent)
        self.assertLessEqual(abs(score - exact), Decimal('0.005'))
        self.assertEqual(score.as_tuple().exponent, -2)
        self.assertTrue(Decimal(0) <= score <= Decimal(100))

    @given(st.integers(min_value=0, max_value=1000))
    def test_all_killed_is_full_score(self, non_equivalent):
        """Test zero survivors scores 100, and an empty campaign has no score"""
        score = mutation_score(non_equivalent, 0)
        if non_equivalent == 0:
            self.assertIsNone(score)
        else:
            self.assertEqual(score, Decimal('100.00'))

    @given(st.lists(st.tuples(st.sampled_from(STATUSES), st.booleans()), max_size=50))
    def test_counts_partition_generated(self, records):
        """Test every generated mutant lands in exactly one bucket"""
        counts = Counts()
        for status, equivalent in records:
            counts.record(status, equivalent and status == MutantStatus.LIVE)
        self.assertEqual(
            counts.generated,
            counts.stillborn + counts.killed + counts.live + counts.timed_out + counts.errors + counts.untested,
        )
        self.assertLessEqual(counts.equivalent, counts.live)
        self.assertGreaterEqual(counts.surviving, 0)
        self.assertLessEqual(counts.surviving, counts.non_equivalent)


class SplicePropertyTestCase(SimpleTestCase):
    """Properties of splice"""

    @given(edits())
    def test_splice_changes_only_the_span(self, edit):
        """Test the text before and after the span is preserved"""
        text, start, end, replacement = edit
        byte_start = len(text[:start].encode('utf-8'))
        byte_end = len(text[:end].encode('utf-8'))
        mutation = Mutation('BOR', SourceSpan(byte_start, byte_end), text[start:end], replacement)
        self.assertEqual(splice(text, mutation), text[:start] + replacement + text[end:])


class ParsePropertyTestCase(SimpleTestCase):
    """Properties of parsing and mutant generation over generated contracts"""

    def setUp(self):
        """Clear cache before each test"""
        cache.clear()

    def test_profile_loaded(self):
        """Test the selected Hypothesis profile drops the per-example deadline"""
        self.assertIsNone(settings.default.deadline)
        self.assertIn(settings.default.max_examples, (10, 40))

    @given(contracts())
    def test_parse_is_deterministic(self, text):
        """Test parsing the same text twice gives equal trees and equal visits"""
        first = parse(source(text))
        second = parse(source(text))
        self.assertEqual(first, second)
        self.assertEqual(visit(first, 'Literal'), visit(second, 'Literal'))

    @given(contracts())
    def test_mutants_reparse_and_differ_in_one_region(self, text):
        """Test every mutant parses again and differs from the original only inside its span"""
        cache.clear()
        plan = generate_campaign([source(text)], OperatorCatalog.default(), VALUE_OPERATORS)
        self.assertGreater(len(plan), 0)
        data = text.encode('utf-8')
        for mutant in plan.mutants:
            mutated = plan.mutated_text(mutant).encode('utf-8')
            span = mutant.mutation.span
            self.assertEqual(mutated[:span.start], data[:span.start])
            self.assertEqual(mutated[len(mutated) - (len(data) - span.end):], data[span.end:])
            parse(source(mutated.decode('utf-8')))
