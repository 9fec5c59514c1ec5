"""
Mutation score computation and campaign reports.
"""
import json
import logging
from dataclasses import dataclass, field, fields
from datetime import datetime
from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Tuple, Union

from django.core.serializers.json import DjangoJSONEncoder
from django.template import Context, Engine
from django.utils import timezone

from . import __version__
from .engine import CampaignPlan, MutantStatus
from .exceptions import EquivalentNotLiveError, InvalidCountsError, ReportError, UnknownEquivalentIdError
from .operators import OperatorCatalog
from .operators.tables import SOLIDITY
from .runner import RunOutcome

logger = logging.getLogger(__name__)

REPORT_JSON = 'report.json'
REPORT_MARKDOWN = 'report.md'
DIFF_EXCERPT_LINES = 20
TEMPLATES_DIR = Path(__file__).resolve().parent / 'templates'

_STATUS_FIELDS = {
    MutantStatus.STILLBORN: 'stillborn',
    MutantStatus.KILLED: 'killed',
    MutantStatus.LIVE: 'live',
    MutantStatus.TIMED_OUT: 'timed_out',
    MutantStatus.ERROR: 'errors',
    MutantStatus.GENERATED: 'untested',
}


def mutation_score(non_equivalent: int, surviving: int) -> Optional[Decimal]:
    """
    Percentage of non-equivalent mutants that were killed.

    Args:
        non_equivalent (int): Mutants that compiled, ran and are not equivalent
        surviving (int): Non-equivalent mutants the tests did not kill

    Returns:
        Optional[Decimal]: Score rounded to 2 decimal places, None when there
        are no non-equivalent mutants

    Raises:
        InvalidCountsError: If the counts are negative or surviving exceeds non_equivalent
    """
    if non_equivalent < 0 or surviving < 0 or surviving > non_equivalent:
        raise InvalidCountsError(
            f"Invalid counts: non-equivalent={non_equivalent}, surviving={surviving}"
        )
    if non_equivalent == 0:
        return None
    score = Decimal(non_equivalent - surviving) * 100 / Decimal(non_equivalent)
    return score.quantize(Decimal('0.01'), rounding=ROUND_HALF_UP)


def format_score(score: Optional[Decimal]) -> str:
    return 'n/a' if score is None else f"{score}"


@dataclass
class Counts:
    """Mutant tallies. ``equivalent`` is a subset of ``live``."""

    generated: int = 0
    stillborn: int = 0
    killed: int = 0
    live: int = 0
    timed_out: int = 0
    equivalent: int = 0
    errors: int = 0
    untested: int = 0

    def record(self, status: MutantStatus, equivalent: bool = False) -> None:
        self.generated += 1
        name = _STATUS_FIELDS[status]
        setattr(self, name, getattr(self, name) + 1)
        if equivalent:
            self.equivalent += 1

    def __add__(self, other: 'Counts') -> 'Counts':
        return Counts(**{f.name: getattr(self, f.name) + getattr(other, f.name) for f in fields(self)})

    @property
    def non_equivalent(self) -> int:
        return self.generated - self.stillborn - self.errors - self.untested - self.equivalent

    @property
    def surviving(self) -> int:
        return self.live - self.equivalent

    @property
    def score(self) -> Optional[Decimal]:
        return mutation_score(self.non_equivalent, self.surviving)

    def to_dict(self) -> Dict[str, int]:
        return {
            'generated': self.generated,
            'stillborn': self.stillborn,
            'killed': self.killed,
            'live': self.live,
            'timedOut': self.timed_out,
            'equivalent': self.equivalent,
            'errors': self.errors,
            'untested': self.untested,
        }


def total(counts: Iterable[Counts]) -> Counts:
    return sum(counts, Counts())


@dataclass(frozen=True)
class Survivor:
    mutant_id: str
    file: str
    line: int
    operator: str
    diff: str

    def to_dict(self) -> Dict[str, Any]:
        return {
            'mutantId': self.mutant_id,
            'file': self.file,
            'line': self.line,
            'operator': self.operator,
            'diff': self.diff,
        }


@dataclass
class CampaignReport:
    """Everything written to report.json and report.md."""

    per_operator: Dict[str, Counts]
    per_file: Dict[str, Counts]
    totals: Counts
    solidity_totals: Counts
    survivors: List[Survivor]
    operator_names: Dict[str, str] = field(default_factory=dict)
    operator_categories: Dict[str, str] = field(default_factory=dict)
    config: Dict[str, Any] = field(default_factory=dict)
    diagnostics: List[str] = field(default_factory=list)
    generated_at: datetime = field(default_factory=timezone.now)
    version: str = __version__

    @property
    def mutation_score_all(self) -> Optional[Decimal]:
        return self.totals.score

    @property
    def mutation_score_solidity(self) -> Optional[Decimal]:
        return self.solidity_totals.score

    def to_dict(self) -> Dict[str, Any]:
        def as_number(score: Optional[Decimal]) -> Optional[float]:
            return None if score is None else float(score)

        return {
            'version': self.version,
            'generatedAt': self.generated_at,
            'config': self.config,
            'perOperator': {op: counts.to_dict() for op, counts in self.per_operator.items()},
            'perFile': {path: counts.to_dict() for path, counts in self.per_file.items()},
            'totals': self.totals.to_dict(),
            'mutationScoreAll': as_number(self.mutation_score_all),
            'mutationScoreSolidity': as_number(self.mutation_score_solidity),
            'survivors': [survivor.to_dict() for survivor in self.survivors],
            'diagnostics': list(self.diagnostics),
        }


def diff_excerpt(diff: str, limit: int = DIFF_EXCERPT_LINES) -> str:
    """The diff without its file header, cut to ``limit`` lines."""
    lines = [line for line in diff.splitlines() if not line.startswith(('--- ', '+++ '))]
    if len(lines) > limit:
        lines = lines[:limit] + ['...']
    return '\n'.join(lines)


def build_report(plan: CampaignPlan, outcomes: Iterable[RunOutcome], equivalent_ids: Iterable[str],
                 catalog: OperatorCatalog, config: Optional[Dict[str, Any]] = None) -> CampaignReport:
    """
    Aggregate run outcomes into a campaign report.

    Mutants without an outcome count as untested.

    Raises:
        UnknownEquivalentIdError: If a declared equivalent id is not in the plan
        EquivalentNotLiveError: If a declared equivalent mutant was not live
    """
    by_id = {outcome.mutant_id: outcome for outcome in outcomes}
    equivalent = set(equivalent_ids)
    plan_ids = {mutant.id for mutant in plan.mutants}

    unknown = sorted(equivalent - plan_ids)
    if unknown:
        raise UnknownEquivalentIdError(f"Unknown equivalent mutant id(s): {', '.join(unknown)}")
    for mutant_id in sorted(equivalent):
        outcome = by_id.get(mutant_id)
        status = outcome.classification if outcome else MutantStatus.GENERATED
        if status != MutantStatus.LIVE:
            raise EquivalentNotLiveError(f"Mutant {mutant_id} is {status}, only live mutants can be equivalent")
    stray = set(by_id) - plan_ids
    if stray:
        logger.warning("Ignoring %d outcome(s) for mutants not in the campaign", len(stray))

    operator_ids = [op for op in catalog.ids() if op in set(plan.enabled_operators) | {m.operator for m in plan.mutants}]
    per_operator = {op: Counts() for op in operator_ids}
    per_file = {target.path: Counts() for target in plan.targets}
    survivors: List[Survivor] = []
    for mutant in plan.mutants:
        outcome = by_id.get(mutant.id)
        status = outcome.classification if outcome else MutantStatus.GENERATED
        is_equivalent = mutant.id in equivalent
        per_operator.setdefault(mutant.operator, Counts()).record(status, is_equivalent)
        per_file.setdefault(mutant.file, Counts()).record(status, is_equivalent)
        if status == MutantStatus.LIVE and not is_equivalent:
            survivors.append(Survivor(mutant.id, mutant.file, mutant.line, mutant.operator, diff_excerpt(mutant.diff)))

    report = CampaignReport(
        per_operator=per_operator,
        per_file=per_file,
        totals=total(per_operator.values()),
        solidity_totals=total(
            counts for op, counts in per_operator.items() if catalog.category_of(op) == SOLIDITY
        ),
        survivors=survivors,
        operator_names={op: catalog[op].name for op in per_operator},
        operator_categories={op: catalog.category_of(op) for op in per_operator},
        config=dict(config or {}),
        diagnostics=list(plan.diagnostics),
    )
    logger.info("Mutation score: %s (Solidity-specific: %s)",
                format_score(report.mutation_score_all), format_score(report.mutation_score_solidity))
    return report


def _markdown_context(report: CampaignReport) -> Dict[str, Any]:
    rows = [
        {'id': op, 'name': report.operator_names.get(op, op),
         'category': report.operator_categories.get(op, ''), **counts.to_dict()}
        for op, counts in report.per_operator.items()
    ]
    files = [{'path': path, **counts.to_dict()} for path, counts in report.per_file.items()]
    return {
        'version': report.version,
        'generated_at': report.generated_at.isoformat(),
        'rows': rows,
        'files': files,
        'totals': report.totals.to_dict(),
        'score_all': format_score(report.mutation_score_all),
        'score_solidity': format_score(report.mutation_score_solidity),
        'survivors': report.survivors,
        'diagnostics': report.diagnostics,
    }


def render_markdown(report: CampaignReport) -> str:
    engine = Engine(dirs=[str(TEMPLATES_DIR)], autoescape=False)
    template = engine.get_template('solidity_mutator/report.md')
    return template.render(Context(_markdown_context(report), autoescape=False))


def render_reports(report: CampaignReport, work_dir: Union[str, Path]) -> Tuple[Path, Path]:
    """
    Write report.json and report.md into ``work_dir``.

    Raises:
        ReportError: If the files cannot be written
    """
    work_dir = Path(work_dir)
    json_path = work_dir / REPORT_JSON
    markdown_path = work_dir / REPORT_MARKDOWN
    try:
        work_dir.mkdir(parents=True, exist_ok=True)
        json_path.write_text(
            json.dumps(report.to_dict(), indent=2, cls=DjangoJSONEncoder, ensure_ascii=False),
            encoding='utf-8',
        )
        markdown_path.write_text(render_markdown(report), encoding='utf-8')
    except OSError as e:
        logger.error("Failed to write reports to %s: %s", work_dir, str(e))
        raise ReportError(f"Cannot write reports to {work_dir}: {e}") from e
    logger.info("Reports written to %s", work_dir)
    return json_path, markdown_path
