"""
Campaign orchestration: mutant generation, deduplication, identity and
materialization of mutant files.
"""
import difflib
import hashlib
import json
import logging
import shutil
import tempfile
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Tuple, Union

from django.core.serializers.json import DjangoJSONEncoder

from .exceptions import ConfigError, MaterializeError, SolidityParseError
from .nodes import Mutation, SourceSpan, line_column, splice
from .operators import OperatorCatalog, TreeIndex, apply_operator
from .parser import SourceFile, parse_file

logger = logging.getLogger(__name__)

MUTANTS_DIR = 'mutants'
CAMPAIGN_FILE = 'campaign.json'


class MutantStatus(str, Enum):
    GENERATED = 'generated'
    STILLBORN = 'stillborn'
    KILLED = 'killed'
    LIVE = 'live'
    TIMED_OUT = 'timed-out'
    EQUIVALENT = 'equivalent'
    ERROR = 'error'

    def __str__(self) -> str:
        return self.value


@dataclass
class Mutant:
    """A generated mutant: one mutation of one target file."""

    id: str
    mutation: Mutation
    line: int
    diff: str
    status: MutantStatus = MutantStatus.GENERATED
    run_log: str = ''

    @property
    def operator(self) -> str:
        return self.mutation.operator

    @property
    def file(self) -> str:
        return self.mutation.file

    @property
    def id_key(self) -> Tuple[str, str, int]:
        """Orders mutants by id: operator, file label, then ordinal."""
        label, _, ordinal = self.id[len(self.operator) + 1:].rpartition('-')
        return self.operator, label, int(ordinal)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'id': self.id,
            'operator': self.operator,
            'file': self.file,
            'line': self.line,
            'start': self.mutation.span.start,
            'end': self.mutation.span.end,
            'original': self.mutation.original,
            'replacement': self.mutation.replacement,
            'nodePath': list(self.mutation.node_path),
            'diff': self.diff,
            'status': str(self.status),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'Mutant':
        mutation = Mutation(
            data['operator'], SourceSpan(data['start'], data['end']),
            data['original'], data['replacement'], data['file'], tuple(data.get('nodePath', ())),
        )
        return cls(data['id'], mutation, data['line'], data['diff'], MutantStatus(data.get('status', 'generated')))


@dataclass
class CampaignPlan:
    """
    The mutants of a campaign, sorted by file path, operator id and ordinal.
    """

    targets: List[SourceFile]
    enabled_operators: List[str]
    mutants: List[Mutant] = field(default_factory=list)
    per_operator_counts: Dict[str, int] = field(default_factory=dict)
    diagnostics: List[str] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.mutants)

    def get(self, mutant_id: str) -> Optional[Mutant]:
        return next((m for m in self.mutants if m.id == mutant_id), None)

    def target(self, path: str) -> SourceFile:
        return next(t for t in self.targets if t.path == path)

    def mutated_text(self, mutant: Mutant) -> str:
        return splice(self.target(mutant.file).text, mutant.mutation)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'targets': [{'path': t.path, 'contentHash': t.content_hash} for t in self.targets],
            'enabledOperators': list(self.enabled_operators),
            'perOperatorCounts': dict(self.per_operator_counts),
            'diagnostics': list(self.diagnostics),
            'mutants': [m.to_dict() for m in self.mutants],
        }


def _file_labels(targets: Iterable[SourceFile]) -> Dict[str, str]:
    """Id label per target: the file stem, or the full relative path when stems collide."""
    targets = list(targets)
    stems = Counter(t.stem for t in targets)
    labels = {}
    for target in targets:
        if stems[target.stem] == 1:
            labels[target.path] = target.stem
        else:
            labels[target.path] = str(Path(target.path).with_suffix('')).replace('\\', '/').replace('/', '_')
    return labels


def unified_diff(path: str, original: str, mutated: str) -> str:
    return ''.join(difflib.unified_diff(
        original.splitlines(keepends=True),
        mutated.splitlines(keepends=True),
        fromfile=f"a/{path}",
        tofile=f"b/{path}",
    ))


def generate_campaign(targets: Iterable[SourceFile], catalog: OperatorCatalog,
                      enabled: Optional[Iterable[str]] = None) -> CampaignPlan:
    """
    Generate the mutants of a campaign.

    Mutants whose mutated file text is identical are generated once; the copy
    from the lexicographically smallest operator id is kept. Files that fail
    to parse are left out and reported in the plan diagnostics.

    Args:
        targets: Files to mutate
        catalog (OperatorCatalog): Operator rules
        enabled: Operator ids to apply, defaults to the catalog's enabled ids

    Returns:
        CampaignPlan: The generated (not yet materialized) mutants
    """
    enabled_ids = sorted(catalog.enabled_ids() if enabled is None else set(enabled))
    catalog.validate(enabled_ids)
    targets = sorted(targets, key=lambda t: t.path)
    labels = _file_labels(targets)

    parsed: List[SourceFile] = []
    diagnostics: List[str] = []
    mutants: List[Mutant] = []
    for target in targets:
        try:
            target = parse_file(target)
        except SolidityParseError as e:
            logger.warning("Excluding %s: %s", target.path, str(e))
            diagnostics.append(str(e) if e.path else f"{target.path}: {e}")
            continue
        parsed.append(target)
        index = TreeIndex(target)
        seen = set()
        for operator_id in enabled_ids:
            ordinal = 0
            for mutation in apply_operator(catalog[operator_id], target, index):
                mutated = splice(target.text, mutation)
                digest = hashlib.sha256(mutated.encode('utf-8')).hexdigest()
                if digest in seen:
                    logger.debug("Dropping duplicate %s mutant at %s:%d", operator_id, target.path, mutation.span.start)
                    continue
                seen.add(digest)
                ordinal += 1
                line, _ = line_column(target.data, mutation.span.start)
                mutants.append(Mutant(
                    id=f"{operator_id}-{labels[target.path]}-{ordinal}",
                    mutation=mutation,
                    line=line,
                    diff=unified_diff(target.path, target.text, mutated),
                ))

    mutants.sort(key=lambda m: (m.file, m.operator, int(m.id.rsplit('-', 1)[1])))
    counts = Counter(m.operator for m in mutants)
    plan = CampaignPlan(
        targets=parsed,
        enabled_operators=enabled_ids,
        mutants=mutants,
        per_operator_counts={operator_id: counts.get(operator_id, 0) for operator_id in enabled_ids},
        diagnostics=diagnostics,
    )
    logger.info("Generated %d mutant(s) from %d file(s) with %d operator(s)",
                len(mutants), len(parsed), len(enabled_ids))
    return plan


def mutant_dir(work_dir: Union[str, Path], mutant: Mutant) -> Path:
    return Path(work_dir) / MUTANTS_DIR / mutant.id


def mutant_file(work_dir: Union[str, Path], mutant: Mutant) -> Path:
    return mutant_dir(work_dir, mutant) / mutant.file


def materialize(plan: CampaignPlan, work_dir: Union[str, Path]) -> Path:
    """
    Write every mutant file and diff under ``work_dir/mutants``.

    An existing mutants directory is replaced as a whole. Project files are
    never touched.

    Returns:
        Path: The mutants directory

    Raises:
        MaterializeError: If the files cannot be written
    """
    work_dir = Path(work_dir)
    target_dir = work_dir / MUTANTS_DIR
    staging = None
    try:
        work_dir.mkdir(parents=True, exist_ok=True)
        staging = Path(tempfile.mkdtemp(prefix='.mutants-', dir=work_dir))
        for mutant in plan.mutants:
            destination = staging / mutant.id / mutant.file
            destination.parent.mkdir(parents=True, exist_ok=True)
            destination.write_text(plan.mutated_text(mutant), encoding='utf-8')
            (staging / f"{mutant.id}.diff").write_text(mutant.diff, encoding='utf-8')
        if target_dir.exists():
            retired = Path(tempfile.mkdtemp(prefix='.retired-', dir=work_dir))
            target_dir.rename(retired / MUTANTS_DIR)
            staging.rename(target_dir)
            shutil.rmtree(retired, ignore_errors=True)
        else:
            staging.rename(target_dir)
    except OSError as e:
        logger.error("Failed to materialize mutants in %s: %s", target_dir, str(e))
        if staging is not None and staging.exists():
            shutil.rmtree(staging, ignore_errors=True)
        raise MaterializeError(f"Cannot write mutants to {target_dir}: {e}") from e

    logger.info("Materialized %d mutant(s) in %s", len(plan.mutants), target_dir)
    return target_dir


def save_plan(plan: CampaignPlan, work_dir: Union[str, Path]) -> Path:
    """Store the plan as ``campaign.json`` so later commands can reuse it."""
    path = Path(work_dir) / CAMPAIGN_FILE
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(plan.to_dict(), indent=2, cls=DjangoJSONEncoder), encoding='utf-8')
    except OSError as e:
        raise MaterializeError(f"Cannot write {path}: {e}") from e
    return path


def load_plan(work_dir: Union[str, Path], project_dir: Union[str, Path]) -> CampaignPlan:
    """
    Load the plan stored by the last campaign.

    Target texts are read back from ``project_dir``; a target that changed
    since the campaign is reported in the diagnostics.

    Raises:
        ConfigError: If there is no stored campaign
    """
    path = Path(work_dir) / CAMPAIGN_FILE
    try:
        data = json.loads(path.read_text(encoding='utf-8'))
    except FileNotFoundError as e:
        raise ConfigError(f"No campaign found in {work_dir}; run 'mutate' or 'test' first") from e
    except (OSError, ValueError) as e:
        raise ConfigError(f"Cannot read {path}: {e}") from e

    diagnostics = list(data.get('diagnostics', []))
    targets: List[SourceFile] = []
    for entry in data.get('targets', []):
        source = Path(project_dir) / entry['path']
        try:
            target = SourceFile(entry['path'], source.read_text(encoding='utf-8'))
        except OSError:
            logger.warning("Campaign target %s is missing", entry['path'])
            diagnostics.append(f"{entry['path']}: missing since the campaign was generated")
            continue
        if target.content_hash != entry.get('contentHash'):
            logger.warning("Campaign target %s changed since generation", entry['path'])
            diagnostics.append(f"{entry['path']}: changed since the campaign was generated")
        targets.append(target)

    return CampaignPlan(
        targets=targets,
        enabled_operators=list(data.get('enabledOperators', [])),
        mutants=[Mutant.from_dict(m) for m in data.get('mutants', [])],
        per_operator_counts=dict(data.get('perOperatorCounts', {})),
        diagnostics=diagnostics,
    )
