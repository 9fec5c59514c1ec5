"""
Compiles and tests mutants in isolated project copies and classifies them.
"""
import fnmatch
import json
import logging
import os
import shutil
import subprocess
import tempfile
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import psutil

from .engine import CampaignPlan, Mutant, MutantStatus
from .exceptions import BaselineFailure, ConfigError, SandboxError
from .parser import is_within

logger = logging.getLogger(__name__)

COMPILE = 'compile'
TEST = 'test'
SANDBOXES_DIR = 'sandboxes'
DEFAULT_WORK_DIR = '.sumo'
OUTCOMES_FILE = 'outcomes.json'
MUTANT_ID_VARIABLE = 'SUMO_MUTANT_ID'


@dataclass(frozen=True)
class RunnerConfig:
    """How to compile and test a project, and how hard to push it."""

    compile_command: str
    test_command: str
    timeout_seconds: int = 300
    parallelism: int = 1
    log_truncate_bytes: int = 65536
    sandbox_exclude: Tuple[str, ...] = ('node_modules', '.git')
    compile_only: bool = False
    work_path: Optional[Path] = None

    def __post_init__(self) -> None:
        if not self.compile_command.strip():
            raise ConfigError("compileCommand must not be empty")
        if not self.compile_only and not self.test_command.strip():
            raise ConfigError("testCommand must not be empty")
        if self.timeout_seconds < 1:
            raise ConfigError("timeoutSeconds must be at least 1")
        if self.parallelism < 1:
            raise ConfigError("parallelism must be at least 1")
        if self.log_truncate_bytes < 0:
            raise ConfigError("logTruncateBytes must not be negative")


@dataclass(frozen=True)
class CommandResult:
    exit_code: Optional[int]
    output: str
    duration_ms: int
    timed_out: bool

    @property
    def succeeded(self) -> bool:
        return not self.timed_out and self.exit_code == 0


@dataclass(frozen=True)
class RunOutcome:
    """Result of compiling and testing one mutant."""

    mutant_id: str
    phase: str
    exit_code: Optional[int]
    duration_ms: int
    timed_out: bool
    classification: MutantStatus
    log: str = ''

    def to_dict(self) -> Dict[str, Any]:
        return {
            'mutantId': self.mutant_id,
            'phase': self.phase,
            'exitCode': self.exit_code,
            'durationMs': self.duration_ms,
            'timedOut': self.timed_out,
            'classification': str(self.classification),
            'log': self.log,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'RunOutcome':
        return cls(
            mutant_id=data['mutantId'],
            phase=data['phase'],
            exit_code=data.get('exitCode'),
            duration_ms=data.get('durationMs', 0),
            timed_out=data.get('timedOut', False),
            classification=MutantStatus(data['classification']),
            log=data.get('log', ''),
        )


def truncate_log(output: bytes, limit: int) -> str:
    """Keep the last ``limit`` bytes of a command's output."""
    if limit and len(output) > limit:
        omitted = len(output) - limit
        output = f"[... {omitted} bytes omitted ...]\n".encode('utf-8') + output[-limit:]
    return output.decode('utf-8', errors='replace')


def kill_process_tree(pid: int) -> None:
    """Kill a process and every descendant it spawned."""
    try:
        parent = psutil.Process(pid)
    except psutil.NoSuchProcess:
        return
    processes = [parent]
    try:
        processes.extend(parent.children(recursive=True))
    except (psutil.NoSuchProcess, psutil.AccessDenied):
        pass
    for process in reversed(processes):
        try:
            process.kill()
        except (psutil.NoSuchProcess, psutil.AccessDenied):
            pass
    psutil.wait_procs(processes, timeout=5)


def run_command(command: str, cwd: Union[str, Path], timeout: int, limit: int,
                mutant_id: Optional[str] = None) -> CommandResult:
    """
    Run a shell command with stdout and stderr merged.

    Raises:
        SandboxError: If the command cannot be spawned
    """
    env = os.environ.copy()
    if mutant_id is not None:
        env[MUTANT_ID_VARIABLE] = mutant_id
    started = time.monotonic()
    try:
        process = subprocess.Popen(
            command, shell=True, cwd=str(cwd), env=env,
            stdout=subprocess.PIPE, stderr=subprocess.STDOUT,
            start_new_session=True,
        )
    except OSError as e:
        logger.error("Cannot spawn %r in %s: %s", command, cwd, str(e))
        raise SandboxError(f"Cannot run {command!r}: {e}") from e

    timed_out = False
    try:
        output, _ = process.communicate(timeout=timeout)
    except subprocess.TimeoutExpired:
        timed_out = True
        logger.debug("Command %r exceeded %d s, killing it", command, timeout)
        kill_process_tree(process.pid)
        output, _ = process.communicate()
    duration_ms = int((time.monotonic() - started) * 1000)
    return CommandResult(
        exit_code=None if timed_out else process.returncode,
        output=truncate_log(output or b'', limit),
        duration_ms=duration_ms,
        timed_out=timed_out,
    )


def prepare_sandbox(project_dir: Union[str, Path], sandbox: Union[str, Path],
                    exclude: Sequence[str] = (), work_path: Optional[Union[str, Path]] = None) -> Path:
    """
    Copy the project into ``sandbox``.

    Top-level entries matching ``exclude`` are linked instead of copied. The
    work directory (``<project>/.sumo`` unless ``work_path`` is given) is left
    out wherever it sits in the tree.

    Raises:
        SandboxError: If the copy fails
    """
    project_dir = Path(project_dir).resolve()
    sandbox = Path(sandbox)
    work_path = Path(work_path).resolve() if work_path is not None else project_dir / DEFAULT_WORK_DIR

    def linked(name: str) -> bool:
        return any(fnmatch.fnmatch(name, pattern) for pattern in exclude)

    def ignore(directory: str, names: List[str]) -> List[str]:
        parent = Path(directory).resolve()
        top_level = parent == project_dir
        return [name for name in names if is_within(parent / name, work_path) or (top_level and linked(name))]

    try:
        if sandbox.exists():
            shutil.rmtree(sandbox)
        shutil.copytree(project_dir, sandbox, ignore=ignore, symlinks=True)
        for entry in project_dir.iterdir():
            if not is_within(entry, work_path) and linked(entry.name):
                os.symlink(entry, sandbox / entry.name, target_is_directory=entry.is_dir())
    except OSError as e:
        logger.error("Cannot prepare sandbox %s: %s", sandbox, str(e))
        raise SandboxError(f"Cannot prepare sandbox {sandbox}: {e}") from e
    return sandbox


def _work_path(config: RunnerConfig, work_dir: Optional[Union[str, Path]]) -> Optional[Union[str, Path]]:
    return config.work_path if config.work_path is not None else work_dir


def remove_sandbox(sandbox: Union[str, Path]) -> None:
    try:
        shutil.rmtree(sandbox)
    except OSError as e:
        logger.warning("Sandbox cleanup failed for %s: %s", sandbox, str(e))


def baseline_check(config: RunnerConfig, project_dir: Union[str, Path],
                   work_dir: Optional[Union[str, Path]] = None) -> CommandResult:
    """
    Compile and test the unmutated project in a sandbox copy.

    Returns:
        CommandResult: The passing test (or compile, in compile-only mode) run

    Raises:
        BaselineFailure: If the project does not compile or its tests fail
    """
    parent = Path(work_dir) / SANDBOXES_DIR if work_dir is not None else None
    if parent is not None:
        parent.mkdir(parents=True, exist_ok=True)
    sandbox = Path(tempfile.mkdtemp(prefix='baseline-', dir=parent))
    try:
        prepare_sandbox(project_dir, sandbox, config.sandbox_exclude, _work_path(config, work_dir))
        result = run_command(config.compile_command, sandbox, config.timeout_seconds, config.log_truncate_bytes)
        if not result.succeeded:
            logger.error("Baseline compilation failed (exit code %s)", result.exit_code)
            raise BaselineFailure(COMPILE, result.output)
        if config.compile_only:
            logger.info("Baseline compiles")
            return result
        result = run_command(config.test_command, sandbox, config.timeout_seconds, config.log_truncate_bytes)
        if not result.succeeded:
            logger.error("Baseline tests failed (exit code %s)", result.exit_code)
            raise BaselineFailure(TEST, result.output)
    finally:
        remove_sandbox(sandbox)
    logger.info("Baseline passes in %d ms", result.duration_ms)
    return result


def run_mutant(config: RunnerConfig, mutant: Mutant, sandbox: Union[str, Path]) -> RunOutcome:
    """
    Compile and test one mutant in a prepared sandbox.

    A compile failure makes the mutant stillborn and skips the tests. A test
    run exceeding the timeout makes it timed-out.

    Raises:
        SandboxError: If a command cannot be spawned
    """
    compiled = run_command(config.compile_command, sandbox, config.timeout_seconds,
                           config.log_truncate_bytes, mutant.id)
    if compiled.timed_out:
        return RunOutcome(mutant.id, COMPILE, None, compiled.duration_ms, True, MutantStatus.ERROR,
                          f"Compilation exceeded {config.timeout_seconds} s\n{compiled.output}")
    if compiled.exit_code != 0:
        return RunOutcome(mutant.id, COMPILE, compiled.exit_code, compiled.duration_ms, False,
                          MutantStatus.STILLBORN, compiled.output)
    if config.compile_only:
        return RunOutcome(mutant.id, COMPILE, 0, compiled.duration_ms, False, MutantStatus.GENERATED, compiled.output)

    tested = run_command(config.test_command, sandbox, config.timeout_seconds,
                         config.log_truncate_bytes, mutant.id)
    duration_ms = compiled.duration_ms + tested.duration_ms
    if tested.timed_out:
        classification = MutantStatus.TIMED_OUT
    elif tested.exit_code == 0:
        classification = MutantStatus.LIVE
    else:
        classification = MutantStatus.KILLED
    return RunOutcome(mutant.id, TEST, tested.exit_code, duration_ms, tested.timed_out, classification, tested.output)


def _run_isolated(config: RunnerConfig, plan: CampaignPlan, mutant: Mutant,
                  project_dir: Path, work_dir: Path) -> RunOutcome:
    sandbox = work_dir / SANDBOXES_DIR / mutant.id
    try:
        prepare_sandbox(project_dir, sandbox, config.sandbox_exclude, _work_path(config, work_dir))
        try:
            (sandbox / mutant.file).write_text(plan.mutated_text(mutant), encoding='utf-8')
        except OSError as e:
            raise SandboxError(f"Cannot write mutant file {mutant.file}: {e}") from e
        return run_mutant(config, mutant, sandbox)
    except SandboxError as e:
        logger.warning("Infrastructure error for %s: %s", mutant.id, str(e))
        return RunOutcome(mutant.id, COMPILE, None, 0, False, MutantStatus.ERROR, str(e))
    finally:
        remove_sandbox(sandbox)


def run_campaign(config: RunnerConfig, plan: CampaignPlan, project_dir: Union[str, Path],
                 work_dir: Union[str, Path],
                 on_outcome: Optional[Callable[[RunOutcome], None]] = None) -> List[RunOutcome]:
    """
    Run every mutant of a plan, up to ``config.parallelism`` at a time.

    ``on_outcome`` is called from the calling thread as each mutant finishes.
    Mutant statuses in the plan are updated in place.

    Returns:
        List[RunOutcome]: One outcome per mutant, ordered by mutant id
    """
    project_dir = Path(project_dir)
    work_dir = Path(work_dir)
    (work_dir / SANDBOXES_DIR).mkdir(parents=True, exist_ok=True)
    by_id: Dict[str, RunOutcome] = {}
    logger.info("Running %d mutant(s) with parallelism %d", len(plan.mutants), config.parallelism)

    with ThreadPoolExecutor(max_workers=config.parallelism) as pool:
        futures = {
            pool.submit(_run_isolated, config, plan, mutant, project_dir, work_dir): mutant
            for mutant in plan.mutants
        }
        for future in as_completed(futures):
            mutant = futures[future]
            try:
                outcome = future.result()
            except Exception as e:
                logger.exception("Runner crashed on %s", mutant.id)
                outcome = RunOutcome(mutant.id, COMPILE, None, 0, False, MutantStatus.ERROR, str(e))
            mutant.status = outcome.classification
            mutant.run_log = outcome.log
            by_id[mutant.id] = outcome
            if on_outcome is not None:
                on_outcome(outcome)

    outcomes = [by_id[mutant.id] for mutant in sorted(plan.mutants, key=lambda m: m.id_key)]
    errors = sum(1 for outcome in outcomes if outcome.classification == MutantStatus.ERROR)
    if errors:
        logger.warning("%d mutant(s) hit infrastructure errors", errors)
    logger.info("Finished running %d mutant(s)", len(outcomes))
    return outcomes


def save_outcomes(outcomes: Iterable[RunOutcome], work_dir: Union[str, Path]) -> Path:
    path = Path(work_dir) / OUTCOMES_FILE
    try:
        path.write_text(json.dumps([o.to_dict() for o in outcomes], indent=2), encoding='utf-8')
    except OSError as e:
        raise SandboxError(f"Cannot write {path}: {e}") from e
    return path


def load_outcomes(work_dir: Union[str, Path]) -> List[RunOutcome]:
    """
    Raises:
        ConfigError: If the last campaign stored no outcomes
    """
    path = Path(work_dir) / OUTCOMES_FILE
    try:
        return [RunOutcome.from_dict(item) for item in json.loads(path.read_text(encoding='utf-8'))]
    except FileNotFoundError as e:
        raise ConfigError(f"No outcomes found in {work_dir}; run 'test' first") from e
    except (OSError, ValueError, KeyError) as e:
        raise ConfigError(f"Cannot read {path}: {e}") from e
