"""
Campaign configuration.

Values are resolved from, lowest to highest precedence: built-in defaults,
Django settings, environment variables, the project's ``sumo.json`` and
explicit overrides (command-line flags).
"""
import json
import logging
import os
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Union

from django.conf import settings

try:
    from dotenv import load_dotenv
    HAS_DOTENV = True
except ImportError:
    HAS_DOTENV = False

from .exceptions import ConfigError
from .operators import OperatorCatalog
from .runner import RunnerConfig

logger = logging.getLogger(__name__)

CONFIG_FILE = 'sumo.json'

# Settings and environment variables, by Config field
SETTING_NAMES = {
    'compile_command': 'SUMO_COMPILE_COMMAND',
    'test_command': 'SUMO_TEST_COMMAND',
    'timeout_seconds': 'SUMO_TIMEOUT_SECONDS',
    'parallelism': 'SUMO_PARALLELISM',
    'work_dir': 'SUMO_WORK_DIR',
}


@dataclass
class Config:
    """Everything a campaign needs to know about a project."""

    project_dir: Path
    contracts_glob: str = 'contracts/**/*.sol'
    skip_contracts: List[str] = field(default_factory=list)
    compile_command: str = ''
    test_command: str = ''
    timeout_seconds: int = 300
    parallelism: int = 1
    operators: Dict[str, bool] = field(default_factory=dict)
    equivalent_mutants: List[str] = field(default_factory=list)
    work_dir: str = '.sumo'
    log_truncate_bytes: int = 65536
    sandbox_exclude: List[str] = field(default_factory=lambda: ['node_modules', '.git'])
    compile_only: bool = False

    @property
    def work_path(self) -> Path:
        return Path(self.project_dir) / self.work_dir

    @property
    def config_path(self) -> Path:
        return Path(self.project_dir) / CONFIG_FILE

    def catalog(self) -> OperatorCatalog:
        return OperatorCatalog.default(self.operators)

    def runner_config(self) -> RunnerConfig:
        """
        Raises:
            ConfigError: If a command is missing or a limit is out of range
        """
        return RunnerConfig(
            compile_command=self.compile_command,
            test_command=self.test_command,
            timeout_seconds=self.timeout_seconds,
            parallelism=self.parallelism,
            log_truncate_bytes=self.log_truncate_bytes,
            sandbox_exclude=tuple(self.sandbox_exclude),
            compile_only=self.compile_only,
            work_path=self.work_path,
        )

    def to_dict(self) -> Dict[str, Any]:
        """The file-level keys, camelCased as in ``sumo.json``."""
        return {camel: _copy(getattr(self, name)) for name, camel in FILE_KEYS.items()}


def _camel(name: str) -> str:
    head, *rest = name.split('_')
    return head + ''.join(part.title() for part in rest)


FILE_KEYS = {f.name: _camel(f.name) for f in fields(Config) if f.name != 'project_dir'}
_FIELDS_BY_KEY = {camel: name for name, camel in FILE_KEYS.items()}
_DEFAULTS = Config(Path('.'))


def _copy(value: Any) -> Any:
    if isinstance(value, list):
        return list(value)
    if isinstance(value, dict):
        return dict(value)
    return value


def _coerce(name: str, value: Any, source: str) -> Any:
    """Check ``value`` against the type of the field's default, converting numeric strings."""
    expected = type(getattr(_DEFAULTS, name))
    if expected is int:
        if isinstance(value, bool):
            raise ConfigError(f"{FILE_KEYS[name]} from {source} must be an integer")
        try:
            return int(value)
        except (TypeError, ValueError) as e:
            raise ConfigError(f"{FILE_KEYS[name]} from {source} must be an integer, got {value!r}") from e
    if expected is bool and not isinstance(value, bool):
        raise ConfigError(f"{FILE_KEYS[name]} from {source} must be true or false")
    if expected is str and not isinstance(value, str):
        raise ConfigError(f"{FILE_KEYS[name]} from {source} must be a string")
    if expected is list:
        if not isinstance(value, list) or not all(isinstance(item, str) for item in value):
            raise ConfigError(f"{FILE_KEYS[name]} from {source} must be a list of strings")
        return list(value)
    if expected is dict:
        if not isinstance(value, dict) or not all(isinstance(flag, bool) for flag in value.values()):
            raise ConfigError(f"{FILE_KEYS[name]} from {source} must map operator ids to true or false")
        return dict(value)
    return value


def _from_settings() -> Dict[str, Any]:
    if not settings.configured:
        return {}
    values = {}
    for name, setting in SETTING_NAMES.items():
        value = getattr(settings, setting, None)
        if value is not None:
            values[name] = _coerce(name, value, f"settings.{setting}")
    return values


def _from_environment(project_dir: Path) -> Dict[str, Any]:
    env_path = project_dir / '.env'
    if env_path.exists():
        if HAS_DOTENV:
            load_dotenv(env_path, override=False)
        else:
            logger.info("python-dotenv not installed, ignoring %s. Install it with: "
                        "pip install django-solidity-mutator[dotenv]", env_path)
    values = {}
    for name, variable in SETTING_NAMES.items():
        value = os.getenv(variable)
        if value:
            values[name] = _coerce(name, value, f"${variable}")
    return values


def read_config_file(project_dir: Union[str, Path]) -> Dict[str, Any]:
    """
    The raw camelCase mapping stored in ``sumo.json``, empty when there is none.

    Raises:
        ConfigError: If the file is not a JSON object
    """
    path = Path(project_dir) / CONFIG_FILE
    try:
        data = json.loads(path.read_text(encoding='utf-8'))
    except FileNotFoundError:
        return {}
    except (OSError, ValueError) as e:
        logger.error("Cannot read %s: %s", path, str(e))
        raise ConfigError(f"Cannot read {path}: {e}") from e
    if not isinstance(data, dict):
        raise ConfigError(f"{path} must contain a JSON object")
    return data


def _from_file(project_dir: Path) -> Dict[str, Any]:
    data = read_config_file(project_dir)
    unknown = sorted(set(data) - set(_FIELDS_BY_KEY))
    if unknown:
        raise ConfigError(f"Unknown key(s) in {CONFIG_FILE}: {', '.join(unknown)}")
    return {_FIELDS_BY_KEY[key]: _coerce(_FIELDS_BY_KEY[key], value, CONFIG_FILE) for key, value in data.items()}


def load_config(project_dir: Union[str, Path], overrides: Optional[Mapping[str, Any]] = None) -> Config:
    """
    Resolve the configuration of a project.

    Args:
        project_dir: Project root, holding ``sumo.json`` and an optional ``.env``
        overrides: Config field values that win over every other source;
            ``None`` values are ignored

    Returns:
        Config: The resolved configuration

    Raises:
        ConfigError: On unknown keys, mistyped values, or out-of-range limits
        UnknownOperatorError: If an operator flag names no known operator
    """
    project_dir = Path(project_dir).resolve()
    if not project_dir.is_dir():
        raise ConfigError(f"Project directory {project_dir} does not exist")

    values: Dict[str, Any] = {}
    values.update(_from_settings())
    values.update(_from_environment(project_dir))
    values.update(_from_file(project_dir))
    for name, value in (overrides or {}).items():
        if name not in FILE_KEYS:
            raise ConfigError(f"Unknown configuration field: {name}")
        if value is not None:
            values[name] = _coerce(name, value, 'the command line')

    config = Config(project_dir=project_dir, **values)
    OperatorCatalog.default().validate(config.operators)
    if config.timeout_seconds < 1:
        raise ConfigError("timeoutSeconds must be at least 1")
    if config.parallelism < 1:
        raise ConfigError("parallelism must be at least 1")
    logger.debug("Loaded configuration for %s: %s", project_dir, config.to_dict())
    return config


def write_config_file(project_dir: Union[str, Path], data: Mapping[str, Any]) -> Path:
    path = Path(project_dir) / CONFIG_FILE
    try:
        path.write_text(json.dumps(dict(data), indent=2) + '\n', encoding='utf-8')
    except OSError as e:
        logger.error("Cannot write %s: %s", path, str(e))
        raise ConfigError(f"Cannot write {path}: {e}") from e
    return path


def save_config(config: Config) -> Path:
    """Write every file-level key of ``config`` to the project's ``sumo.json``."""
    return write_config_file(config.project_dir, config.to_dict())


def set_operator_flags(project_dir: Union[str, Path], operator_ids: List[str], enabled: bool) -> Dict[str, bool]:
    """
    Persist enable flags in ``sumo.json``, leaving its other keys alone.

    Returns:
        Dict[str, bool]: The stored flags

    Raises:
        UnknownOperatorError: If an id names no known operator
    """
    OperatorCatalog.default().validate(operator_ids)
    data = read_config_file(project_dir)
    flags = dict(data.get('operators') or {})
    for operator_id in operator_ids:
        flags[operator_id] = enabled
    data['operators'] = flags
    write_config_file(project_dir, data)
    logger.info("%s operator(s) %s in %s", 'Enabled' if enabled else 'Disabled',
                ', '.join(operator_ids), CONFIG_FILE)
    return flags
