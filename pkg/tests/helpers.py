"""
Shared fixtures for the test suite.
"""
import json
import shutil
import sys
import tempfile
from pathlib import Path

from solidity_mutator.parser import SourceFile

FIXTURES_DIR = Path(__file__).resolve().parent / 'fixtures'
CORPUS_DIR = FIXTURES_DIR / 'corpus'
PYTHON = f'"{sys.executable}"'


def source(text, path='contracts/Sample.sol'):
    return SourceFile(path, text)


def copy_toy_project(parent, **config):
    """
    Copy the toy wallet project into ``parent``.

    Its stand-in toolchain runs on the current interpreter; ``config`` adds
    ``sumo.json`` keys.
    """
    project = Path(parent) / 'toy'
    shutil.copytree(FIXTURES_DIR / 'toy', project)
    settings = {
        'compileCommand': f'{PYTHON} scripts/compile.py',
        'testCommand': f'{PYTHON} scripts/run_checks.py',
        **config,
    }
    (project / 'sumo.json').write_text(json.dumps(settings, indent=2), encoding='utf-8')
    return project


def enable_enhanced_suite(project):
    shutil.copy(FIXTURES_DIR / 'toy' / 'enhanced' / 'event_checks.py', Path(project) / 'checks')


def make_project(parent, files):
    """Write ``{relative path: text}`` into a fresh project directory."""
    project = Path(tempfile.mkdtemp(dir=parent))
    for relative, text in files.items():
        path = project / relative
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding='utf-8')
    return project


SAMPLE_CONTRACT = """\
contract Sample {
    function f() public pure returns (bool) {
        return true;
    }
}
"""

# Stand-in toolchain for SAMPLE_CONTRACT: the build always succeeds and the
# check fails once `return true;` is gone.
BUILD_SCRIPT = """\
import pathlib, sys
text = pathlib.Path('contracts/Sample.sol').read_text()
print('compiling')
sys.exit(1 if 'BROKEN' in text else 0)
"""

CHECK_SCRIPT = """\
import pathlib, sys
text = pathlib.Path('contracts/Sample.sol').read_text()
print('checking')
sys.exit(0 if 'return true;' in text else 1)
"""

FAIL_COMMAND = f'{PYTHON} -c "import sys; print(\'boom\'); sys.exit(3)"'
PASS_COMMAND = f'{PYTHON} -c "pass"'
SLEEP_COMMAND = f'{PYTHON} -c "import time; time.sleep(30)"'


def make_sample_project(parent, **files):
    return make_project(parent, {
        'contracts/Sample.sol': SAMPLE_CONTRACT,
        'build.py': BUILD_SCRIPT,
        'check.py': CHECK_SCRIPT,
        **files,
    })
