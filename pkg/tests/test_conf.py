"""
Tests for configuration loading
"""
import json
import os
import tempfile
from pathlib import Path
from unittest import skipUnless
from unittest.mock import patch

from django.test import SimpleTestCase, override_settings

from solidity_mutator.conf import (
    CONFIG_FILE, HAS_DOTENV, load_config, read_config_file, save_config, set_operator_flags,
)
from solidity_mutator.exceptions import ConfigError, UnknownOperatorError

SUMO_VARIABLES = ('SUMO_COMPILE_COMMAND', 'SUMO_TEST_COMMAND', 'SUMO_TIMEOUT_SECONDS',
                  'SUMO_PARALLELISM', 'SUMO_WORK_DIR')


class ConfigTestCase(SimpleTestCase):
    """Test cases for load_config"""

    def setUp(self):
        """Set up a project directory and a clean environment"""
        self.temp_dir = tempfile.TemporaryDirectory()
        self.addCleanup(self.temp_dir.cleanup)
        self.project = Path(self.temp_dir.name)
        environ = patch.dict(os.environ)
        environ.start()
        self.addCleanup(environ.stop)
        for variable in SUMO_VARIABLES:
            os.environ.pop(variable, None)

    def write_config(self, data):
        text = data if isinstance(data, str) else json.dumps(data)
        (self.project / CONFIG_FILE).write_text(text, encoding='utf-8')

    def test_defaults(self):
        """Test a project without configuration"""
        config = load_config(self.project)
        self.assertEqual(config.project_dir, self.project.resolve())
        self.assertEqual(config.contracts_glob, 'contracts/**/*.sol')
        self.assertEqual(config.parallelism, 1)
        self.assertEqual(config.work_dir, '.sumo')
        self.assertEqual(config.work_path, self.project.resolve() / '.sumo')
        self.assertEqual(config.compile_command, '')
        self.assertFalse(config.compile_only)
        # from tests.settings
        self.assertEqual(config.timeout_seconds, 60)

    @override_settings(SUMO_PARALLELISM=3, SUMO_COMPILE_COMMAND='npx hardhat compile')
    def test_django_settings(self):
        """Test SUMO_* settings"""
        config = load_config(self.project)
        self.assertEqual(config.parallelism, 3)
        self.assertEqual(config.compile_command, 'npx hardhat compile')

    def test_environment_beats_settings(self):
        """Test environment variables win over settings"""
        os.environ['SUMO_TIMEOUT_SECONDS'] = '90'
        self.assertEqual(load_config(self.project).timeout_seconds, 90)

    def test_file_beats_environment(self):
        """Test sumo.json wins over the environment"""
        os.environ['SUMO_TIMEOUT_SECONDS'] = '90'
        self.write_config({'timeoutSeconds': 120, 'skipContracts': ['Migrations.sol']})
        config = load_config(self.project)
        self.assertEqual(config.timeout_seconds, 120)
        self.assertEqual(config.skip_contracts, ['Migrations.sol'])

    def test_overrides_beat_file(self):
        """Test command-line overrides win, and None overrides are ignored"""
        self.write_config({'timeoutSeconds': 120, 'parallelism': 4})
        config = load_config(self.project, {'timeout_seconds': 5, 'parallelism': None})
        self.assertEqual(config.timeout_seconds, 5)
        self.assertEqual(config.parallelism, 4)

    @skipUnless(HAS_DOTENV, "python-dotenv not installed")
    def test_dotenv_file(self):
        """Test variables from the project's .env"""
        (self.project / '.env').write_text('SUMO_TEST_COMMAND=npx hardhat test\n', encoding='utf-8')
        self.assertEqual(load_config(self.project).test_command, 'npx hardhat test')

    @patch('solidity_mutator.conf.HAS_DOTENV', False)
    def test_dotenv_missing(self):
        """Test a .env file is ignored without python-dotenv"""
        (self.project / '.env').write_text('SUMO_TEST_COMMAND=npx hardhat test\n', encoding='utf-8')
        with self.assertLogs('solidity_mutator.conf', 'INFO') as logs:
            config = load_config(self.project)
        self.assertEqual(config.test_command, '')
        self.assertIn('python-dotenv not installed', logs.output[0])

    def test_unknown_key(self):
        """Test keys that are not configuration fields"""
        self.write_config({'timeout': 10})
        with self.assertRaises(ConfigError) as ctx:
            load_config(self.project)
        self.assertIn('timeout', str(ctx.exception))

    def test_invalid_json(self):
        """Test a malformed sumo.json"""
        self.write_config('{"parallelism": ')
        with self.assertRaises(ConfigError):
            load_config(self.project)

    def test_not_an_object(self):
        """Test a sumo.json holding a list"""
        self.write_config([1, 2])
        with self.assertRaises(ConfigError):
            load_config(self.project)

    def test_wrong_types(self):
        """Test mistyped values"""
        for data in ({'parallelism': 'many'}, {'parallelism': True}, {'compileOnly': 'yes'},
                     {'skipContracts': 'Migrations.sol'}, {'operators': {'BLR': 'off'}}):
            with self.subTest(data=data):
                self.write_config(data)
                with self.assertRaises(ConfigError):
                    load_config(self.project)

    def test_numeric_strings_coerced(self):
        """Test integer fields accept numeric strings"""
        self.write_config({'parallelism': '2'})
        self.assertEqual(load_config(self.project).parallelism, 2)

    def test_unknown_operator(self):
        """Test operator flags naming unknown operators"""
        self.write_config({'operators': {'XYZ': False}})
        with self.assertRaises(UnknownOperatorError):
            load_config(self.project)

    def test_limits(self):
        """Test timeout and parallelism must be positive"""
        self.write_config({'timeoutSeconds': 0})
        with self.assertRaises(ConfigError):
            load_config(self.project)
        self.write_config({'parallelism': 0})
        with self.assertRaises(ConfigError):
            load_config(self.project)

    def test_missing_project(self):
        """Test a project directory that does not exist"""
        with self.assertRaises(ConfigError):
            load_config(self.project / 'missing')

    def test_unknown_override(self):
        """Test overrides naming no field"""
        with self.assertRaises(ConfigError):
            load_config(self.project, {'speed': 3})

    def test_operator_flags_select_catalog(self):
        """Test disabled operators in the catalog"""
        self.write_config({'operators': {'FVR': False}})
        catalog = load_config(self.project).catalog()
        self.assertFalse(catalog.is_enabled('FVR'))
        self.assertTrue(catalog.is_enabled('BLR'))

    def test_to_dict_keys(self):
        """Test file-level keys are camelCased"""
        data = load_config(self.project).to_dict()
        self.assertIn('contractsGlob', data)
        self.assertIn('equivalentMutants', data)
        self.assertIn('logTruncateBytes', data)
        self.assertNotIn('projectDir', data)

    def test_save_config(self):
        """Test a saved configuration loads back unchanged"""
        config = load_config(self.project, {'parallelism': 2, 'equivalent_mutants': ['BLR-Token-1']})
        save_config(config)
        self.assertEqual(load_config(self.project), config)

    def test_runner_config(self):
        """Test building the runner configuration"""
        self.write_config({'compileCommand': 'make', 'testCommand': 'make test', 'workDir': 'out/sumo'})
        runner_config = load_config(self.project).runner_config()
        self.assertEqual(runner_config.compile_command, 'make')
        self.assertEqual(runner_config.timeout_seconds, 60)
        self.assertEqual(runner_config.work_path, self.project.resolve() / 'out/sumo')

    def test_runner_config_needs_commands(self):
        """Test missing commands are reported when a run is requested"""
        config = load_config(self.project)
        with self.assertRaises(ConfigError):
            config.runner_config()


class OperatorFlagsTestCase(SimpleTestCase):
    """Test cases for set_operator_flags"""

    def setUp(self):
        """Set up test fixtures"""
        self.temp_dir = tempfile.TemporaryDirectory()
        self.addCleanup(self.temp_dir.cleanup)
        self.project = Path(self.temp_dir.name)

    def test_creates_config_file(self):
        """Test flags are written to a new sumo.json"""
        flags = set_operator_flags(self.project, ['FVR', 'GVR'], False)
        self.assertEqual(flags, {'FVR': False, 'GVR': False})
        self.assertEqual(read_config_file(self.project), {'operators': {'FVR': False, 'GVR': False}})

    def test_other_keys_preserved(self):
        """Test unrelated keys survive"""
        (self.project / CONFIG_FILE).write_text(
            json.dumps({'testCommand': 'npm test', 'operators': {'BLR': False}}), encoding='utf-8'
        )
        set_operator_flags(self.project, ['BLR'], True)
        set_operator_flags(self.project, ['SFI'], False)
        self.assertEqual(
            read_config_file(self.project),
            {'testCommand': 'npm test', 'operators': {'BLR': True, 'SFI': False}},
        )

    def test_unknown_operator(self):
        """Test the file is not touched when an id is unknown"""
        with self.assertRaises(UnknownOperatorError):
            set_operator_flags(self.project, ['BLR', 'XYZ'], False)
        self.assertFalse((self.project / CONFIG_FILE).exists())
