"""
Django management command driving mutation testing campaigns.

Usage:
    python manage.py sumo <subcommand> [options]

Example:
    python manage.py sumo preflight --project-dir ../token
    python manage.py sumo test --project-dir ../token --parallelism 4
"""
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from solidity_mutator.conf import load_config, set_operator_flags
from solidity_mutator.engine import generate_campaign, load_plan, materialize, save_plan
from solidity_mutator.exceptions import (
    BaselineFailure,
    ConfigError,
    EmptyTargetSetError,
    EquivalentNotLiveError,
    SolidityMutatorError,
    SolidityParseError,
    UnknownEquivalentIdError,
)
from solidity_mutator.operators import CATEGORIES
from solidity_mutator.parser import discover_targets
from solidity_mutator.reporting import build_report, format_score, render_reports
from solidity_mutator.runner import baseline_check, load_outcomes, run_campaign, save_outcomes

# Exit status for configuration and parse problems; baseline failures exit with 1
FATAL_CONFIG = 2
BASELINE_FAILED = 1


class Command(BaseCommand):
    help = 'Mutation testing for Solidity smart contracts'

    def add_arguments(self, parser):
        subparsers = parser.add_subparsers(dest='subcommand', metavar='subcommand')
        subparsers.required = True

        listing = subparsers.add_parser('list-operators', help='List the mutation operators')
        self._add_project_arguments(listing)
        listing.add_argument(
            '--category',
            choices=CATEGORIES,
            help='Only list operators of this category'
        )

        for name, verb in (('enable', 'Enable'), ('disable', 'Disable')):
            toggle = subparsers.add_parser(name, help=f'{verb} mutation operators in sumo.json')
            self._add_project_arguments(toggle)
            toggle.add_argument(
                'operator_ids',
                nargs='+',
                metavar='ID',
                help='Operator ids (e.g., BLR, FVR)'
            )

        preflight = subparsers.add_parser('preflight', help='Count the mutants each operator would generate')
        self._add_project_arguments(preflight)
        self._add_target_arguments(preflight)

        mutate = subparsers.add_parser('mutate', help='Generate and save mutants without running them')
        self._add_project_arguments(mutate)
        self._add_target_arguments(mutate)

        test = subparsers.add_parser('test', help='Run a full mutation testing campaign')
        self._add_project_arguments(test)
        self._add_target_arguments(test)
        test.add_argument('--compile-command', help='Shell command compiling the project')
        test.add_argument('--test-command', help='Shell command running the test suite')
        test.add_argument('--timeout', type=int, dest='timeout_seconds', help='Per-command timeout in seconds')
        test.add_argument('--parallelism', type=int, help='Mutants run at the same time')
        test.add_argument(
            '--compile-only',
            action='store_true',
            default=None,
            help='Only compile mutants; skip the tests'
        )

        report = subparsers.add_parser('report', help="Re-render the reports of the last campaign")
        self._add_project_arguments(report)

    def _add_project_arguments(self, parser):
        parser.add_argument(
            '--project-dir',
            default='.',
            help='Project root holding sumo.json (default: current directory)'
        )
        parser.add_argument('--work-dir', help='Directory for mutants and reports, relative to the project')

    def _add_target_arguments(self, parser):
        parser.add_argument('--contracts', dest='contracts_glob', help='Glob selecting the contracts to mutate')
        parser.add_argument(
            '--skip',
            dest='skip_contracts',
            action='append',
            metavar='NAME',
            help='Contract file name or glob to leave out (repeatable)'
        )

    def handle(self, *args, **options):
        handler = getattr(self, 'handle_' + options['subcommand'].replace('-', '_'))
        try:
            handler(options)
        except BaselineFailure as e:
            self.stderr.write(e.log)
            raise CommandError(f"Baseline {e.phase} failed; no mutants were run", returncode=BASELINE_FAILED)
        except (ConfigError, SolidityParseError, EmptyTargetSetError,
                UnknownEquivalentIdError, EquivalentNotLiveError) as e:
            raise CommandError(str(e), returncode=FATAL_CONFIG)
        except SolidityMutatorError as e:
            raise CommandError(f"Campaign error: {e}", returncode=BASELINE_FAILED)

    def load_config(self, options):
        overrides = {
            key: options.get(key)
            for key in ('work_dir', 'contracts_glob', 'skip_contracts', 'compile_command',
                        'test_command', 'timeout_seconds', 'parallelism', 'compile_only')
        }
        return load_config(Path(options['project_dir']), overrides)

    def handle_list_operators(self, options):
        config = self.load_config(options)
        catalog = config.catalog()
        rules = [rule for rule in catalog if options['category'] in (None, rule.category)]
        width = max(len(rule.name) for rule in rules)

        self.stdout.write(self.style.SUCCESS("Mutation operators:"))
        self.stdout.write(f"  {'ID':<5} {'Name':<{width}}  {'Category':<9} {'Novel':<6} Status")
        for rule in rules:
            status = 'enabled' if catalog.is_enabled(rule.id) else 'disabled'
            self.stdout.write(
                f"  {rule.id:<5} {rule.name:<{width}}  {rule.category:<9} {'yes' if rule.novel else 'no':<6} {status}"
            )
        self.stdout.write(f"\nTotal: {len(rules)} operators, {sum(catalog.is_enabled(r.id) for r in rules)} enabled")

    def handle_enable(self, options):
        self._toggle(options, True)

    def handle_disable(self, options):
        self._toggle(options, False)

    def _toggle(self, options, enabled):
        operator_ids = [operator_id.upper() for operator_id in options['operator_ids']]
        set_operator_flags(Path(options['project_dir']), operator_ids, enabled)
        self.stdout.write(
            self.style.SUCCESS(f"{'Enabled' if enabled else 'Disabled'}: {', '.join(operator_ids)}")
        )

    def generate(self, config):
        targets = discover_targets(
            config.project_dir, config.contracts_glob, config.skip_contracts, exclude_dirs=[config.work_path]
        )
        plan = generate_campaign(targets, config.catalog())
        for diagnostic in plan.diagnostics:
            self.stderr.write(diagnostic)
        if not plan.targets:
            raise EmptyTargetSetError("No target contract could be parsed")
        return plan

    def handle_preflight(self, options):
        config = self.load_config(options)
        plan = self.generate(config)
        for operator_id, count in plan.per_operator_counts.items():
            self.stdout.write(f"{operator_id}: {count}")
        self.stdout.write(
            self.style.SUCCESS(f"Total: {len(plan.mutants)} mutants in {len(plan.targets)} contract file(s)")
        )

    def handle_mutate(self, options):
        config = self.load_config(options)
        plan = self.generate(config)
        mutants_dir = materialize(plan, config.work_path)
        save_plan(plan, config.work_path)
        self.stdout.write(self.style.SUCCESS(f"Generated {len(plan.mutants)} mutants in {mutants_dir}"))

    def handle_test(self, options):
        config = self.load_config(options)
        runner_config = config.runner_config()
        baseline_check(runner_config, config.project_dir, config.work_path)
        self.stdout.write(self.style.HTTP_INFO("Baseline passes"))

        plan = self.generate(config)
        materialize(plan, config.work_path)
        save_plan(plan, config.work_path)
        self.stdout.write(self.style.HTTP_INFO(f"Running {len(plan.mutants)} mutants"))

        def progress(outcome):
            self.stdout.write(f"{outcome.mutant_id} {outcome.classification} {outcome.duration_ms} ms")

        outcomes = run_campaign(runner_config, plan, config.project_dir, config.work_path, on_outcome=progress)
        save_outcomes(outcomes, config.work_path)
        self._report(config, plan, outcomes)

    def handle_report(self, options):
        config = self.load_config(options)
        plan = load_plan(config.work_path, config.project_dir)
        outcomes = load_outcomes(config.work_path)
        for diagnostic in plan.diagnostics:
            self.stderr.write(diagnostic)
        self._report(config, plan, outcomes)

    def _report(self, config, plan, outcomes):
        report = build_report(plan, outcomes, config.equivalent_mutants, config.catalog(), config.to_dict())
        json_path, markdown_path = render_reports(report, config.work_path)
        self.stdout.write(
            self.style.SUCCESS(
                f"Mutation score: {format_score(report.mutation_score_all)} "
                f"(Solidity-specific: {format_score(report.mutation_score_solidity)})"
            )
        )
        self.stdout.write(self.style.HTTP_INFO(f"Reports: {json_path}, {markdown_path}"))
