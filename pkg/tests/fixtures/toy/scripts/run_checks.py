"""
Stand-in test runner for the toy project: runs every ``check_*`` function of
the modules in ``checks/`` against the contract source.
"""
import importlib.util
import sys
from pathlib import Path

from solidity_source import read_contracts, strip_comments


def load_checks(directory):
    for path in sorted(Path(directory).glob('*.py')):
        spec = importlib.util.spec_from_file_location(path.stem, path)
        module = importlib.util.module_from_spec(spec)
        spec.loader.exec_module(module)
        for name in sorted(dir(module)):
            if name.startswith('check_'):
                yield f"{path.stem}.{name}", getattr(module, name)


def main():
    source = strip_comments(read_contracts()['contracts/Wallet.sol'])
    failures = 0
    for name, check in load_checks('checks'):
        try:
            check(source)
        except AssertionError as e:
            failures += 1
            print(f"FAIL {name}: {e}")
        else:
            print(f"ok   {name}")
    print(f"{failures} failing")
    return 1 if failures else 0


if __name__ == '__main__':
    sys.exit(main())
