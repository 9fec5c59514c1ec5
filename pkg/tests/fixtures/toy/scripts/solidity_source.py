"""Source helpers shared by the toy toolchain scripts."""
import re
from pathlib import Path

COMMENT_RE = re.compile(r'//[^\n]*|/\*.*?\*/', re.DOTALL)
STRING_RE = re.compile(r'"(?:\\.|[^"\\])*"|\'(?:\\.|[^\'\\])*\'')


def read_contracts(root='.'):
    return {path.as_posix(): path.read_text(encoding='utf-8') for path in sorted(Path(root, 'contracts').glob('*.sol'))}


def strip_comments(text):
    return COMMENT_RE.sub(' ', text)


def code_only(text):
    return STRING_RE.sub('""', strip_comments(text))
