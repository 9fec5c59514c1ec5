"""
Syntax tree schema, source spans and span splicing for Solidity sources.

Spans are byte offsets into the UTF-8 encoding of the original file. Mutants
are produced by splicing replacement text over a span of the original bytes,
never by printing the tree back, so everything outside the span is preserved.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, Iterable, Iterator, List, Tuple, Union

from .exceptions import SpanMismatchError

logger = logging.getLogger(__name__)


class NodeKind(str, Enum):
    SOURCE_UNIT = 'SourceUnit'
    CONTRACT_DEFINITION = 'ContractDefinition'
    INHERITANCE_SPECIFIER = 'InheritanceSpecifier'
    FUNCTION_DEFINITION = 'FunctionDefinition'
    MODIFIER_DEFINITION = 'ModifierDefinition'
    MODIFIER_INVOCATION = 'ModifierInvocation'
    EVENT_DEFINITION = 'EventDefinition'
    EMIT_STATEMENT = 'EmitStatement'
    ENUM_DEFINITION = 'EnumDefinition'
    ENUM_VALUE = 'EnumValue'
    ENUM_MEMBER_ACCESS = 'EnumMemberAccess'
    STATE_VARIABLE_DECLARATION = 'StateVariableDeclaration'
    VARIABLE_DECLARATION = 'VariableDeclaration'
    VARIABLE_DECLARATION_STATEMENT = 'VariableDeclarationStatement'
    PARAMETER_LIST = 'ParameterList'
    BLOCK = 'Block'
    IF_STATEMENT = 'IfStatement'
    FOR_STATEMENT = 'ForStatement'
    WHILE_STATEMENT = 'WhileStatement'
    DO_WHILE_STATEMENT = 'DoWhileStatement'
    BREAK_STATEMENT = 'BreakStatement'
    CONTINUE_STATEMENT = 'ContinueStatement'
    RETURN_STATEMENT = 'ReturnStatement'
    TRY_STATEMENT = 'TryStatement'
    CATCH_CLAUSE = 'CatchClause'
    EXPRESSION_STATEMENT = 'ExpressionStatement'
    PLACEHOLDER_STATEMENT = 'PlaceholderStatement'
    FUNCTION_CALL = 'FunctionCall'
    MEMBER_ACCESS = 'MemberAccess'
    INDEX_ACCESS = 'IndexAccess'
    BINARY_EXPRESSION = 'BinaryExpression'
    UNARY_EXPRESSION = 'UnaryExpression'
    ASSIGNMENT = 'Assignment'
    CONDITIONAL = 'Conditional'
    DELETE_EXPRESSION = 'DeleteExpression'
    NEW_EXPRESSION = 'NewExpression'
    TUPLE_EXPRESSION = 'TupleExpression'
    LITERAL = 'Literal'
    ELEMENTARY_TYPE_CONVERSION = 'ElementaryTypeConversion'
    ELEMENTARY_TYPE_NAME = 'ElementaryTypeName'
    IDENTIFIER = 'Identifier'
    OPAQUE = 'Opaque'

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True, order=True)
class SourceSpan:
    """Half-open byte range ``[start, end)`` of the original file."""

    start: int
    end: int

    def __post_init__(self) -> None:
        if self.start < 0 or self.end < self.start:
            raise ValueError(f"Invalid span [{self.start}, {self.end})")

    def __len__(self) -> int:
        return self.end - self.start

    def contains(self, other: 'SourceSpan') -> bool:
        return self.start <= other.start and other.end <= self.end

    def slice(self, data: bytes) -> str:
        return data[self.start:self.end].decode('utf-8')


@dataclass(frozen=True)
class AstNode:
    """
    A syntax tree node.

    ``children`` holds every sub-node in source order. ``attributes`` holds the
    kind-specific properties (names, operator tokens and their spans, flags)
    and may reference nodes that also appear in ``children``.
    """

    kind: NodeKind
    span: SourceSpan
    children: Tuple['AstNode', ...] = ()
    attributes: Dict[str, Any] = field(default_factory=dict, compare=True)

    def get(self, name: str, default: Any = None) -> Any:
        return self.attributes.get(name, default)

    def __getitem__(self, name: str) -> Any:
        return self.attributes[name]

    def text(self, data: bytes) -> str:
        return self.span.slice(data)

    def walk(self) -> Iterator['AstNode']:
        """Yield this node and all descendants depth-first in source order."""
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))


@dataclass(frozen=True)
class Mutation:
    """A single contiguous textual edit of one source file."""

    operator: str
    span: SourceSpan
    original: str
    replacement: str
    file: str = ''
    node_path: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.replacement == self.original:
            raise ValueError(f"Identity mutation for operator {self.operator}")


Matcher = Union[str, NodeKind, Iterable[Union[str, NodeKind]], Callable[[AstNode], bool]]


def _predicate(matcher: Matcher) -> Callable[[AstNode], bool]:
    if callable(matcher) and not isinstance(matcher, (str, NodeKind)):
        return matcher
    if isinstance(matcher, (str, NodeKind)):
        kinds = {NodeKind(matcher)}
    else:
        kinds = {NodeKind(kind) for kind in matcher}
    return lambda node: node.kind in kinds


def visit(ast: AstNode, matcher: Matcher) -> List[AstNode]:
    """
    Collect matching nodes depth-first in source order.

    Args:
        ast: Root of the tree to search
        matcher: A node kind, a collection of kinds, or a node predicate

    Returns:
        List[AstNode]: Matching nodes, empty when nothing matches
    """
    accept = _predicate(matcher)
    return [node for node in ast.walk() if accept(node)]


def iter_paths(ast: AstNode) -> Iterator[Tuple[AstNode, Tuple[int, ...]]]:
    """Yield ``(node, path)`` pairs, where path is the child index chain from the root."""
    stack: List[Tuple[AstNode, Tuple[int, ...]]] = [(ast, ())]
    while stack:
        node, path = stack.pop()
        yield node, path
        for index in range(len(node.children) - 1, -1, -1):
            stack.append((node.children[index], path + (index,)))


def encode(source: Union[str, bytes]) -> bytes:
    return source if isinstance(source, bytes) else source.encode('utf-8')


def splice(source: Union[str, bytes], mutation: Mutation) -> str:
    """
    Apply a mutation to the original source text.

    Raises:
        SpanMismatchError: If the span's slice differs from ``mutation.original``
    """
    data = encode(source)
    span = mutation.span
    if span.end > len(data):
        raise SpanMismatchError(mutation.original, '<out of range>')
    found = data[span.start:span.end]
    expected = mutation.original.encode('utf-8')
    if found != expected:
        raise SpanMismatchError(mutation.original, found.decode('utf-8', errors='replace'))
    return (data[:span.start] + mutation.replacement.encode('utf-8') + data[span.end:]).decode('utf-8')


def comment_text(original: str) -> str:
    """Wrap text in a block comment, or line comments when it contains ``*/``."""
    if '*/' not in original:
        return f"/*{original}*/"
    return '\n'.join(f"// {line}" for line in original.split('\n')) + '\n'


def comment_out(node: AstNode, source: Union[str, bytes], operator: str,
                file: str = '', node_path: Tuple[int, ...] = (),
                as_block: bool = False) -> Mutation:
    """
    Build a mutation that comments out the statement or definition ``node``.

    With ``as_block`` the commented text is wrapped in ``{}`` so a statement
    that is the direct body of an ``if`` or a loop keeps a statement in place.
    """
    original = node.text(encode(source))
    replacement = comment_text(original)
    if as_block:
        replacement = '{' + replacement + '}'
    return Mutation(operator, node.span, original, replacement, file, node_path)


def line_column(data: bytes, offset: int) -> Tuple[int, int]:
    """1-based line and column of a byte offset."""
    line = data.count(b'\n', 0, offset) + 1
    column = offset - (data.rfind(b'\n', 0, offset) + 1) + 1
    return line, column
