"""
Operator rule type and the per-file semantic index the rules consult.
"""
import logging
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from ..nodes import AstNode, Matcher, Mutation, NodeKind, SourceSpan, comment_out, comment_text, iter_paths, visit
from ..parser import SourceFile, parse_file

logger = logging.getLogger(__name__)

Generator = Callable[[AstNode, 'TreeIndex'], Iterable[Optional[Mutation]]]
Precondition = Callable[[AstNode, 'TreeIndex'], bool]

_LOOP_OR_BRANCH = (
    NodeKind.IF_STATEMENT, NodeKind.FOR_STATEMENT,
    NodeKind.WHILE_STATEMENT, NodeKind.DO_WHILE_STATEMENT,
)
_WHITESPACE = b' \t\r\n'


def always(node: AstNode, index: 'TreeIndex') -> bool:
    return True


@dataclass(frozen=True)
class OperatorRule:
    """
    A mutation operator.

    ``generate`` is only called on nodes accepted by ``match`` and
    ``precondition``; it may yield ``None`` for candidate edits that turned out
    to be identities.
    """

    id: str
    name: str
    category: str
    match: Matcher
    generate: Generator
    precondition: Precondition = always
    novel: bool = False

    def __str__(self) -> str:
        return self.id


class TreeIndex:
    """
    Semantic facts about one parsed file, collected once per file.

    Nodes are keyed by identity, so an index is only valid for the tree it
    was built from.
    """

    def __init__(self, file: SourceFile):
        file = parse_file(file)
        self.file = file
        self.data = file.data
        self.ast = file.ast
        self._parents: Dict[int, AstNode] = {}
        self._paths: Dict[int, Tuple[int, ...]] = {}
        for node, path in iter_paths(self.ast):
            self._paths[id(node)] = path
            for child in node.children:
                self._parents[id(child)] = node
        self.contracts: Dict[str, AstNode] = {
            node['name']: node for node in self.ast.children
            if node.kind == NodeKind.CONTRACT_DEFINITION
        }
        self.enums: Dict[str, AstNode] = {
            node['name']: node for node in visit(self.ast, NodeKind.ENUM_DEFINITION)
        }

    # Tree navigation

    def parent(self, node: AstNode) -> Optional[AstNode]:
        return self._parents.get(id(node))

    def path(self, node: AstNode) -> Tuple[int, ...]:
        return self._paths.get(id(node), ())

    def ancestors(self, node: AstNode) -> Iterable[AstNode]:
        current = self.parent(node)
        while current is not None:
            yield current
            current = self.parent(current)

    def enclosing(self, node: AstNode, *kinds: NodeKind) -> Optional[AstNode]:
        for ancestor in self.ancestors(node):
            if ancestor.kind in kinds:
                return ancestor
        return None

    def contract_of(self, node: AstNode) -> Optional[AstNode]:
        return self.enclosing(node, NodeKind.CONTRACT_DEFINITION)

    def function_of(self, node: AstNode) -> Optional[AstNode]:
        return self.enclosing(node, NodeKind.FUNCTION_DEFINITION)

    def needs_block(self, statement: AstNode) -> bool:
        """True when ``statement`` is the direct body of an ``if`` or a loop."""
        parent = self.parent(statement)
        return parent is not None and parent.kind in _LOOP_OR_BRANCH

    def text(self, node: AstNode) -> str:
        return node.text(self.data)

    # Contracts and inheritance

    def bases(self, contract: AstNode) -> List[AstNode]:
        """Base contracts declared in this file, nearest first, transitively."""
        found: List[AstNode] = []
        queue = list(reversed(contract['bases']))
        seen = {contract['name']}
        while queue:
            name = queue.pop(0)
            if name in seen or name not in self.contracts:
                continue
            seen.add(name)
            base = self.contracts[name]
            found.append(base)
            queue.extend(reversed(base['bases']))
        return found

    def derived(self, contract: AstNode) -> List[AstNode]:
        """Contracts in this file inheriting from ``contract``, transitively."""
        return [
            other for other in self.contracts.values()
            if other is not contract and any(base is contract for base in self.bases(other))
        ]

    def members(self, contract: AstNode, kind: NodeKind) -> List[AstNode]:
        return [child for child in contract.children if child.kind == kind]

    def functions(self, contract: AstNode, name: Optional[str] = None) -> List[AstNode]:
        return [
            function for function in self.members(contract, NodeKind.FUNCTION_DEFINITION)
            if not function['is_constructor'] and (name is None or function['name'] == name)
        ]

    def inherited_functions(self, contract: AstNode, name: str) -> List[AstNode]:
        return [function for base in self.bases(contract) for function in self.functions(base, name)]

    def visible_modifiers(self, contract: Optional[AstNode]) -> Dict[str, AstNode]:
        """Modifier definitions usable inside ``contract``, own definitions first."""
        if contract is None:
            return {}
        modifiers: Dict[str, AstNode] = {}
        for owner in [contract, *self.bases(contract)]:
            for modifier in self.members(owner, NodeKind.MODIFIER_DEFINITION):
                modifiers.setdefault(modifier['name'], modifier)
        return modifiers

    def modifier_invocations(self, function: AstNode) -> List[AstNode]:
        """Invocations in a function header that are modifiers, not base constructor calls."""
        contract = self.contract_of(function)
        defined = self.visible_modifiers(contract)
        base_names = set(contract['bases']) if contract is not None else set()
        invocations = []
        for invocation in function['modifiers']:
            if invocation['name'] in defined:
                invocations.append(invocation)
            elif invocation['path'] not in base_names and invocation['name'] not in self.contracts:
                invocations.append(invocation)
        return invocations

    # Names and types

    def declaration_type(self, name: str, at: AstNode) -> Optional[str]:
        """Declared type of the variable ``name`` as seen from node ``at``."""
        scope = self.enclosing(at, NodeKind.FUNCTION_DEFINITION, NodeKind.MODIFIER_DEFINITION)
        if scope is not None:
            for declaration in visit(scope, NodeKind.VARIABLE_DECLARATION):
                if declaration['name'] == name:
                    return declaration['type_name']
        contract = self.contract_of(at)
        owners = [contract, *self.bases(contract)] if contract is not None else [self.ast]
        for owner in owners:
            for variable in owner.children:
                if variable.kind == NodeKind.STATE_VARIABLE_DECLARATION and variable['name'] == name:
                    return variable['type_name']
        return None

    def expression_type(self, node: AstNode) -> Optional[str]:
        """Best-effort static type of an expression, None when unknown."""
        if node.kind == NodeKind.IDENTIFIER:
            return self.declaration_type(node['name'], node)
        if node.kind == NodeKind.ELEMENTARY_TYPE_CONVERSION:
            return 'address payable' if node['target_type'] == 'payable' else node['target_type']
        if node.kind == NodeKind.MEMBER_ACCESS and node['expression'].kind == NodeKind.IDENTIFIER:
            qualified = f"{node['expression']['name']}.{node['member_name']}"
            if qualified in ('msg.sender', 'tx.origin'):
                return 'address'
            if qualified == 'block.coinbase':
                return 'address payable'
        if node.kind == NodeKind.LITERAL and is_address_literal(node):
            return 'address'
        return None

    # Mutation builders

    def edit(self, operator: str, span: SourceSpan, replacement: str, node: AstNode) -> Optional[Mutation]:
        """Replace ``span`` with ``replacement``; None when nothing would change."""
        original = span.slice(self.data)
        if original == replacement:
            return None
        return Mutation(operator, span, original, replacement, self.file.path, self.path(node))

    def insert(self, operator: str, offset: int, text: str, node: AstNode) -> Optional[Mutation]:
        return self.edit(operator, SourceSpan(offset, offset), text, node)

    def comment(self, operator: str, node: AstNode) -> Mutation:
        return comment_out(node, self.data, operator, self.file.path, self.path(node),
                           as_block=self.needs_block(node))

    def comment_span(self, operator: str, span: SourceSpan, node: AstNode) -> Optional[Mutation]:
        return self.edit(operator, span, comment_text(span.slice(self.data)), node)

    def remove_word(self, operator: str, span: SourceSpan, node: AstNode) -> Optional[Mutation]:
        """Delete ``span`` together with the whitespace in front of it."""
        start = span.start
        while start > 0 and self.data[start - 1] in _WHITESPACE:
            start -= 1
        return self.edit(operator, SourceSpan(start, span.end), '', node)

    def swap(self, operator: str, first: SourceSpan, second: SourceSpan, node: AstNode) -> Optional[Mutation]:
        """Exchange the text of two non-overlapping spans, ``first`` before ``second``."""
        between = self.data[first.end:second.start].decode('utf-8')
        replacement = second.slice(self.data) + between + first.slice(self.data)
        return self.edit(operator, SourceSpan(first.start, second.end), replacement, node)


def qualified_name(node: AstNode) -> Optional[str]:
    """``msg.sender`` style name of a member access on an identifier."""
    if node.kind == NodeKind.MEMBER_ACCESS and node['expression'].kind == NodeKind.IDENTIFIER:
        return f"{node['expression']['name']}.{node['member_name']}"
    return None


def is_address_literal(node: AstNode) -> bool:
    value = node.get('value', '')
    return node.get('literal_kind') == 'hex' and len(value.replace('_', '')) == 42


def is_call_to(node: AstNode, *names: str) -> bool:
    """True for a plain call ``name(...)`` of one of ``names``."""
    return (
        node.kind == NodeKind.FUNCTION_CALL
        and node['callee'].kind == NodeKind.IDENTIFIER
        and node['function_name'] in names
    )


def statement_call(statement: AstNode, *names: str) -> bool:
    return statement.kind == NodeKind.EXPRESSION_STATEMENT and is_call_to(statement['expression'], *names)


def arity_matches(functions: Iterable[AstNode], count: int) -> List[AstNode]:
    return [function for function in functions if len(function['parameter_types']) == count]


def apply_operator(rule: OperatorRule, file: SourceFile, index: Optional[TreeIndex] = None) -> List[Mutation]:
    """
    Run one operator over one file.

    Args:
        rule (OperatorRule): Operator to apply
        file (SourceFile): Target file, parsed on demand
        index (TreeIndex): Index of the same file, built when not given

    Returns:
        List[Mutation]: Mutations in source order, empty when nothing matches
    """
    if index is None:
        index = TreeIndex(file)
    mutations: List[Mutation] = []
    for node in visit(index.ast, rule.match):
        if not rule.precondition(node, index):
            continue
        for mutation in rule.generate(node, index):
            if mutation is None:
                continue
            if mutation.operator != rule.id:
                raise ValueError(f"Rule {rule.id} produced a {mutation.operator} mutation")
            mutations.append(mutation)
    mutations.sort(key=lambda m: m.span.start)
    logger.debug("%s produced %d mutation(s) in %s", rule.id, len(mutations), index.file.path)
    return mutations
