"""
General mutation operators, shared with mutation tools for other languages.
"""
import re
from collections import defaultdict
from typing import Dict, Iterator, List, Optional, Sequence

from ..nodes import AstNode, Mutation, NodeKind, SourceSpan, visit
from . import tables
from .base import OperatorRule, TreeIndex, arity_matches, is_address_literal
from .tables import GENERAL

Mutations = Iterator[Optional[Mutation]]

_DECIMAL_INTEGER_RE = re.compile(r'^[0-9][0-9_]*$')
_SHRINKABLE_TYPE_RE = re.compile(r'^(?:(u?int)(\d*)|bytes(\d+))$')


# ACM, OLFD

def overload_groups(contract: AstNode, index: TreeIndex) -> Dict[str, List[AstNode]]:
    """Functions of ``contract`` sharing a name with different parameter lists."""
    groups: Dict[str, List[AstNode]] = defaultdict(list)
    for function in index.functions(contract):
        if function['name'] and not function['is_receive'] and not function['is_fallback']:
            groups[function['name']].append(function)
    return {
        name: functions for name, functions in groups.items()
        if len({tuple(f['parameter_types']) for f in functions}) >= 2
    }


def _calls_named(scope: AstNode, name: str) -> List[AstNode]:
    return [call for call in visit(scope, NodeKind.FUNCTION_CALL) if call['function_name'] == name]


def _olfd_safe(function: AstNode, group: Sequence[AstNode], contract: AstNode, index: TreeIndex) -> bool:
    if function['override'] or function['body'] is None:
        return False
    for derived in index.derived(contract):
        if any(f['parameter_types'] == function['parameter_types'] for f in index.functions(derived, function['name'])):
            return False
    for call in _calls_named(index.ast, function['name']):
        resolved = arity_matches(group, len(call['arguments']))
        if len(resolved) == 1 and resolved[0] is function:
            return False
    return True


def _acm_arguments(call: AstNode, resolved: AstNode, target: AstNode, index: TreeIndex) -> Optional[List[str]]:
    count = len(call['arguments'])
    target_types = target['parameter_types']
    shared = min(count, len(target_types))
    if resolved['parameter_types'][:shared] != target_types[:shared]:
        return None
    arguments = [index.text(argument) for argument in call['arguments'][:shared]]
    for type_name in target_types[shared:]:
        value = tables.default_value(type_name)
        if not value:
            return None
        arguments.append(value)
    return arguments


def olfd_acm_generate(contract: AstNode, index: TreeIndex,
                      operators: Sequence[str] = ('OLFD', 'ACM')) -> List[Mutation]:
    """
    Mutate overloaded functions of a contract.

    OLFD comments out each overloaded definition unless some call in the file
    can only resolve to it. ACM rewrites the argument list of each call to an
    overloaded function so that it selects a different overload, filling
    missing arguments with zero values and dropping extra ones.
    """
    mutations: List[Optional[Mutation]] = []
    for name, group in overload_groups(contract, index).items():
        if 'OLFD' in operators:
            for function in group:
                if _olfd_safe(function, group, contract, index):
                    mutations.append(index.comment('OLFD', function))
        if 'ACM' not in operators:
            continue
        for call in _calls_named(contract, name):
            if call['callee'].kind != NodeKind.IDENTIFIER or call['argument_names']:
                continue
            count = len(call['arguments'])
            resolved = arity_matches(group, count)
            if len(resolved) != 1:
                continue
            for target in group:
                arity = len(target['parameter_types'])
                if arity == count or len(arity_matches(group, arity)) != 1:
                    continue
                arguments = _acm_arguments(call, resolved[0], target, index)
                if arguments is None:
                    continue
                mutations.append(index.edit('ACM', call['arguments_span'], f"({', '.join(arguments)})", call))
                break
    return [m for m in mutations if m is not None]


def _has_overloads(node: AstNode, index: TreeIndex) -> bool:
    return bool(overload_groups(node, index))


def acm_generate(node: AstNode, index: TreeIndex) -> List[Mutation]:
    return olfd_acm_generate(node, index, operators=('ACM',))


def olfd_generate(node: AstNode, index: TreeIndex) -> List[Mutation]:
    return olfd_acm_generate(node, index, operators=('OLFD',))


# AOR, BOR, ICM, UORD

def aor_precondition(node: AstNode, index: TreeIndex) -> bool:
    return node['operator'] in tables.ASSIGNMENT_OPERATOR_REPLACEMENTS


def aor_generate(node: AstNode, index: TreeIndex) -> Mutations:
    yield index.edit('AOR', node['operator_span'], tables.ASSIGNMENT_OPERATOR_REPLACEMENTS[node['operator']], node)


def bor_precondition(node: AstNode, index: TreeIndex) -> bool:
    return node['operator'] in tables.BINARY_OPERATOR_REPLACEMENTS


def bor_generate(node: AstNode, index: TreeIndex) -> Mutations:
    yield index.edit('BOR', node['operator_span'], tables.BINARY_OPERATOR_REPLACEMENTS[node['operator']], node)


def icm_precondition(node: AstNode, index: TreeIndex) -> bool:
    if node['operator'] != '-=':
        return False
    declared = index.expression_type(node['left'])
    return declared is not None and declared.startswith('int')


def icm_generate(node: AstNode, index: TreeIndex) -> Mutations:
    operator = node['operator_span']
    right = node['right']
    between = index.data[operator.end:right.span.start].decode('utf-8')
    replacement = f"={between}-{index.text(right)}"
    yield index.edit('ICM', SourceSpan(operator.start, right.span.end), replacement, node)


def uord_precondition(node: AstNode, index: TreeIndex) -> bool:
    operator = node['operator']
    return operator in tables.INCREMENT_REPLACEMENTS or operator in tables.DELETABLE_UNARY_OPERATORS


def uord_generate(node: AstNode, index: TreeIndex) -> Mutations:
    operator = node['operator']
    if operator in tables.INCREMENT_REPLACEMENTS:
        yield index.edit('UORD', node['operator_span'], tables.INCREMENT_REPLACEMENTS[operator], node)
    else:
        yield index.edit('UORD', node['operator_span'], '', node)


# BCRD, CBD, CSC, LSC

def bcrd_generate(node: AstNode, index: TreeIndex) -> Mutations:
    replacement = 'continue;' if node.kind == NodeKind.BREAK_STATEMENT else 'break;'
    yield index.edit('BCRD', node.span, replacement, node)
    yield index.comment('BCRD', node)


def cbd_precondition(node: AstNode, index: TreeIndex) -> bool:
    statement = index.parent(node)
    return statement is not None and len(statement['clauses']) >= 2


def cbd_generate(node: AstNode, index: TreeIndex) -> Mutations:
    yield index.comment_span('CBD', node.span, node)


def csc_generate(node: AstNode, index: TreeIndex) -> Mutations:
    condition = node['condition']
    yield index.edit('CSC', condition.span, 'true', node)
    yield index.edit('CSC', condition.span, 'false', node)
    if node['else_span'] is not None:
        yield index.comment_span('CSC', node['else_span'], node)


def lsc_precondition(node: AstNode, index: TreeIndex) -> bool:
    return node['condition'] is not None


def lsc_generate(node: AstNode, index: TreeIndex) -> Mutations:
    condition = node['condition']
    yield index.edit('LSC', condition.span, 'true', node)
    yield index.edit('LSC', condition.span, 'false', node)


# BLR, HLR, ILR, SLR

def blr_precondition(node: AstNode, index: TreeIndex) -> bool:
    return node['literal_kind'] == 'bool'


def blr_generate(node: AstNode, index: TreeIndex) -> Mutations:
    yield index.edit('BLR', node['value_span'], 'false' if node['value'] == 'true' else 'true', node)


def _is_zero_hex(value: str) -> bool:
    return int(value[2:].replace('_', ''), 16) == 0


def _fixed_bytes_context(node: AstNode, index: TreeIndex) -> bool:
    parent = index.parent(node)
    if parent is None:
        return False
    declared: Optional[str] = None
    if parent.kind == NodeKind.VARIABLE_DECLARATION_STATEMENT and parent['declarations']:
        first = parent['declarations'][0]
        declared = first['type_name'] if first is not None else None
    elif parent.kind == NodeKind.STATE_VARIABLE_DECLARATION:
        declared = parent['type_name']
    elif parent.kind == NodeKind.ASSIGNMENT:
        declared = index.expression_type(parent['left'])
    elif parent.kind == NodeKind.ELEMENTARY_TYPE_CONVERSION:
        declared = parent['target_type']
    return declared is not None and declared.startswith('bytes') and declared[5:].isdigit()


def hlr_precondition(node: AstNode, index: TreeIndex) -> bool:
    if node['literal_kind'] != 'hex' or is_address_literal(node):
        return False
    return not (_is_zero_hex(node['value']) and _fixed_bytes_context(node, index))


def hlr_generate(node: AstNode, index: TreeIndex) -> Mutations:
    replacement = '0x1' if _is_zero_hex(node['value']) else '0x0'
    yield index.edit('HLR', node['value_span'], replacement, node)


def ilr_precondition(node: AstNode, index: TreeIndex) -> bool:
    return node['literal_kind'] == 'number' and bool(_DECIMAL_INTEGER_RE.match(node['value']))


def ilr_generate(node: AstNode, index: TreeIndex) -> Mutations:
    value = int(node['value'].replace('_', ''))
    yield index.edit('ILR', node['value_span'], str(value + 1), node)
    if value > 0:
        yield index.edit('ILR', node['value_span'], str(value - 1), node)


def slr_precondition(node: AstNode, index: TreeIndex) -> bool:
    return node['literal_kind'] == 'string'


def slr_generate(node: AstNode, index: TreeIndex) -> Mutations:
    empty = node['value'] in ('""', "''")
    yield index.edit('SLR', node['value_span'], tables.EMPTY_STRING_FILLER if empty else '""', node)


# ECS, ER

def ecs_precondition(node: AstNode, index: TreeIndex) -> bool:
    match = _SHRINKABLE_TYPE_RE.match(node['target_type'])
    if match is None:
        return False
    integer, bits, size = match.groups()
    if integer is not None:
        return bits == '' or int(bits) > 8
    return int(size) > 1


def ecs_generate(conversion: AstNode, index: TreeIndex) -> List[Mutation]:
    """Force an explicit conversion to the smallest type of its family."""
    if not ecs_precondition(conversion, index):
        return []
    target = conversion['target_type']
    if target.startswith('bytes'):
        replacement = 'bytes1'
    else:
        replacement = 'uint8' if target.startswith('uint') else 'int8'
    mutation = index.edit('ECS', conversion['target_span'], replacement, conversion)
    return [mutation] if mutation else []


def er_precondition(node: AstNode, index: TreeIndex) -> bool:
    if node.kind == NodeKind.ENUM_DEFINITION:
        return len(node['members']) >= 2
    definition = index.enums.get(node['enum_name'])
    return definition is not None and len(definition['members']) >= 2


def er_generate(node: AstNode, index: TreeIndex) -> List[Mutation]:
    """
    Swap the first two members of an enum definition, or point an enum
    member access at the first other member of its enum.
    """
    if not er_precondition(node, index):
        return []
    if node.kind == NodeKind.ENUM_DEFINITION:
        first, second = node.children[0], node.children[1]
        mutation = index.swap('ER', first.span, second.span, node)
    else:
        members = index.enums[node['enum_name']]['members']
        replacement = next(member for member in members if member != node['member_name'])
        mutation = index.edit('ER', node['member_span'], replacement, node)
    return [mutation] if mutation else []


# ORFD, SKD, SKI

def _base_implementations(function: AstNode, index: TreeIndex) -> List[AstNode]:
    contract = index.contract_of(function)
    if contract is None:
        return []
    return [
        base_function for base_function in index.inherited_functions(contract, function['name'])
        if base_function['body'] is not None and base_function['parameter_types'] == function['parameter_types']
    ]


def orfd_precondition(node: AstNode, index: TreeIndex) -> bool:
    if not node['override'] or node['body'] is None or len(node['override_bases']) > 1:
        return False
    return bool(_base_implementations(node, index))


def orfd_generate(node: AstNode, index: TreeIndex) -> Mutations:
    yield index.comment('ORFD', node)


def _is_super_call(node: AstNode) -> bool:
    callee = node['callee']
    return callee.kind == NodeKind.MEMBER_ACCESS and callee['expression'].get('name') == 'super'


def skd_precondition(node: AstNode, index: TreeIndex) -> bool:
    if not _is_super_call(node):
        return False
    contract = index.contract_of(node)
    if contract is None:
        return False
    name = node['member_name']
    candidates = index.functions(contract, name) + index.inherited_functions(contract, name)
    return any(
        candidate['body'] is not None
        for candidate in arity_matches(candidates, len(node['arguments']))
    )


def skd_generate(node: AstNode, index: TreeIndex) -> Mutations:
    callee = node['callee']
    yield index.edit('SKD', SourceSpan(callee.span.start, callee['member_span'].start), '', node)


def ski_precondition(node: AstNode, index: TreeIndex) -> bool:
    if node['callee'].kind != NodeKind.IDENTIFIER or index.function_of(node) is None:
        return False
    contract = index.contract_of(node)
    if contract is None or contract['contract_kind'] == 'library':
        return False
    name = node['function_name']
    count = len(node['arguments'])
    if not arity_matches(index.functions(contract, name), count):
        return False
    return any(
        base_function['body'] is not None and base_function['visibility'] != 'private'
        for base_function in arity_matches(index.inherited_functions(contract, name), count)
    )


def ski_generate(node: AstNode, index: TreeIndex) -> Mutations:
    yield index.insert('SKI', node['callee'].span.start, 'super.', node)


RULES: List[OperatorRule] = [
    OperatorRule(
        'ACM', 'Argument Change of overloaded Method call', GENERAL,
        NodeKind.CONTRACT_DEFINITION, acm_generate, _has_overloads, novel=True,
    ),
    OperatorRule(
        'AOR', 'Assignment Operator Replacement', GENERAL,
        NodeKind.ASSIGNMENT, aor_generate, aor_precondition,
    ),
    OperatorRule(
        'BCRD', 'Break and Continue Replacement and Deletion', GENERAL,
        (NodeKind.BREAK_STATEMENT, NodeKind.CONTINUE_STATEMENT), bcrd_generate,
    ),
    OperatorRule(
        'BLR', 'Boolean Literal Replacement', GENERAL,
        NodeKind.LITERAL, blr_generate, blr_precondition,
    ),
    OperatorRule(
        'BOR', 'Binary Operator Replacement', GENERAL,
        NodeKind.BINARY_EXPRESSION, bor_generate, bor_precondition,
    ),
    OperatorRule(
        'CBD', 'Catch Block Deletion', GENERAL,
        NodeKind.CATCH_CLAUSE, cbd_generate, cbd_precondition,
    ),
    OperatorRule(
        'CSC', 'Conditional Statement Change', GENERAL,
        NodeKind.IF_STATEMENT, csc_generate,
    ),
    OperatorRule(
        'ECS', 'Explicit Conversion to Smaller type', GENERAL,
        NodeKind.ELEMENTARY_TYPE_CONVERSION, ecs_generate, ecs_precondition, novel=True,
    ),
    OperatorRule(
        'ER', 'Enum Replacement', GENERAL,
        (NodeKind.ENUM_DEFINITION, NodeKind.ENUM_MEMBER_ACCESS), er_generate, er_precondition, novel=True,
    ),
    OperatorRule(
        'HLR', 'Hexadecimal Literal Replacement', GENERAL,
        NodeKind.LITERAL, hlr_generate, hlr_precondition,
    ),
    OperatorRule(
        'ICM', 'Increments Mirror', GENERAL,
        NodeKind.ASSIGNMENT, icm_generate, icm_precondition,
    ),
    OperatorRule(
        'ILR', 'Integer Literal Replacement', GENERAL,
        NodeKind.LITERAL, ilr_generate, ilr_precondition,
    ),
    OperatorRule(
        'LSC', 'Loop Statement Change', GENERAL,
        (NodeKind.FOR_STATEMENT, NodeKind.WHILE_STATEMENT, NodeKind.DO_WHILE_STATEMENT),
        lsc_generate, lsc_precondition,
    ),
    OperatorRule(
        'OLFD', 'Overloaded Function Deletion', GENERAL,
        NodeKind.CONTRACT_DEFINITION, olfd_generate, _has_overloads, novel=True,
    ),
    OperatorRule(
        'ORFD', 'Overridden Function Deletion', GENERAL,
        NodeKind.FUNCTION_DEFINITION, orfd_generate, orfd_precondition,
    ),
    OperatorRule(
        'SKD', 'Super Keyword Deletion', GENERAL,
        NodeKind.FUNCTION_CALL, skd_generate, skd_precondition,
    ),
    OperatorRule(
        'SKI', 'Super Keyword Insertion', GENERAL,
        NodeKind.FUNCTION_CALL, ski_generate, ski_precondition,
    ),
    OperatorRule(
        'SLR', 'String Literal Replacement', GENERAL,
        NodeKind.LITERAL, slr_generate, slr_precondition,
    ),
    OperatorRule(
        'UORD', 'Unary Operator Replacement and Deletion', GENERAL,
        NodeKind.UNARY_EXPRESSION, uord_generate, uord_precondition,
    ),
]
