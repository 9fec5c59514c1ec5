"""
Solidity-specific mutation operators.

Each operator is a matcher, an optional precondition that keeps likely
stillborn mutants out, and a generator of replacement edits.
"""
from typing import Iterator, List, Optional

from ..nodes import AstNode, Mutation, NodeKind, visit
from . import tables
from .base import (
    OperatorRule,
    TreeIndex,
    is_address_literal,
    is_call_to,
    qualified_name,
    statement_call,
)
from .tables import SOLIDITY

Mutations = Iterator[Optional[Mutation]]


# AVR

def _is_address_expression(node: AstNode, index: TreeIndex) -> bool:
    if node.kind == NodeKind.ELEMENTARY_TYPE_CONVERSION:
        return node['target_type'] in ('address', 'address payable', 'payable')
    if node.kind == NodeKind.LITERAL:
        return is_address_literal(node)
    if node.kind == NodeKind.MEMBER_ACCESS:
        return qualified_name(node) in ('msg.sender', 'tx.origin', 'block.coinbase')
    if node.kind == NodeKind.IDENTIFIER:
        return index.expression_type(node) in ('address', 'address payable')
    return False


def _in_value_position(node: AstNode, index: TreeIndex) -> bool:
    parent = index.parent(node)
    if parent is None:
        return False
    if parent.kind == NodeKind.ASSIGNMENT:
        return parent['right'] is node and parent['operator'] == '='
    if parent.kind == NodeKind.VARIABLE_DECLARATION_STATEMENT:
        return parent['initial_value'] is node
    if parent.kind == NodeKind.STATE_VARIABLE_DECLARATION:
        return parent['value'] is node and not parent['constant']
    if parent.kind == NodeKind.FUNCTION_CALL:
        return any(argument is node for argument in parent['arguments'])
    if parent.kind == NodeKind.BINARY_EXPRESSION:
        return parent['operator'] in ('==', '!=')
    return False


def avr_precondition(node: AstNode, index: TreeIndex) -> bool:
    if not _is_address_expression(node, index) or not _in_value_position(node, index):
        return False
    contract = index.contract_of(node)
    return contract is not None and contract['contract_kind'] != 'library'


def avr_generate(node: AstNode, index: TreeIndex) -> Mutations:
    original = index.text(node).replace(' ', '')
    if original == tables.ZERO_ADDRESS:
        yield index.edit('AVR', node.span, tables.THIS_ADDRESS, node)
    elif original == tables.PAYABLE_ZERO_ADDRESS:
        yield index.edit('AVR', node.span, tables.PAYABLE_THIS_ADDRESS, node)
    elif index.expression_type(node) == 'address payable':
        yield index.edit('AVR', node.span, tables.PAYABLE_ZERO_ADDRESS, node)
    else:
        yield index.edit('AVR', node.span, tables.ZERO_ADDRESS, node)


# CCD

def ccd_precondition(node: AstNode, index: TreeIndex) -> bool:
    if not node['is_constructor'] or node['body'] is None:
        return False
    contract = index.contract_of(node)
    if contract is None:
        return False
    name = contract['name']
    for variable in index.members(contract, NodeKind.STATE_VARIABLE_DECLARATION):
        if variable['immutable'] and variable['value'] is None:
            return False
    for specifier in visit(index.ast, NodeKind.INHERITANCE_SPECIFIER):
        if specifier['name'] == name and specifier['arguments']:
            return False
    for invocation in visit(index.ast, NodeKind.MODIFIER_INVOCATION):
        if invocation['name'] == name and invocation['arguments']:
            return False
    for call in visit(index.ast, NodeKind.FUNCTION_CALL):
        callee = call['callee']
        if callee.kind == NodeKind.NEW_EXPRESSION and callee['type_name'] == name and call['arguments']:
            return False
    return True


def ccd_generate(node: AstNode, index: TreeIndex) -> Mutations:
    yield index.comment('CCD', node)


# DLR

_STORAGE_REFERENCES = (NodeKind.IDENTIFIER, NodeKind.MEMBER_ACCESS, NodeKind.INDEX_ACCESS)


def dlr_precondition(node: AstNode, index: TreeIndex) -> bool:
    location = node['data_location']
    if location is None:
        return False
    parent = index.parent(node)
    if parent is None:
        return False
    if parent.kind == NodeKind.VARIABLE_DECLARATION_STATEMENT:
        if location == 'memory':
            value = parent['initial_value']
            return value is not None and value.kind in _STORAGE_REFERENCES
        return location in ('storage', 'calldata')
    if parent.kind == NodeKind.PARAMETER_LIST and location == 'calldata':
        function = index.enclosing(node, NodeKind.FUNCTION_DEFINITION)
        return function is not None and function['body'] is not None
    return False


def dlr_generate(node: AstNode, index: TreeIndex) -> Mutations:
    replacement = tables.DATA_LOCATION_REPLACEMENTS[node['data_location']]
    yield index.edit('DLR', node['data_location_span'], replacement, node)


# DOD

def dod_precondition(node: AstNode, index: TreeIndex) -> bool:
    parent = index.parent(node)
    return parent is not None and parent.kind == NodeKind.EXPRESSION_STATEMENT


def dod_generate(node: AstNode, index: TreeIndex) -> Mutations:
    yield index.edit('DOD', node.span, index.text(node['operand']), node)


# EED

def eed_generate(node: AstNode, index: TreeIndex) -> Mutations:
    yield index.comment('EED', node)


# EHC

def ehc_precondition(node: AstNode, index: TreeIndex) -> bool:
    return statement_call(node, *tables.EXCEPTION_HANDLERS)


def ehc_generate(node: AstNode, index: TreeIndex) -> Mutations:
    yield index.comment('EHC', node)
    call = node['expression']
    swapped = tables.EXCEPTION_HANDLER_SWAPS.get(call['function_name'])
    if swapped and call['arguments'] and not call['argument_names']:
        condition = index.text(call['arguments'][0])
        yield index.edit('EHC', call.span, f"{swapped}({condition})", call)


# ETR

def _receiver_is_payable(call: AstNode, index: TreeIndex) -> bool:
    return index.expression_type(call['callee']['expression']) == 'address payable'


def _is_statement(call: AstNode, index: TreeIndex) -> bool:
    parent = index.parent(call)
    return parent is not None and parent.kind == NodeKind.EXPRESSION_STATEMENT


def _is_value_transfer_call(call: AstNode, index: TreeIndex) -> bool:
    options = call['call_options']
    return (
        len(options) == 1 and options[0][0] == 'value'
        and len(call['arguments']) == 1
        and index.text(call['arguments'][0]) in ('""', "''")
    )


def etr_precondition(node: AstNode, index: TreeIndex) -> bool:
    member = node['member_name']
    if node['callee'].kind != NodeKind.MEMBER_ACCESS or node['argument_names']:
        return False
    if member in ('transfer', 'send'):
        return len(node['arguments']) == 1 and not node['call_options'] and _is_statement(node, index)
    if member == 'call' and node['call_options']:
        return _is_value_transfer_call(node, index) and _is_statement(node, index) and _receiver_is_payable(node, index)
    if member in tables.LOW_LEVEL_CALLS:
        function = index.function_of(node)
        if function is not None and function['state_mutability'] in ('view', 'pure'):
            return False
        return len(node['arguments']) == 1 and not node['call_options']
    return False


def etr_generate(node: AstNode, index: TreeIndex) -> Mutations:
    member = node['member_name']
    receiver = index.text(node['callee']['expression'])
    if member in ('transfer', 'send'):
        amount = index.text(node['arguments'][0])
        alternatives = [m for m in ('transfer', 'send') if m != member]
        for alternative in alternatives:
            yield index.edit('ETR', node.span, f"{receiver}.{alternative}({amount})", node)
        yield index.edit('ETR', node.span, f'{receiver}.call{{value: {amount}}}("")', node)
    elif node['call_options']:
        amount = index.text(node['call_options'][0][1])
        for alternative in ('transfer', 'send'):
            yield index.edit('ETR', node.span, f"{receiver}.{alternative}({amount})", node)
    else:
        for alternative in tables.LOW_LEVEL_CALLS:
            if alternative != member:
                yield index.edit('ETR', node['callee']['member_span'], alternative, node)


# FVR

def _has_storage_parameter(function: AstNode) -> bool:
    return any(
        parameter['data_location'] == 'storage' or parameter['type_name'].startswith('mapping')
        for parameter in function['parameters']['parameters']
    )


def _called_internally(name: str, scope: List[AstNode]) -> bool:
    return any(
        call['callee'].kind == NodeKind.IDENTIFIER and call['function_name'] == name
        for owner in scope for call in visit(owner, NodeKind.FUNCTION_CALL)
    )


def _referenced_externally(name: str, index: TreeIndex) -> bool:
    return any(
        access['member_name'] == name and access['expression'].get('name') != 'super'
        for access in visit(index.ast, NodeKind.MEMBER_ACCESS)
    )


def fvr_precondition(node: AstNode, index: TreeIndex) -> bool:
    if node['visibility'] is None or node['is_constructor']:
        return False
    if node['is_receive'] or node['is_fallback']:
        return False
    contract = index.contract_of(node)
    return contract is not None and contract['contract_kind'] != 'interface'


def fvr_generate(node: AstNode, index: TreeIndex) -> Mutations:
    current = node['visibility']
    name = node['name']
    contract = index.contract_of(node)
    scope = [contract, *index.derived(contract)]
    overridden = node['virtual'] and any(index.functions(derived, name) for derived in index.derived(contract))
    for visibility in tables.FUNCTION_VISIBILITIES:
        if visibility == current:
            continue
        if node['override'] and not (current == 'external' and visibility == 'public'):
            continue
        if overridden:
            continue
        if node['payable'] and visibility in ('internal', 'private'):
            continue
        if _has_storage_parameter(node) and visibility in ('public', 'external'):
            continue
        if visibility == 'external' and _called_internally(name, scope):
            continue
        if visibility in ('internal', 'private') and current in ('public', 'external') \
                and _referenced_externally(name, index):
            continue
        if visibility == 'private' and (node['virtual'] or _called_internally(name, index.derived(contract))):
            continue
        yield index.edit('FVR', node['visibility_span'], visibility, node)


# GVR

def _global_name(node: AstNode) -> Optional[str]:
    if node.kind == NodeKind.FUNCTION_CALL:
        return 'gasleft()' if is_call_to(node, 'gasleft') and not node['arguments'] else None
    return qualified_name(node)


def _msg_value_allowed(node: AstNode, index: TreeIndex) -> bool:
    if index.enclosing(node, NodeKind.MODIFIER_DEFINITION) is not None:
        return True
    function = index.function_of(node)
    return function is not None and (function['payable'] or function['visibility'] in ('internal', 'private'))


def gvr_precondition(node: AstNode, index: TreeIndex) -> bool:
    name = _global_name(node)
    if name not in tables.GLOBAL_REPLACEMENTS:
        return False
    if index.enclosing(node, NodeKind.STATE_VARIABLE_DECLARATION) is not None:
        return False
    replacement = tables.GLOBAL_REPLACEMENTS[name]
    if replacement == 'msg.value' and not _msg_value_allowed(node, index):
        return False
    if name == 'block.coinbase':
        parent = index.parent(node)
        return parent is None or parent.kind != NodeKind.MEMBER_ACCESS
    return True


def gvr_generate(node: AstNode, index: TreeIndex) -> Mutations:
    yield index.edit('GVR', node.span, tables.GLOBAL_REPLACEMENTS[_global_name(node)], node)


# MCR

def mcr_precondition(node: AstNode, index: TreeIndex) -> bool:
    return is_call_to(node, *tables.MATH_CRYPTO_REPLACEMENTS)


def mcr_generate(node: AstNode, index: TreeIndex) -> Mutations:
    yield index.edit('MCR', node['callee'].span, tables.MATH_CRYPTO_REPLACEMENTS[node['function_name']], node)


# MOC, MOD, MOI, MOR

def moc_generate(node: AstNode, index: TreeIndex) -> Mutations:
    invocations = index.modifier_invocations(node)
    for first, second in zip(invocations, invocations[1:]):
        yield index.swap('MOC', first.span, second.span, node)


def mod_generate(node: AstNode, index: TreeIndex) -> Mutations:
    for invocation in index.modifier_invocations(node):
        yield index.remove_word('MOD', invocation.span, invocation)


def _is_parameterless(modifier: AstNode) -> bool:
    return not modifier['parameter_types']


def moi_precondition(node: AstNode, index: TreeIndex) -> bool:
    if node['body'] is None or node['state_mutability'] == 'pure':
        return False
    contract = index.contract_of(node)
    return contract is not None and contract['contract_kind'] == 'contract'


def moi_generate(node: AstNode, index: TreeIndex) -> Mutations:
    present = {invocation['name'] for invocation in node['modifiers']}
    anchor = node['returns_span'].start if node['returns_span'] is not None else node['body'].span.start
    prefix = '' if index.data[anchor - 1:anchor] in (b' ', b'\t', b'\n', b'\r') else ' '
    for name, modifier in index.visible_modifiers(index.contract_of(node)).items():
        if name in present or not _is_parameterless(modifier):
            continue
        yield index.insert('MOI', anchor, f"{prefix}{name} ", node)


def mor_generate(node: AstNode, index: TreeIndex) -> Mutations:
    contract = index.contract_of(node)
    defined = index.visible_modifiers(contract)
    present = {invocation['name'] for invocation in node['modifiers']}
    for invocation in index.modifier_invocations(node):
        original = defined.get(invocation['name'])
        for name, candidate in defined.items():
            if name in present:
                continue
            if _is_parameterless(candidate):
                yield index.edit('MOR', invocation.span, name, invocation)
            elif invocation['has_arguments'] and original is not None \
                    and candidate['parameter_types'] == original['parameter_types']:
                yield index.edit('MOR', invocation['name_span'], name, invocation)


def modifier_function_precondition(node: AstNode, index: TreeIndex) -> bool:
    return node['body'] is not None and bool(index.modifier_invocations(node))


def moc_precondition(node: AstNode, index: TreeIndex) -> bool:
    return len(index.modifier_invocations(node)) >= 2


# OMD

def omd_precondition(node: AstNode, index: TreeIndex) -> bool:
    if not node['override']:
        return False
    contract = index.contract_of(node)
    if contract is None:
        return False
    return any(
        modifier['name'] == node['name'] and modifier['virtual'] and modifier['body'] is not None
        for base in index.bases(contract)
        for modifier in index.members(base, NodeKind.MODIFIER_DEFINITION)
    )


def omd_generate(node: AstNode, index: TreeIndex) -> Mutations:
    yield index.comment('OMD', node)


# PKD

def _uses_msg_value(function: AstNode) -> bool:
    return any(qualified_name(access) == 'msg.value' for access in visit(function, NodeKind.MEMBER_ACCESS))


def pkd_precondition(node: AstNode, index: TreeIndex) -> bool:
    if not node['payable'] or node['is_receive'] or node['is_fallback']:
        return False
    if node['override'] or node['virtual']:
        return False
    return not _uses_msg_value(node)


def pkd_generate(node: AstNode, index: TreeIndex) -> Mutations:
    yield index.remove_word('PKD', node['state_mutability_span'], node)


# RSD

def rsd_precondition(node: AstNode, index: TreeIndex) -> bool:
    return index.function_of(node) is not None


def rsd_generate(node: AstNode, index: TreeIndex) -> Mutations:
    yield index.comment('RSD', node)


# RVS

def rvs_generate(function: AstNode, index: TreeIndex) -> List[Mutation]:
    """
    Swap adjacent return values of the same declared type.

    Explicit ``return (a, b)`` tuples are swapped component-wise. Functions
    that only assign named return variables get their declarations swapped.
    """
    types = function['return_types']
    mutations: List[Optional[Mutation]] = []
    if len(types) < 2 or function['body'] is None:
        return []
    returns = visit(function['body'], NodeKind.RETURN_STATEMENT)
    value_returns = [r for r in returns if r['expression'] is not None]
    for statement in value_returns:
        expression = statement['expression']
        if expression.kind != NodeKind.TUPLE_EXPRESSION or expression['is_inline_array']:
            continue
        components = expression['components']
        if len(components) != len(types):
            continue
        for position in range(len(components) - 1):
            first, second = components[position], components[position + 1]
            if first is None or second is None or types[position] != types[position + 1]:
                continue
            if index.text(first) == index.text(second):
                continue
            mutations.append(index.swap('RVS', first.span, second.span, statement))
    if not value_returns:
        declarations = function['return_parameters']['parameters']
        for position in range(len(declarations) - 1):
            first, second = declarations[position], declarations[position + 1]
            if first['name_span'] is None or second['name_span'] is None:
                continue
            if types[position] != types[position + 1]:
                continue
            mutations.append(index.swap('RVS', first['name_span'], second['name_span'], first))
    return [m for m in mutations if m is not None]


# SCEC

def _contract_cast(node: AstNode, index: TreeIndex) -> Optional[AstNode]:
    callee = node['callee']
    if callee.kind != NodeKind.IDENTIFIER or len(node['arguments']) != 1:
        return None
    contract = index.contracts.get(callee['name'])
    if contract is None or contract['contract_kind'] == 'library':
        return None
    return contract


def _declares_member(contract: AstNode, member: str, index: TreeIndex) -> bool:
    if index.functions(contract, member):
        return True
    return any(
        variable['name'] == member and variable['visibility'] == 'public'
        for variable in index.members(contract, NodeKind.STATE_VARIABLE_DECLARATION)
    )


def _scec_candidate(node: AstNode, index: TreeIndex) -> Optional[AstNode]:
    cast = _contract_cast(node, index)
    parent = index.parent(node)
    if cast is None or parent is None or parent.kind != NodeKind.MEMBER_ACCESS:
        return None
    member = parent['member_name']
    for candidate in index.contracts.values():
        if candidate is cast or candidate['contract_kind'] == 'library':
            continue
        if _declares_member(candidate, member, index):
            return candidate
    return None


def scec_precondition(node: AstNode, index: TreeIndex) -> bool:
    return _scec_candidate(node, index) is not None


def scec_generate(node: AstNode, index: TreeIndex) -> Mutations:
    candidate = _scec_candidate(node, index)
    yield index.edit('SCEC', node['callee'].span, candidate['name'], node)


# SFD, SFI

def sfd_precondition(node: AstNode, index: TreeIndex) -> bool:
    return statement_call(node, *tables.SELFDESTRUCT_FUNCTIONS)


def sfd_generate(node: AstNode, index: TreeIndex) -> Mutations:
    yield index.comment('SFD', node)


def sfi_precondition(node: AstNode, index: TreeIndex) -> bool:
    if node['body'] is None or node['is_constructor']:
        return False
    if node['visibility'] not in ('public', 'external') or node['state_mutability'] in ('view', 'pure', 'constant'):
        return False
    contract = index.contract_of(node)
    return contract is not None and contract['contract_kind'] == 'contract'


def sfi_generate(node: AstNode, index: TreeIndex) -> Mutations:
    yield index.insert('SFI', node['body'].span.start + 1, f" {tables.SELFDESTRUCT_STATEMENT}", node)


# SFR

def sfr_precondition(node: AstNode, index: TreeIndex) -> bool:
    callee = node['callee']
    return (
        callee.kind == NodeKind.MEMBER_ACCESS
        and node['member_name'] in tables.SAFEMATH_REPLACEMENTS
        and len(node['arguments']) == 1
        and not node['call_options']
        and not node['argument_names']
    )


def sfr_generate(call: AstNode, index: TreeIndex) -> List[Mutation]:
    """Replace a SafeMath member call with its counterpart (``a.add(b)`` to ``a.sub(b)``)."""
    if not sfr_precondition(call, index):
        return []
    replacement = tables.SAFEMATH_REPLACEMENTS[call['member_name']]
    mutation = index.edit('SFR', call['callee']['member_span'], replacement, call)
    return [mutation] if mutation else []


# TOR

def tor_precondition(node: AstNode, index: TreeIndex) -> bool:
    return qualified_name(node) in tables.ORIGIN_REPLACEMENTS


def tor_generate(node: AstNode, index: TreeIndex) -> Mutations:
    yield index.edit('TOR', node.span, tables.ORIGIN_REPLACEMENTS[qualified_name(node)], node)


# VUR

def vur_precondition(node: AstNode, index: TreeIndex) -> bool:
    return node['subdenomination'] in tables.UNIT_REPLACEMENTS


def vur_generate(node: AstNode, index: TreeIndex) -> Mutations:
    yield index.edit('VUR', node['subdenomination_span'], tables.UNIT_REPLACEMENTS[node['subdenomination']], node)


# VVR

def _referenced_in(contracts: List[AstNode], name: str) -> bool:
    return any(
        identifier['name'] == name
        for contract in contracts for identifier in visit(contract, NodeKind.IDENTIFIER)
    )


def _accessed_as_member(name: str, index: TreeIndex) -> bool:
    return any(access['member_name'] == name for access in visit(index.ast, NodeKind.MEMBER_ACCESS))


def vvr_precondition(node: AstNode, index: TreeIndex) -> bool:
    if node['override']:
        return False
    contract = index.contract_of(node)
    return contract is not None and contract['contract_kind'] != 'interface'


def vvr_generate(node: AstNode, index: TreeIndex) -> Mutations:
    current = node['visibility']
    if current is None:
        yield index.insert('VVR', node['type_span'].end, ' public', node)
        return
    name = node['name']
    derived = index.derived(index.contract_of(node))
    for visibility in tables.VARIABLE_VISIBILITIES:
        if visibility == current:
            continue
        if current == 'public' and _accessed_as_member(name, index):
            continue
        if visibility == 'private' and _referenced_in(derived, name):
            continue
        yield index.edit('VVR', node['visibility_span'], visibility, node)


RULES: List[OperatorRule] = [
    OperatorRule(
        'AVR', 'Address Value Replacement', SOLIDITY,
        (NodeKind.ELEMENTARY_TYPE_CONVERSION, NodeKind.LITERAL, NodeKind.MEMBER_ACCESS, NodeKind.IDENTIFIER),
        avr_generate, avr_precondition,
    ),
    OperatorRule(
        'CCD', 'Contract Constructor Deletion', SOLIDITY,
        NodeKind.FUNCTION_DEFINITION, ccd_generate, ccd_precondition, novel=True,
    ),
    OperatorRule(
        'DLR', 'Data Location keyword Replacement', SOLIDITY,
        NodeKind.VARIABLE_DECLARATION, dlr_generate, dlr_precondition,
    ),
    OperatorRule(
        'DOD', 'Delete Operator Deletion', SOLIDITY,
        NodeKind.DELETE_EXPRESSION, dod_generate, dod_precondition,
    ),
    OperatorRule(
        'EED', 'Event Emission Deletion', SOLIDITY,
        NodeKind.EMIT_STATEMENT, eed_generate,
    ),
    OperatorRule(
        'EHC', 'Exception Handling statement Change', SOLIDITY,
        NodeKind.EXPRESSION_STATEMENT, ehc_generate, ehc_precondition,
    ),
    OperatorRule(
        'ETR', 'Ether Transfer function Replacement', SOLIDITY,
        NodeKind.FUNCTION_CALL, etr_generate, etr_precondition,
    ),
    OperatorRule(
        'FVR', 'Function Visibility Replacement', SOLIDITY,
        NodeKind.FUNCTION_DEFINITION, fvr_generate, fvr_precondition,
    ),
    OperatorRule(
        'GVR', 'Global Variable Replacement', SOLIDITY,
        (NodeKind.MEMBER_ACCESS, NodeKind.FUNCTION_CALL), gvr_generate, gvr_precondition, novel=True,
    ),
    OperatorRule(
        'MCR', 'Mathematical and Cryptographic function Replacement', SOLIDITY,
        NodeKind.FUNCTION_CALL, mcr_generate, mcr_precondition, novel=True,
    ),
    OperatorRule(
        'MOC', 'Modifiers Order Change', SOLIDITY,
        NodeKind.FUNCTION_DEFINITION, moc_generate, moc_precondition, novel=True,
    ),
    OperatorRule(
        'MOD', 'Modifier Deletion', SOLIDITY,
        NodeKind.FUNCTION_DEFINITION, mod_generate, modifier_function_precondition,
    ),
    OperatorRule(
        'MOI', 'Modifier Insertion', SOLIDITY,
        NodeKind.FUNCTION_DEFINITION, moi_generate, moi_precondition,
    ),
    OperatorRule(
        'MOR', 'Modifier Replacement', SOLIDITY,
        NodeKind.FUNCTION_DEFINITION, mor_generate, modifier_function_precondition,
    ),
    OperatorRule(
        'OMD', 'Overridden Modifier Deletion', SOLIDITY,
        NodeKind.MODIFIER_DEFINITION, omd_generate, omd_precondition, novel=True,
    ),
    OperatorRule(
        'PKD', 'Payable Keyword Deletion', SOLIDITY,
        NodeKind.FUNCTION_DEFINITION, pkd_generate, pkd_precondition,
    ),
    OperatorRule(
        'RSD', 'Return Statement Deletion', SOLIDITY,
        NodeKind.RETURN_STATEMENT, rsd_generate, rsd_precondition,
    ),
    OperatorRule(
        'RVS', 'Return Values Swap', SOLIDITY,
        NodeKind.FUNCTION_DEFINITION, rvs_generate, novel=True,
    ),
    OperatorRule(
        'SCEC', 'Switch Call Expression Casting', SOLIDITY,
        NodeKind.FUNCTION_CALL, scec_generate, scec_precondition,
    ),
    OperatorRule(
        'SFD', 'Selfdestruct Function Deletion', SOLIDITY,
        NodeKind.EXPRESSION_STATEMENT, sfd_generate, sfd_precondition,
    ),
    OperatorRule(
        'SFI', 'Selfdestruct Function Insertion', SOLIDITY,
        NodeKind.FUNCTION_DEFINITION, sfi_generate, sfi_precondition,
    ),
    OperatorRule(
        'SFR', 'SafeMath Function Replacement', SOLIDITY,
        NodeKind.FUNCTION_CALL, sfr_generate, sfr_precondition, novel=True,
    ),
    OperatorRule(
        'TOR', 'Transaction Origin Replacement', SOLIDITY,
        NodeKind.MEMBER_ACCESS, tor_generate, tor_precondition,
    ),
    OperatorRule(
        'VUR', 'Variable Unit Replacement', SOLIDITY,
        NodeKind.LITERAL, vur_generate, vur_precondition,
    ),
    OperatorRule(
        'VVR', 'Variable Visibility Replacement', SOLIDITY,
        NodeKind.STATE_VARIABLE_DECLARATION, vvr_generate, vvr_precondition,
    ),
]
