"""
Replacement tables used by the mutation operators.

Every fixed replacement pair lives here so the tables can be revised without
touching the matching logic.
"""
from typing import Dict, Tuple

SOLIDITY = 'solidity'
GENERAL = 'general'

# Binary operators: one replacement of the same class per operator
BINARY_OPERATOR_REPLACEMENTS: Dict[str, str] = {
    '+': '-', '-': '+',
    '*': '/', '/': '*',
    '%': '*', '**': '*',
    '<': '<=', '<=': '<',
    '>': '>=', '>=': '>',
    '==': '!=', '!=': '==',
    '&&': '||', '||': '&&',
    '&': '|', '|': '&', '^': '&',
    '<<': '>>', '>>': '<<',
}

ASSIGNMENT_OPERATOR_REPLACEMENTS: Dict[str, str] = {
    '+=': '-=', '-=': '+=',
    '*=': '/=', '/=': '*=', '%=': '*=',
    '<<=': '>>=', '>>=': '<<=',
    '&=': '|=', '|=': '&=', '^=': '&=',
}

INCREMENT_REPLACEMENTS: Dict[str, str] = {'++': '--', '--': '++'}
DELETABLE_UNARY_OPERATORS: Tuple[str, ...] = ('-', '!', '~')

# Global variables and functions, grouped by compatible type
GLOBAL_REPLACEMENTS: Dict[str, str] = {
    'block.timestamp': 'block.number',
    'block.number': 'block.timestamp',
    'block.gaslimit': 'gasleft()',
    'gasleft()': 'block.gaslimit',
    'msg.value': 'tx.gasprice',
    'tx.gasprice': 'msg.value',
    'msg.sender': 'block.coinbase',
    'block.coinbase': 'msg.sender',
}

ORIGIN_REPLACEMENTS: Dict[str, str] = {
    'msg.sender': 'tx.origin',
    'tx.origin': 'msg.sender',
}

# ripemd160 returns bytes20 and has no compatible counterpart
MATH_CRYPTO_REPLACEMENTS: Dict[str, str] = {
    'addmod': 'mulmod', 'mulmod': 'addmod',
    'keccak256': 'sha256', 'sha256': 'keccak256',
}

SAFEMATH_REPLACEMENTS: Dict[str, str] = {
    'add': 'sub', 'sub': 'add',
    'mul': 'div', 'div': 'mul',
    'mod': 'mul',
}

UNIT_REPLACEMENTS: Dict[str, str] = {
    'wei': 'gwei', 'gwei': 'ether', 'ether': 'gwei',
    'seconds': 'minutes', 'minutes': 'hours', 'hours': 'days',
    'days': 'weeks', 'weeks': 'days',
}

DATA_LOCATION_REPLACEMENTS: Dict[str, str] = {
    'memory': 'storage',
    'storage': 'memory',
    'calldata': 'memory',
}

FUNCTION_VISIBILITIES: Tuple[str, ...] = ('public', 'external', 'internal', 'private')
VARIABLE_VISIBILITIES: Tuple[str, ...] = ('public', 'internal', 'private')

EXCEPTION_HANDLERS: Tuple[str, ...] = ('require', 'assert', 'revert')
EXCEPTION_HANDLER_SWAPS: Dict[str, str] = {'require': 'assert', 'assert': 'require'}

SELFDESTRUCT_FUNCTIONS: Tuple[str, ...] = ('selfdestruct', 'suicide')
SELFDESTRUCT_STATEMENT = 'selfdestruct(payable(msg.sender));'

LOW_LEVEL_CALLS: Tuple[str, ...] = ('call', 'delegatecall', 'staticcall')

EMPTY_STRING_FILLER = '"sumo"'

ZERO_ADDRESS = 'address(0)'
PAYABLE_ZERO_ADDRESS = 'payable(address(0))'
THIS_ADDRESS = 'address(this)'
PAYABLE_THIS_ADDRESS = 'payable(address(this))'


def default_value(type_name: str) -> str:
    """
    Zero value literal for an elementary type, used to fill in extra arguments.

    Returns an empty string for types without a literal zero value.
    """
    if type_name.startswith(('uint', 'int', 'ufixed', 'fixed')) and '[' not in type_name:
        return '0'
    if type_name == 'bool':
        return 'false'
    if type_name in ('string', 'bytes'):
        return '""'
    if type_name == 'address':
        return ZERO_ADDRESS
    if type_name == 'address payable':
        return PAYABLE_ZERO_ADDRESS
    if type_name.startswith('bytes') and type_name[5:].isdigit():
        return f"{type_name}(0)"
    return ''
