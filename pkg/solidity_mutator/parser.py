"""
Syntax trees for Solidity sources, built from the ANTLR grammar that ships with
solidity-parser.

The grammar produces a concrete parse tree; ``TreeBuilder`` folds it into the
``AstNode`` schema the mutation operators work on. Constructs the operators
never touch (assembly blocks, structs, custom errors, user-defined value
types, using-for directives, pragmas and imports) are kept as opaque nodes
with an exact span.
"""
import fnmatch
import hashlib
import logging
import re
from dataclasses import dataclass, field, replace
from itertools import accumulate
from pathlib import Path
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Union

from antlr4 import CommonTokenStream, InputStream, ParserRuleContext, Token
from antlr4.error.ErrorListener import ErrorListener
from antlr4.tree.Tree import TerminalNode
from django.conf import settings
from django.core.cache import cache
from solidity_parser.solidity_antlr4.SolidityLexer import SolidityLexer
from solidity_parser.solidity_antlr4.SolidityParser import SolidityParser

from .exceptions import EmptyTargetSetError, SolidityParseError
from .nodes import AstNode, NodeKind, SourceSpan

logger = logging.getLogger(__name__)

ParseTree = Union[ParserRuleContext, TerminalNode]

ELEMENTARY_TYPE_RE = re.compile(
    r'^(?:address|bool|string|bytes|byte|u?int(?:8|16|24|32|40|48|56|64|72|80|88|96|104|112|120|128|136|144'
    r'|152|160|168|176|184|192|200|208|216|224|232|240|248|256)?|bytes(?:[1-9]|[12][0-9]|3[0-2])'
    r'|u?fixed(?:\d+x\d+)?)$'
)
_WORD_RE = re.compile(r'[\w$]')

CONTRACT_KINDS = ('contract', 'interface', 'library')
VISIBILITIES = ('public', 'external', 'internal', 'private')
MUTABILITIES = ('pure', 'view', 'payable', 'constant')
ASSIGNMENT_OPERATORS = ('=', '+=', '-=', '*=', '/=', '%=', '|=', '&=', '^=', '<<=', '>>=', '>>>=')
BINARY_OPERATORS = (
    '||', '&&', '==', '!=', '<', '>', '<=', '>=', '|', '^', '&',
    '<<', '>>', '>>>', '+', '-', '*', '/', '%', '**',
)
PREFIX_OPERATORS = ('!', '~', '-', '+', '++', '--')

# Grammar rules kept as opaque nodes, by the construct name they are reported under
OPAQUE_RULES = {
    'pragmaDirective': 'pragma',
    'importDirective': 'import',
    'usingForDeclaration': 'using',
    'structDefinition': 'struct',
    'customErrorDefinition': 'error',
    'typeDefinition': 'type',
    'inlineAssemblyStatement': 'assembly',
    'revertStatement': 'revert_error',
    'throwStatement': 'throw',
}


def canonical_type(type_name: str) -> str:
    """Normalize type spelling so ``uint`` and ``uint256`` compare equal."""
    canonical = re.sub(r'\buint\b', 'uint256', type_name)
    canonical = re.sub(r'\bint\b', 'int256', canonical)
    canonical = re.sub(r'\bbyte\b', 'bytes1', canonical)
    return canonical


def _join(words: Iterable[str]) -> str:
    parts: List[str] = []
    previous = ''
    for word in words:
        if previous and _WORD_RE.match(previous[-1]) and _WORD_RE.match(word[0]):
            parts.append(' ')
        parts.append(word)
        previous = word
    return ''.join(parts)


def _either(node: Optional[Any], fallback: Any) -> Any:
    return node if node is not None else fallback


class RaisingErrorListener(ErrorListener):
    """Reports the first lexer or parser error as a ``SolidityParseError``."""

    def __init__(self, path: str = ''):
        super().__init__()
        self.path = path

    def syntaxError(self, recognizer, offendingSymbol, line, column, msg, e):
        if offendingSymbol is not None and offendingSymbol.type == Token.EOF:
            msg = "Unexpected end of input"
        raise SolidityParseError(msg, line, column + 1, self.path)


def parse_tree(text: str, path: str = '') -> ParserRuleContext:
    """
    Run the Solidity grammar over ``text``.

    Raises:
        SolidityParseError: On the first syntax error
    """
    listener = RaisingErrorListener(path)
    lexer = SolidityLexer(InputStream(text))
    lexer.removeErrorListeners()
    lexer.addErrorListener(listener)
    parser = SolidityParser(CommonTokenStream(lexer))
    parser.removeErrorListeners()
    parser.addErrorListener(listener)
    return parser.sourceUnit()


class TreeBuilder:
    """Folds one grammar parse tree into ``AstNode``s. Instances are single use."""

    def __init__(self, text: str):
        self.length = len(text.encode('utf-8'))
        # Grammar token offsets count characters; spans count UTF-8 bytes
        self.offsets = None if text.isascii() else [0, *accumulate(len(ch.encode('utf-8')) for ch in text)]
        self.enum_names: set = set()
        self.contract_kind: Optional[str] = None
        self.builders: Dict[str, Callable[[ParserRuleContext], AstNode]] = {
            'contractPart': self.unwrap,
            'statement': self.unwrap,
            'simpleStatement': self.unwrap,
            'contractDefinition': self.contract_definition,
            'functionDefinition': self.function_definition,
            'modifierDefinition': self.modifier_definition,
            'eventDefinition': self.event_definition,
            'enumDefinition': self.enum_definition,
            'stateVariableDeclaration': self.state_variable,
            'fileLevelConstant': self.state_variable,
            'block': self.block,
            'uncheckedStatement': self.unchecked_block,
            'expressionStatement': self.expression_statement,
            'ifStatement': self.if_statement,
            'forStatement': self.for_statement,
            'whileStatement': self.while_statement,
            'doWhileStatement': self.do_while_statement,
            'continueStatement': self.jump_statement,
            'breakStatement': self.jump_statement,
            'returnStatement': self.return_statement,
            'emitStatement': self.emit_statement,
            'tryStatement': self.try_statement,
            'variableDeclarationStatement': self.variable_declaration_statement,
            'expression': self.expression,
            'primaryExpression': self.primary,
            'functionCall': self.call,
            'tupleExpression': self.tuple_expression,
        }

    # Parse tree helpers

    @staticmethod
    def rule(node: ParseTree) -> Optional[str]:
        if isinstance(node, TerminalNode):
            return None
        return SolidityParser.ruleNames[node.getRuleIndex()]

    def rules(self, node: Optional[ParserRuleContext], *names: str) -> List[ParserRuleContext]:
        if node is None:
            return []
        return [child for child in node.children or [] if self.rule(child) in names]

    def first(self, node: Optional[ParserRuleContext], *names: str) -> Optional[ParserRuleContext]:
        found = self.rules(node, *names)
        return found[0] if found else None

    @staticmethod
    def terminals(node: ParserRuleContext) -> List[TerminalNode]:
        return [child for child in node.children or [] if isinstance(child, TerminalNode)]

    def keyword(self, node: ParserRuleContext, *words: str) -> Optional[TerminalNode]:
        return next((t for t in self.terminals(node) if t.getText() in words), None)

    def leaves(self, node: ParseTree) -> List[TerminalNode]:
        if isinstance(node, TerminalNode):
            return [node]
        found: List[TerminalNode] = []
        for child in node.children or []:
            found.extend(self.leaves(child))
        return found

    def type_text(self, node: ParseTree) -> str:
        return _join(leaf.getText() for leaf in self.leaves(node))

    def offset(self, index: int) -> int:
        return self.offsets[index] if self.offsets else index

    def span(self, node: ParseTree) -> SourceSpan:
        if isinstance(node, TerminalNode):
            token = node.getSymbol()
            return SourceSpan(self.offset(token.start), self.offset(token.stop + 1))
        start, stop = node.start, node.stop
        end = start.start if stop is None or stop.tokenIndex < start.tokenIndex else stop.stop + 1
        return SourceSpan(self.offset(start.start), self.offset(end))

    def optional_span(self, node: Optional[ParseTree]) -> Optional[SourceSpan]:
        return self.span(node) if node is not None else None

    def finish(self, kind: NodeKind, node: ParseTree, children: Iterable[Optional[AstNode]] = (),
               **attributes: Any) -> AstNode:
        nodes = sorted((c for c in children if c is not None), key=lambda c: c.span.start)
        return AstNode(kind, self.span(node), tuple(nodes), attributes)

    def slots(self, children: Sequence[ParseTree],
              convert: Callable[[ParserRuleContext], AstNode]) -> List[Optional[AstNode]]:
        """Convert comma separated children, keeping ``None`` for empty slots."""
        found: List[Optional[AstNode]] = []
        current: Optional[AstNode] = None
        for child in children:
            if isinstance(child, TerminalNode):
                if child.getText() == ',':
                    found.append(current)
                    current = None
            else:
                current = convert(child)
        found.append(current)
        return found

    def build(self, node: ParserRuleContext) -> AstNode:
        rule = self.rule(node)
        builder = self.builders.get(rule)
        if builder is None:
            return self.finish(NodeKind.OPAQUE, node, construct=OPAQUE_RULES.get(rule, rule))
        return builder(node)

    def unwrap(self, node: ParserRuleContext) -> AstNode:
        inner = [child for child in node.children or [] if not isinstance(child, TerminalNode)]
        if len(inner) != 1:
            return self.finish(NodeKind.OPAQUE, node, construct=self.rule(node))
        return self.build(inner[0])

    # Source unit and contracts

    def source_unit(self, tree: ParserRuleContext) -> AstNode:
        self.enum_names = {
            self.first(node, 'identifier').getText()
            for node in self.descendants(tree) if self.rule(node) == 'enumDefinition'
        }
        items = [self.build(child) for child in tree.children or [] if not isinstance(child, TerminalNode)]
        return AstNode(NodeKind.SOURCE_UNIT, SourceSpan(0, self.length), tuple(items), {})

    def descendants(self, node: ParserRuleContext) -> Iterable[ParserRuleContext]:
        stack = [node]
        while stack:
            current = stack.pop()
            yield current
            stack.extend(child for child in current.children or [] if not isinstance(child, TerminalNode))

    def contract_definition(self, node: ParserRuleContext) -> AstNode:
        words = [t.getText() for t in self.terminals(node)]
        kind = next(word for word in words if word in CONTRACT_KINDS)
        name = self.first(node, 'identifier')
        specifiers = [self.inheritance_specifier(c) for c in self.rules(node, 'inheritanceSpecifier')]
        parts = [c for c in node.children or []
                 if not isinstance(c, TerminalNode) and self.rule(c) not in ('identifier', 'inheritanceSpecifier')]
        outer, self.contract_kind = self.contract_kind, kind
        try:
            members = [self.build(part) for part in parts]
        finally:
            self.contract_kind = outer
        return self.finish(
            NodeKind.CONTRACT_DEFINITION, node, [*specifiers, *members],
            name=name.getText(), name_span=self.span(name),
            contract_kind=kind, abstract='abstract' in words, bases=[s['name'] for s in specifiers],
        )

    def inheritance_specifier(self, node: ParserRuleContext) -> AstNode:
        path = node.getChild(0).getText()
        arguments = self.expression_list(self.first(node, 'expressionList'))
        return self.finish(
            NodeKind.INHERITANCE_SPECIFIER, node, arguments,
            name=path.split('.')[-1], path=path, arguments=arguments,
        )

    def function_definition(self, node: ParserRuleContext) -> AstNode:
        descriptor = _either(self.first(node, 'functionDescriptor'), node)
        keyword = self.leaves(descriptor)[0].getText()
        name_node = self.first(descriptor, 'identifier')
        name: Optional[str] = None
        if keyword == 'function':
            name = name_node.getText() if name_node is not None else None
        else:
            name = '' if keyword == 'constructor' else keyword

        parameter_lists = self.rules(node, 'parameterList')
        parameters = self.parameter_list(parameter_lists[0])
        returns_node = self.first(node, 'returnParameters')
        if returns_node is not None:
            returns = self.parameter_list(self.first(returns_node, 'parameterList'))
            returns_keyword = self.keyword(returns_node, 'returns')
        else:
            returns = self.parameter_list(parameter_lists[1]) if len(parameter_lists) > 1 else None
            returns_keyword = self.keyword(node, 'returns')

        attributes: Dict[str, Any] = {
            'visibility': None, 'visibility_span': None,
            'state_mutability': None, 'state_mutability_span': None,
            'virtual': False, 'override': False, 'override_bases': [],
        }
        modifiers: List[AstNode] = []
        for child in self.function_attributes(node):
            text = child.getText()
            rule = self.rule(child)
            if rule == 'modifierInvocation':
                modifiers.append(self.modifier_invocation(child))
            elif rule == 'overrideSpecifier' or text == 'override':
                attributes['override'] = True
                attributes['override_bases'] = [c.getText() for c in self.rules(child, 'userDefinedTypeName')]
            elif text in VISIBILITIES:
                attributes['visibility'], attributes['visibility_span'] = text, self.span(child)
            elif text in MUTABILITIES:
                attributes['state_mutability'], attributes['state_mutability_span'] = text, self.span(child)
            elif text == 'virtual':
                attributes['virtual'] = True

        body_node = self.first(node, 'block')
        body = self.block(body_node) if body_node is not None else None
        return self.finish(
            NodeKind.FUNCTION_DEFINITION, node, [parameters, *modifiers, returns, body],
            name=name, name_span=self.optional_span(name_node) if keyword == 'function' else None,
            is_constructor=keyword == 'constructor',
            is_receive=keyword == 'receive',
            is_fallback=keyword == 'fallback' or (keyword == 'function' and name is None),
            contract_kind=self.contract_kind,
            parameters=parameters, parameter_types=parameters['types'],
            return_parameters=returns, return_types=returns['types'] if returns else [],
            returns_span=self.optional_span(returns_keyword),
            modifiers=modifiers, body=body,
            payable=attributes['state_mutability'] == 'payable',
            **attributes,
        )

    def function_attributes(self, node: ParserRuleContext) -> List[ParseTree]:
        modifier_list = self.first(node, 'modifierList')
        if modifier_list is not None:
            return list(modifier_list.children or [])
        return [c for c in node.children or []
                if self.rule(c) in ('modifierInvocation', 'overrideSpecifier', 'stateMutability', 'visibility')
                or (isinstance(c, TerminalNode) and c.getText() in (*VISIBILITIES, *MUTABILITIES, 'virtual'))]

    def modifier_invocation(self, node: ParserRuleContext) -> AstNode:
        name_node = node.getChild(0)
        path = name_node.getText()
        arguments = self.expression_list(self.first(node, 'expressionList'))
        return self.finish(
            NodeKind.MODIFIER_INVOCATION, node, arguments,
            name=path.split('.')[-1], path=path, name_span=self.span(name_node),
            arguments=arguments, has_arguments=self.keyword(node, '(') is not None,
        )

    def modifier_definition(self, node: ParserRuleContext) -> AstNode:
        parameters = self.parameter_list(self.first(node, 'parameterList'))
        body_node = self.first(node, 'block')
        body = self.block(body_node) if body_node is not None else None
        return self.finish(
            NodeKind.MODIFIER_DEFINITION, node, [parameters, body],
            name=self.first(node, 'identifier').getText(), parameters=parameters,
            parameter_types=parameters['types'] if parameters else [],
            virtual=self.keyword(node, 'virtual') is not None,
            override=self.first(node, 'overrideSpecifier') is not None or self.keyword(node, 'override') is not None,
            body=body,
        )

    def event_definition(self, node: ParserRuleContext) -> AstNode:
        parameters = self.parameter_list(self.first(node, 'eventParameterList', 'parameterList'))
        return self.finish(
            NodeKind.EVENT_DEFINITION, node, [parameters],
            name=self.first(node, 'identifier').getText(), parameters=parameters,
        )

    def enum_definition(self, node: ParserRuleContext) -> AstNode:
        members = [
            AstNode(NodeKind.ENUM_VALUE, self.span(value), (), {'name': value.getText()})
            for value in self.rules(node, 'enumValue')
        ]
        return self.finish(
            NodeKind.ENUM_DEFINITION, node, members,
            name=self.first(node, 'identifier').getText(), members=[m['name'] for m in members],
        )

    def state_variable(self, node: ParserRuleContext) -> AstNode:
        type_node = self.first(node, 'typeName')
        visibility = self.keyword(node, *VISIBILITIES)
        name = self.first(node, 'identifier')
        value = self.optional_expression(self.first(node, 'expression'))
        return self.finish(
            NodeKind.STATE_VARIABLE_DECLARATION, node, [value],
            type_name=self.type_text(type_node), type_span=self.span(type_node),
            visibility=visibility.getText() if visibility is not None else None,
            visibility_span=self.optional_span(visibility),
            constant=self.keyword(node, 'constant') is not None,
            immutable=self.keyword(node, 'immutable') is not None,
            override=self.first(node, 'overrideSpecifier') is not None,
            name=name.getText(), name_span=self.span(name), value=value,
        )

    # Types and parameters

    def parameter_list(self, node: Optional[ParserRuleContext]) -> Optional[AstNode]:
        if node is None:
            return None
        parameters = [
            self.variable_declaration(c)
            for c in self.rules(node, 'parameter', 'eventParameter', 'variableDeclaration')
        ]
        return self.finish(
            NodeKind.PARAMETER_LIST, node, parameters,
            parameters=parameters, types=[canonical_type(p['type_name']) for p in parameters],
        )

    def variable_declaration(self, node: ParserRuleContext) -> AstNode:
        type_node = self.first(node, 'typeName')
        location = _either(self.first(node, 'storageLocation'), self.keyword(node, 'memory', 'storage', 'calldata'))
        name = self.first(node, 'identifier')
        return self.finish(
            NodeKind.VARIABLE_DECLARATION, node,
            type_name=self.type_text(type_node), type_span=self.span(type_node),
            data_location=location.getText() if location is not None else None,
            data_location_span=self.optional_span(location),
            indexed=self.keyword(node, 'indexed') is not None,
            name=name.getText() if name is not None else None, name_span=self.optional_span(name),
        )

    # Statements

    def block(self, node: ParserRuleContext, unchecked: bool = False,
              outer: Optional[ParserRuleContext] = None) -> AstNode:
        statements = [self.build(c) for c in node.children or [] if not isinstance(c, TerminalNode)]
        return self.finish(NodeKind.BLOCK, _either(outer, node), statements, statements=statements, unchecked=unchecked)

    def unchecked_block(self, node: ParserRuleContext) -> AstNode:
        return self.block(self.first(node, 'block'), unchecked=True, outer=node)

    def expression_statement(self, node: ParserRuleContext) -> AstNode:
        expression = self.first(node, 'expression')
        if expression.getText() == '_':
            return self.finish(NodeKind.PLACEHOLDER_STATEMENT, node)
        converted = self.expression(expression)
        return self.finish(NodeKind.EXPRESSION_STATEMENT, node, [converted], expression=converted)

    def if_statement(self, node: ParserRuleContext) -> AstNode:
        condition = self.expression(self.first(node, 'expression'))
        branches = self.rules(node, 'statement')
        true_body = self.build(branches[0])
        false_body = self.build(branches[1]) if len(branches) > 1 else None
        else_span = None
        if false_body is not None:
            else_span = SourceSpan(self.span(self.keyword(node, 'else')).start, false_body.span.end)
        return self.finish(
            NodeKind.IF_STATEMENT, node, [condition, true_body, false_body],
            condition=condition, true_body=true_body, false_body=false_body, else_span=else_span,
        )

    def for_statement(self, node: ParserRuleContext) -> AstNode:
        # 'for' '(' (init | ';') (condition ';' | ';') post? ')' body
        children = node.children
        init_node, condition_node, post_node = children[2], children[3], children[4]
        init = self.build(init_node) if not isinstance(init_node, TerminalNode) else None
        condition = None
        if not isinstance(condition_node, TerminalNode):
            condition = self.expression(_either(self.first(condition_node, 'expression'), condition_node))
        post = self.expression(post_node) if self.rule(post_node) == 'expression' else None
        body = self.build(self.rules(node, 'statement')[-1])
        return self.finish(
            NodeKind.FOR_STATEMENT, node, [init, condition, post, body],
            init=init, condition=condition, post=post, body=body,
        )

    def while_statement(self, node: ParserRuleContext) -> AstNode:
        condition = self.expression(self.first(node, 'expression'))
        body = self.build(self.first(node, 'statement'))
        return self.finish(NodeKind.WHILE_STATEMENT, node, [condition, body], condition=condition, body=body)

    def do_while_statement(self, node: ParserRuleContext) -> AstNode:
        body = self.build(self.first(node, 'statement'))
        condition = self.expression(self.first(node, 'expression'))
        return self.finish(NodeKind.DO_WHILE_STATEMENT, node, [body, condition], condition=condition, body=body)

    def jump_statement(self, node: ParserRuleContext) -> AstNode:
        if self.rule(node) == 'breakStatement':
            return self.finish(NodeKind.BREAK_STATEMENT, node)
        return self.finish(NodeKind.CONTINUE_STATEMENT, node)

    def return_statement(self, node: ParserRuleContext) -> AstNode:
        expression = self.optional_expression(self.first(node, 'expression'))
        return self.finish(NodeKind.RETURN_STATEMENT, node, [expression], expression=expression)

    def emit_statement(self, node: ParserRuleContext) -> AstNode:
        call = self.expression(self.first(node, 'functionCall', 'expression'))
        return self.finish(NodeKind.EMIT_STATEMENT, node, [call], call=call)

    def try_statement(self, node: ParserRuleContext) -> AstNode:
        expression = self.expression(self.first(node, 'expression'))
        returns_node = self.first(node, 'returnParameters')
        returns = self.parameter_list(self.first(returns_node, 'parameterList'))
        body = self.block(self.first(node, 'block'))
        clauses = [self.catch_clause(c) for c in self.rules(node, 'catchClause')]
        return self.finish(
            NodeKind.TRY_STATEMENT, node, [expression, returns, body, *clauses],
            expression=expression, returns=returns, body=body, clauses=clauses,
        )

    def catch_clause(self, node: ParserRuleContext) -> AstNode:
        error_name = self.first(node, 'identifier')
        parameters = self.parameter_list(self.first(node, 'parameterList'))
        body = self.block(self.first(node, 'block'))
        return self.finish(
            NodeKind.CATCH_CLAUSE, node, [parameters, body],
            error_name=error_name.getText() if error_name is not None else None,
            parameters=parameters, body=body,
        )

    def variable_declaration_statement(self, node: ParserRuleContext) -> AstNode:
        declarations: List[Optional[AstNode]]
        identifiers = self.first(node, 'identifierList')
        declaration_list = self.first(node, 'variableDeclarationList')
        if identifiers is not None:
            var = self.keyword(node, 'var')
            declarations = [
                AstNode(NodeKind.VARIABLE_DECLARATION, self.span(name), (), {
                    'type_name': 'var', 'type_span': self.span(var),
                    'data_location': None, 'data_location_span': None, 'indexed': False,
                    'name': name.getText(), 'name_span': self.span(name),
                })
                for name in self.rules(identifiers, 'identifier')
            ]
        elif declaration_list is not None:
            declarations = self.slots(declaration_list.children or [], self.variable_declaration)
        else:
            declarations = [self.variable_declaration(self.first(node, 'variableDeclaration'))]
        value = self.optional_expression(self.first(node, 'expression'))
        return self.finish(
            NodeKind.VARIABLE_DECLARATION_STATEMENT, node, [*declarations, value],
            declarations=declarations, initial_value=value,
        )

    # Expressions

    def optional_expression(self, node: Optional[ParserRuleContext]) -> Optional[AstNode]:
        return self.expression(node) if node is not None else None

    def expression_list(self, node: Optional[ParserRuleContext]) -> List[AstNode]:
        return [self.expression(c) for c in self.rules(node, 'expression')]

    def expression(self, node: ParserRuleContext) -> AstNode:
        rule = self.rule(node)
        if rule != 'expression':
            return self.build(node)
        children = node.children
        if len(children) == 1:
            return self.expression(children[0])
        head, second = children[0], children[1]
        if isinstance(head, TerminalNode):
            return self.prefix_expression(node, head.getText())
        operator = second.getText() if isinstance(second, TerminalNode) else None
        if operator in ('++', '--') and len(children) == 2:
            operand = self.expression(head)
            return self.finish(
                NodeKind.UNARY_EXPRESSION, node, [operand],
                operator=operator, operator_span=self.span(second), prefix=False, operand=operand,
            )
        if operator == '.':
            return self.member_access(node, self.expression(head), children[2])
        if operator == '[':
            return self.index_access(node)
        if operator == '(':
            return self.call(node)
        if operator == '?':
            condition, true_expression, false_expression = (self.expression(c) for c in self.rules(node, 'expression'))
            return self.finish(
                NodeKind.CONDITIONAL, node, [condition, true_expression, false_expression],
                condition=condition, true_expression=true_expression, false_expression=false_expression,
            )
        if operator in ASSIGNMENT_OPERATORS or operator in BINARY_OPERATORS:
            left, right = self.expression(head), self.expression(children[2])
            kind = NodeKind.ASSIGNMENT if operator in ASSIGNMENT_OPERATORS else NodeKind.BINARY_EXPRESSION
            return self.finish(
                kind, node, [left, right],
                operator=operator, operator_span=self.span(second), left=left, right=right,
            )
        # Call options without a call
        return self.finish(NodeKind.OPAQUE, node, construct=operator or 'expression')

    def prefix_expression(self, node: ParserRuleContext, keyword: str) -> AstNode:
        head, operand_node = node.children[0], node.children[1]
        if keyword == 'new':
            return self.finish(
                NodeKind.NEW_EXPRESSION, node,
                type_name=self.type_text(operand_node), type_span=self.span(operand_node),
            )
        if keyword == '(':
            inner = self.expression(operand_node)
            return self.finish(NodeKind.TUPLE_EXPRESSION, node, [inner], components=[inner], is_inline_array=False)
        operand = self.expression(operand_node)
        if keyword == 'delete':
            return self.finish(NodeKind.DELETE_EXPRESSION, node, [operand], operand=operand)
        if keyword in PREFIX_OPERATORS:
            return self.finish(
                NodeKind.UNARY_EXPRESSION, node, [operand],
                operator=keyword, operator_span=self.span(head), prefix=True, operand=operand,
            )
        return self.finish(NodeKind.OPAQUE, node, [operand], construct=keyword)

    def member_access(self, node: ParserRuleContext, expression: AstNode, member: ParseTree) -> AstNode:
        member_name = member.getText()
        enum_name = None
        if expression.kind == NodeKind.IDENTIFIER and expression['name'] in self.enum_names:
            enum_name = expression['name']
        elif expression.kind == NodeKind.MEMBER_ACCESS and expression['member_name'] in self.enum_names:
            enum_name = expression['member_name']
        if enum_name is not None:
            return self.finish(
                NodeKind.ENUM_MEMBER_ACCESS, node, [expression],
                expression=expression, enum_name=enum_name,
                member_name=member_name, member_span=self.span(member),
            )
        return self.finish(
            NodeKind.MEMBER_ACCESS, node, [expression],
            expression=expression, member_name=member_name, member_span=self.span(member),
        )

    def index_access(self, node: ParserRuleContext) -> AstNode:
        base = self.expression(node.children[0])
        index = end_index = None
        is_range = False
        for child in node.children[2:-1]:
            if isinstance(child, TerminalNode):
                is_range = is_range or child.getText() == ':'
            elif is_range:
                end_index = self.expression(child)
            else:
                index = self.expression(child)
        return self.finish(
            NodeKind.INDEX_ACCESS, node, [base, index, end_index],
            base=base, index=index, end_index=end_index, is_range=is_range,
        )

    def call(self, node: ParserRuleContext) -> AstNode:
        # callee '(' arguments ')', where callee may carry '{' options '}'
        callee_node = node.children[0]
        options = []
        callee_children = callee_node.children or []
        if self.rule(callee_node) == 'expression' and len(callee_children) == 4 \
                and callee_children[1].getText() == '{':
            options = self.name_values(callee_children[2])
            callee_node = callee_children[0]
        callee = self.expression(callee_node)
        arguments_node = self.first(node, 'functionCallArguments')
        if arguments_node is not None and self.keyword(arguments_node, '{') is not None:
            named = self.name_values(self.first(arguments_node, 'nameValueList'))
            names, arguments = [name for name, _ in named], [value for _, value in named]
        else:
            names, arguments = [], self.expression_list(self.first(arguments_node, 'expressionList'))
        arguments_span = SourceSpan(self.span(node.children[1]).start, self.span(node.children[-1]).end)

        if callee.kind == NodeKind.ELEMENTARY_TYPE_NAME and len(arguments) == 1 and not names and not options:
            return self.finish(
                NodeKind.ELEMENTARY_TYPE_CONVERSION, node, [callee, arguments[0]],
                target_type=callee['type_name'], target_span=callee.span, argument=arguments[0],
            )
        member_name = callee['member_name'] if callee.kind == NodeKind.MEMBER_ACCESS else None
        function_name = callee['name'] if callee.kind == NodeKind.IDENTIFIER else member_name
        return self.finish(
            NodeKind.FUNCTION_CALL, node, [callee, *(value for _, value in options), *arguments],
            callee=callee, callee_path=_callee_path(callee), function_name=function_name,
            member_name=member_name, arguments=arguments, argument_names=names,
            arguments_span=arguments_span, call_options=options,
        )

    def name_values(self, node: Optional[ParserRuleContext]) -> List[tuple]:
        return [
            (self.first(pair, 'identifier').getText(), self.expression(self.first(pair, 'expression')))
            for pair in self.rules(node, 'nameValue')
        ]

    def primary(self, node: ParserRuleContext) -> AstNode:
        head = node.children[0]
        rule = self.rule(head)
        if rule == 'numberLiteral':
            number, *unit = self.leaves(head)
            value = number.getText()
            return self.finish(
                NodeKind.LITERAL, node,
                literal_kind='hex' if value[:2].lower() == '0x' else 'number',
                value=value, value_span=self.span(number),
                subdenomination=unit[0].getText() if unit else None,
                subdenomination_span=self.span(unit[0]) if unit else None,
            )
        if rule in ('stringLiteral', 'hexLiteral'):
            parts = [leaf.getText() for leaf in self.leaves(head)]
            literal_kind = 'string'
            if parts[0].startswith('hex'):
                literal_kind = 'hex_string'
            elif parts[0].startswith('unicode'):
                literal_kind = 'unicode_string'
            return self.finish(
                NodeKind.LITERAL, node, literal_kind=literal_kind, value=' '.join(parts),
                value_span=self.span(head), parts=len(parts),
                subdenomination=None, subdenomination_span=None,
            )
        if rule == 'tupleExpression':
            return self.tuple_expression(head)
        if rule is None and head.getText() in ('true', 'false'):
            return self.finish(
                NodeKind.LITERAL, node, literal_kind='bool', value=head.getText(),
                value_span=self.span(head), subdenomination=None, subdenomination_span=None,
            )
        name = self.type_text(head)
        if name == 'payable' or name == 'address payable' or ELEMENTARY_TYPE_RE.match(name):
            named = self.finish(NodeKind.ELEMENTARY_TYPE_NAME, head, type_name=name)
        else:
            named = self.finish(NodeKind.IDENTIFIER, head, name=name)
        if len(node.children) > 1:
            # Array type in expression position, such as ``uint[]``
            return self.finish(
                NodeKind.INDEX_ACCESS, node, [named],
                base=named, index=None, end_index=None, is_range=False,
            )
        return named

    def tuple_expression(self, node: ParserRuleContext) -> AstNode:
        opening = node.children[0].getText()
        inner = node.children[1:-1]
        components = self.slots(inner, self.expression) if inner else []
        return self.finish(
            NodeKind.TUPLE_EXPRESSION, node, components,
            components=components, is_inline_array=opening == '[',
        )


def _callee_path(callee: AstNode) -> Optional[str]:
    if callee.kind == NodeKind.IDENTIFIER:
        return callee['name']
    if callee.kind == NodeKind.ELEMENTARY_TYPE_NAME:
        return callee['type_name']
    if callee.kind in (NodeKind.MEMBER_ACCESS, NodeKind.ENUM_MEMBER_ACCESS):
        base = _callee_path(callee['expression'])
        return f"{base}.{callee['member_name']}" if base else None
    return None


@dataclass(frozen=True)
class SourceFile:
    """A contract file under test. ``path`` is relative to the project directory."""

    path: str
    text: str
    content_hash: str = ''
    ast: Optional[AstNode] = field(default=None, compare=False, repr=False)
    decode_error: Optional[SolidityParseError] = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        digest = hashlib.sha256(self.text.encode('utf-8')).hexdigest()
        object.__setattr__(self, 'content_hash', digest)

    @classmethod
    def read(cls, path: Union[str, Path], relative: str) -> 'SourceFile':
        """
        Load a contract file.

        Bytes that are not valid UTF-8 are replaced, and the first one is kept
        as ``decode_error`` so the file is reported instead of parsed.
        """
        data = Path(path).read_bytes()
        try:
            return cls(relative, data.decode('utf-8'))
        except UnicodeDecodeError as e:
            line = data.count(b'\n', 0, e.start) + 1
            column = e.start - (data.rfind(b'\n', 0, e.start) + 1) + 1
            logger.warning("%s is not valid UTF-8 at byte %d", relative, e.start)
            error = SolidityParseError("File is not valid UTF-8", line, column, relative)
            return cls(relative, data.decode('utf-8', errors='replace'), decode_error=error)

    @property
    def data(self) -> bytes:
        return self.text.encode('utf-8')

    @property
    def stem(self) -> str:
        return Path(self.path).stem


def parse(file: SourceFile) -> AstNode:
    """
    Parse a source file into a syntax tree.

    Args:
        file (SourceFile): File to parse

    Returns:
        AstNode: SourceUnit root covering the whole file

    Raises:
        SolidityParseError: If the text is not valid UTF-8 or not syntactically valid Solidity
    """
    if file.decode_error is not None:
        raise file.decode_error
    return TreeBuilder(file.text).source_unit(parse_tree(file.text, file.path))


def get_cache_key(file: SourceFile) -> str:
    """Generate cache key for a parsed file."""
    return f"solidity_ast_{file.content_hash}"


def parse_file(file: SourceFile) -> SourceFile:
    """
    Return a copy of ``file`` with its AST populated, reusing cached parses.

    Raises:
        SolidityParseError: If the text is not syntactically valid Solidity
    """
    if file.ast is not None:
        return file
    if file.decode_error is not None:
        raise file.decode_error
    cache_key = get_cache_key(file)
    try:
        cached_ast = cache.get(cache_key)
        if cached_ast is not None:
            logger.debug("Retrieved AST for %s from cache", file.path)
            return replace(file, ast=cached_ast)
    except Exception as e:
        logger.warning("Cache retrieval failed: %s", str(e))

    logger.debug("Parsing %s", file.path)
    ast = parse(file)
    try:
        cache.set(cache_key, ast, getattr(settings, 'SUMO_AST_CACHE_TIMEOUT', 3600))
    except Exception as e:
        logger.warning("Cache storage failed: %s", str(e))
    return replace(file, ast=ast)


def _is_skipped(relative: str, skip_list: Iterable[str]) -> bool:
    name = Path(relative).name
    return any(
        entry in (name, relative) or fnmatch.fnmatch(name, entry) or fnmatch.fnmatch(relative, entry)
        for entry in skip_list
    )


def is_within(path: Path, directory: Path) -> bool:
    """Whether ``path`` is ``directory`` or lies below it, compared lexically."""
    return path == directory or directory in path.parents


def discover_targets(project_dir: Any, include_glob: str, skip_list: Iterable[str] = (),
                     exclude_dirs: Iterable[Any] = ()) -> List[SourceFile]:
    """
    Find the contract files to mutate.

    Files that are not valid UTF-8 are returned with ``decode_error`` set;
    parsing them raises it, so the campaign reports and excludes them.

    Args:
        project_dir: Project root
        include_glob (str): Glob over project-relative paths
        skip_list: Contract file names (or glob patterns) to leave out
        exclude_dirs: Directories never searched, absolute or relative to the project (the work directory)

    Returns:
        List[SourceFile]: Matching files sorted by relative path

    Raises:
        EmptyTargetSetError: If nothing matches
    """
    root = Path(project_dir)
    skip_list = list(skip_list)
    excluded = [(root / directory).resolve() for directory in exclude_dirs]
    targets: List[SourceFile] = []
    for candidate in root.glob(include_glob):
        relative = candidate.relative_to(root).as_posix()
        if not candidate.is_file() or candidate.suffix != '.sol':
            continue
        resolved = candidate.resolve()
        if any(is_within(resolved, directory) for directory in excluded):
            continue
        if _is_skipped(relative, skip_list):
            logger.info("Skipping contract %s", relative)
            continue
        targets.append(SourceFile.read(candidate, relative))

    if not targets:
        logger.error("No contracts match %s in %s", include_glob, root)
        raise EmptyTargetSetError(f"No contract files match '{include_glob}' in {root}")

    targets.sort(key=lambda f: f.path)
    logger.info("Discovered %d target contract(s)", len(targets))
    return targets
