"""
Golden tests for the mutation operators
"""
from django.core.cache import cache
from django.test import SimpleTestCase

from solidity_mutator.nodes import NodeKind, splice, visit
from solidity_mutator.operators import (
    OperatorCatalog,
    TreeIndex,
    apply_operator,
    ecs_generate,
    er_generate,
    olfd_acm_generate,
    rvs_generate,
    sfr_generate,
)

from .helpers import source

CATALOG = OperatorCatalog.default()

MODIFIERS = """contract C {
    uint x;
    modifier onlyOwner() { _; }
    modifier whenOpen() { _; }
    function f() public onlyOwner whenOpen { x = 1; }
    function g() public { x = 2; }
}
"""

OVERLOADS = """contract C {
    function f(uint a) internal {}
    function f(uint a, uint b) internal {}
    function g() public { f(1); }
}
"""


def mutations(operator_id, text):
    return apply_operator(CATALOG[operator_id], source(text))


def mutants(operator_id, text):
    return [splice(text, mutation) for mutation in mutations(operator_id, text)]


class OperatorTestCase(SimpleTestCase):
    """Base class clearing the parse cache between tests"""

    def setUp(self):
        cache.clear()

    def tearDown(self):
        cache.clear()

    def assertMutants(self, operator_id, text, replacements):
        """Each ``(old, new)`` pair describes one expected mutant, in order."""
        expected = [text.replace(old, new, 1) for old, new in replacements]
        self.assertEqual(mutants(operator_id, text), expected)


class SolidityOperatorTestCase(OperatorTestCase):
    """Golden mutants of the Solidity-specific operators"""

    def test_avr(self):
        """Test address values are replaced with the zero or this address"""
        text = """contract C {
    address owner;
    function f(address a) public {
        owner = address(0);
        owner = msg.sender;
    }
}
"""
        self.assertMutants('AVR', text, [
            ('owner = address(0);', 'owner = address(this);'),
            ('owner = msg.sender;', 'owner = address(0);'),
        ])

    def test_ccd(self):
        """Test the constructor is commented out"""
        constructor = "constructor() {\n        x = 1;\n    }"
        text = "contract C {\n    uint x;\n    " + constructor + "\n}\n"
        self.assertMutants('CCD', text, [(constructor, '/*' + constructor + '*/')])

    def test_ccd_skips_constructor_with_base_arguments(self):
        """Test constructors receiving arguments from derived contracts are kept"""
        text = """contract A {
    uint x;
    constructor(uint v) { x = v; }
}
contract B is A(5) {
}
"""
        self.assertEqual(mutations('CCD', text), [])

    def test_dlr(self):
        """Test data location keywords are swapped where the result can compile"""
        text = """contract C {
    uint[] items;
    function f(uint[] calldata input) external {
        uint[] storage ref = items;
        uint[] memory copy = items;
    }
}
"""
        self.assertMutants('DLR', text, [
            ('uint[] calldata input', 'uint[] memory input'),
            ('uint[] storage ref', 'uint[] memory ref'),
            ('uint[] memory copy', 'uint[] storage copy'),
        ])

    def test_dod(self):
        """Test the delete operator is removed"""
        text = """contract C {
    mapping(address => uint) balances;
    function f(address a) public {
        delete balances[a];
    }
}
"""
        self.assertMutants('DOD', text, [('delete balances[a];', 'balances[a];')])

    def test_eed(self):
        """Test emit statements are commented out, wrapped in a block under an if"""
        text = """contract C {
    event Sent(uint a);
    function f(uint a) public {
        emit Sent(a);
        if (a > 1) emit Sent(a);
    }
}
"""
        first = text.replace('        emit Sent(a);', '        /*emit Sent(a);*/', 1)
        second = text.replace('if (a > 1) emit Sent(a);', 'if (a > 1) {/*emit Sent(a);*/}')
        self.assertEqual(mutants('EED', text), [first, second])

    def test_ehc(self):
        """Test require is deleted and swapped with assert"""
        text = """contract C {
    function f(uint x) public pure {
        require(x > 0, "m");
    }
}
"""
        self.assertMutants('EHC', text, [
            ('require(x > 0, "m");', '/*require(x > 0, "m");*/'),
            ('require(x > 0, "m");', 'assert(x > 0);'),
        ])

    def test_ehc_revert_is_only_deleted(self):
        """Test revert has no counterpart to swap with"""
        text = """contract C {
    function f() public pure {
        revert("no");
    }
}
"""
        self.assertMutants('EHC', text, [('revert("no");', '/*revert("no");*/')])

    def test_etr(self):
        """Test transfer is replaced with send and a value call"""
        text = """contract C {
    function f(uint amount) public {
        payable(msg.sender).transfer(amount);
    }
}
"""
        self.assertMutants('ETR', text, [
            ('.transfer(amount)', '.send(amount)'),
            ('.transfer(amount)', '.call{value: amount}("")'),
        ])

    def test_fvr(self):
        """Test every other visibility is tried"""
        text = """contract C {
    function f() public returns (uint) { return 1; }
}
"""
        self.assertMutants('FVR', text, [
            ('public', 'external'),
            ('public', 'internal'),
            ('public', 'private'),
        ])

    def test_fvr_skips_receive_and_fallback(self):
        """Test the receive and fallback functions keep their visibility"""
        text = """contract C {
    receive() external payable {}
    fallback() external {}
}
"""
        self.assertEqual(mutations('FVR', text), [])

    def test_fvr_keeps_externally_called_functions_visible(self):
        """Test functions called through a contract reference are not hidden"""
        text = """contract C {
    function f() public returns (uint) { return 1; }
    function g() public returns (uint) { return this.f(); }
}
"""
        replacements = [m.replacement for m in mutations('FVR', text) if m.span.start < text.index('function g')]
        self.assertEqual(replacements, ['external'])

    def test_gvr(self):
        """Test global variables are swapped with same-typed globals"""
        text = """contract C {
    function f() public view returns (uint, uint) {
        uint t = block.timestamp;
        uint g = gasleft();
        return (t, g);
    }
}
"""
        self.assertMutants('GVR', text, [
            ('block.timestamp', 'block.number'),
            ('gasleft()', 'block.gaslimit'),
        ])

    def test_mcr(self):
        """Test hash functions are swapped"""
        text = """contract C {
    function f(bytes memory data) public pure returns (bytes32) {
        return keccak256(data);
    }
}
"""
        self.assertMutants('MCR', text, [('keccak256(data)', 'sha256(data)')])

    def test_moc(self):
        """Test adjacent modifiers are swapped"""
        self.assertMutants('MOC', MODIFIERS, [('onlyOwner whenOpen {', 'whenOpen onlyOwner {')])

    def test_mod(self):
        """Test each modifier is deleted on its own"""
        self.assertMutants('MOD', MODIFIERS, [
            ('public onlyOwner whenOpen', 'public whenOpen'),
            ('public onlyOwner whenOpen', 'public onlyOwner'),
        ])

    def test_moi(self):
        """Test missing parameterless modifiers are inserted"""
        self.assertMutants('MOI', MODIFIERS, [
            ('function g() public {', 'function g() public onlyOwner {'),
            ('function g() public {', 'function g() public whenOpen {'),
        ])

    def test_mor(self):
        """Test a modifier is replaced with another one"""
        text = MODIFIERS.replace('public onlyOwner whenOpen', 'public onlyOwner')
        self.assertMutants('MOR', text, [('public onlyOwner {', 'public whenOpen {')])

    def test_omd(self):
        """Test an overriding modifier is commented out"""
        modifier = 'modifier m() override { _; }'
        text = """contract A { modifier m() virtual { _; } }
contract B is A {
    """ + modifier + """
    function f() public m {}
}
"""
        self.assertMutants('OMD', text, [(modifier, '/*' + modifier + '*/')])

    def test_pkd(self):
        """Test payable is removed unless the function needs it"""
        text = """contract C {
    uint x;
    function pay() public payable { x = 1; }
    function fund() public payable { x = msg.value; }
    receive() external payable {}
}
"""
        self.assertMutants('PKD', text, [('function pay() public payable', 'function pay() public')])

    def test_rsd(self):
        """Test return statements are commented out"""
        text = """contract C {
    function f() public pure returns (uint) { return 1; }
}
"""
        self.assertMutants('RSD', text, [('return 1;', '/*return 1;*/')])

    def test_rvs_swaps_tuple_components(self):
        """Test returned values of the same type are swapped"""
        text = """contract C {
    uint a;
    uint b;
    function f() public view returns (uint, uint) {
        return (a, b);
    }
}
"""
        self.assertMutants('RVS', text, [('return (a, b);', 'return (b, a);')])

    def test_rvs_swaps_named_returns(self):
        """Test named return variables are swapped when nothing is returned explicitly"""
        text = """contract C {
    function g() public pure returns (uint first, uint second) {
        first = 1;
        second = 2;
    }
}
"""
        self.assertMutants('RVS', text, [('uint first, uint second', 'uint second, uint first')])

    def test_rvs_generate_skips_mixed_types(self):
        """Test values of different types are never swapped"""
        text = """contract C {
    function f() public pure returns (uint, bool) {
        return (1, true);
    }
}
"""
        index = TreeIndex(source(text))
        function = visit(index.ast, NodeKind.FUNCTION_DEFINITION)[0]
        self.assertEqual(rvs_generate(function, index), [])

    def test_scec(self):
        """Test a contract cast is switched to another contract with the member"""
        text = """contract A { function f() public {} }
contract B { function f() public {} }
contract C {
    function g(address t) public {
        A(t).f();
    }
}
"""
        self.assertMutants('SCEC', text, [('A(t).f();', 'B(t).f();')])

    def test_sfd(self):
        """Test selfdestruct calls are commented out"""
        text = """contract C {
    address owner;
    function kill() public {
        selfdestruct(payable(owner));
    }
}
"""
        self.assertMutants('SFD', text, [
            ('selfdestruct(payable(owner));', '/*selfdestruct(payable(owner));*/'),
        ])

    def test_sfi(self):
        """Test selfdestruct is inserted into state-changing public functions"""
        text = """contract C {
    uint x;
    function f() public { x = 1; }
    function v() public view returns (uint) { return x; }
}
"""
        self.assertMutants('SFI', text, [
            ('function f() public { x = 1; }',
             'function f() public { selfdestruct(payable(msg.sender)); x = 1; }'),
        ])

    def test_sfr(self):
        """Test SafeMath calls are swapped with their counterpart"""
        text = """contract C {
    function f(uint a, uint b) public pure returns (uint) {
        return a.add(b);
    }
}
"""
        self.assertMutants('SFR', text, [('a.add(b)', 'a.sub(b)')])

    def test_sfr_generate_ignores_other_calls(self):
        """Test calls with more than one argument are not SafeMath calls"""
        text = """contract C {
    function f(uint a, uint b) public pure returns (uint) {
        return a.add(b, 1);
    }
}
"""
        index = TreeIndex(source(text))
        call = visit(index.ast, NodeKind.FUNCTION_CALL)[0]
        self.assertEqual(sfr_generate(call, index), [])

    def test_tor(self):
        """Test msg.sender and tx.origin are swapped"""
        text = """contract C {
    address owner;
    function f() public { owner = msg.sender; }
    function g() public view returns (bool) { return tx.origin == owner; }
}
"""
        self.assertMutants('TOR', text, [
            ('owner = msg.sender;', 'owner = tx.origin;'),
            ('return tx.origin == owner;', 'return msg.sender == owner;'),
        ])

    def test_vur(self):
        """Test units are replaced with another unit of the same kind"""
        text = """contract C {
    function f() public pure returns (uint, uint) {
        uint v = 1 ether;
        uint d = 2 days;
        return (v, d);
    }
}
"""
        self.assertMutants('VUR', text, [('1 ether', '1 gwei'), ('2 days', '2 weeks')])

    def test_vvr(self):
        """Test state variable visibility is changed but never to external"""
        text = """contract C {
    uint public x;
    uint y;
}
"""
        self.assertMutants('VVR', text, [
            ('uint public x;', 'uint internal x;'),
            ('uint public x;', 'uint private x;'),
            ('uint y;', 'uint public y;'),
        ])
        self.assertFalse(any('external' in m.replacement for m in mutations('VVR', text)))


class GeneralOperatorTestCase(OperatorTestCase):
    """Golden mutants of the general operators"""

    def test_acm(self):
        """Test a call is redirected to another overload with a zero argument"""
        self.assertMutants('ACM', OVERLOADS, [('f(1);', 'f(1, 0);')])

    def test_olfd(self):
        """Test only overloads that no call depends on are deleted"""
        definition = 'function f(uint a, uint b) internal {}'
        self.assertMutants('OLFD', OVERLOADS, [(definition, '/*' + definition + '*/')])

    def test_olfd_acm_generate_both_operators(self):
        """Test the shared generator returns both kinds of mutants"""
        index = TreeIndex(source(OVERLOADS))
        contract = index.contracts['C']
        operators = sorted(m.operator for m in olfd_acm_generate(contract, index))
        self.assertEqual(operators, ['ACM', 'OLFD'])

    def test_aor(self):
        """Test compound assignment operators are replaced"""
        text = """contract C {
    uint x;
    function f() public { x += 1; }
}
"""
        self.assertMutants('AOR', text, [('x += 1;', 'x -= 1;')])

    def test_bcrd(self):
        """Test break is replaced with continue and deleted"""
        text = """contract C {
    function f() public pure returns (uint s) {
        for (uint i = 0; i < 10; i++) {
            if (i == 5) break;
            s += i;
        }
    }
}
"""
        self.assertMutants('BCRD', text, [
            ('if (i == 5) break;', 'if (i == 5) continue;'),
            ('if (i == 5) break;', 'if (i == 5) {/*break;*/}'),
        ])

    def test_blr(self):
        """Test boolean literals are negated"""
        text = """contract C {
    function f() public pure returns (bool) {
        bool b = true;
        return b;
    }
}
"""
        self.assertMutants('BLR', text, [('bool b = true;', 'bool b = false;')])

    def test_bor(self):
        """Test binary operators are replaced"""
        text = """contract C {
    function f(uint a, uint b) public pure returns (uint) {
        return a + b;
    }
}
"""
        self.assertMutants('BOR', text, [('a + b', 'a - b')])

    def test_cbd(self):
        """Test each catch clause is commented out"""
        text = """contract T { function f() external {} }
contract C {
    T t;
    function g() public {
        try t.f() {} catch Error(string memory) {} catch {}
    }
}
"""
        self.assertMutants('CBD', text, [
            ('catch Error(string memory) {}', '/*catch Error(string memory) {}*/'),
            ('catch {}', '/*catch {}*/'),
        ])

    def test_cbd_skips_single_catch(self):
        """Test the only catch clause of a try is kept"""
        text = """contract T { function f() external {} }
contract C {
    T t;
    function g() public {
        try t.f() {} catch {}
    }
}
"""
        self.assertEqual(mutations('CBD', text), [])

    def test_csc(self):
        """Test conditions are forced and the else branch is removed"""
        text = """contract C {
    uint x;
    function f(uint a) public {
        if (a > 0) { x = 1; } else { x = 2; }
    }
}
"""
        self.assertMutants('CSC', text, [
            ('if (a > 0)', 'if (true)'),
            ('if (a > 0)', 'if (false)'),
            ('else { x = 2; }', '/*else { x = 2; }*/'),
        ])

    def test_ecs(self):
        """Test explicit conversions are narrowed to the smallest type"""
        text = """contract C {
    function f(uint256 big, bytes32 h) public pure returns (uint16, bytes4, uint8) {
        return (uint16(big), bytes4(h), uint8(big));
    }
}
"""
        self.assertMutants('ECS', text, [
            ('(uint16(big)', '(uint8(big)'),
            ('bytes4(h)', 'bytes1(h)'),
        ])

    def test_ecs_generate_ignores_smallest_types(self):
        """Test conversions that are already minimal are left alone"""
        text = """contract C {
    function f(uint256 big) public pure returns (uint8) {
        return uint8(big);
    }
}
"""
        index = TreeIndex(source(text))
        conversion = visit(index.ast, NodeKind.ELEMENTARY_TYPE_CONVERSION)[0]
        self.assertEqual(ecs_generate(conversion, index), [])

    def test_er(self):
        """Test enum definitions and member accesses are changed"""
        text = """contract C {
    enum State { Open, Closed }
    State state;
    function close() public { state = State.Closed; }
}
"""
        self.assertMutants('ER', text, [
            ('{ Open, Closed }', '{ Closed, Open }'),
            ('state = State.Closed;', 'state = State.Open;'),
        ])

    def test_er_generate_on_member_access(self):
        """Test the generator can be called on a single access"""
        text = """contract C {
    enum State { Open, Closed }
    State state;
    function open() public { state = State.Open; }
}
"""
        index = TreeIndex(source(text))
        access = visit(index.ast, NodeKind.ENUM_MEMBER_ACCESS)[0]
        self.assertEqual([m.replacement for m in er_generate(access, index)], ['Closed'])

    def test_hlr(self):
        """Test hexadecimal literals are replaced, except addresses and zero bytes"""
        text = """contract C {
    function f() public pure returns (uint, bytes4, address) {
        uint h = 0x10;
        bytes4 z = 0x00000000;
        address a = 0x5B38Da6a701c568545dCfcB03FcB875f56beddC4;
        return (h, z, a);
    }
}
"""
        self.assertMutants('HLR', text, [('0x10', '0x0')])

    def test_icm(self):
        """Test decrements of signed integers are mirrored"""
        text = """contract C {
    int x;
    uint y;
    function f() public {
        x -= 1;
        y -= 1;
    }
}
"""
        self.assertMutants('ICM', text, [('x -= 1;', 'x = -1;')])

    def test_ilr(self):
        """Test integer literals are incremented and decremented, zero only incremented"""
        text = """contract C {
    function f() public pure returns (uint, uint) {
        uint v = 5;
        uint z = 0;
        return (v, z);
    }
}
"""
        self.assertMutants('ILR', text, [
            ('uint v = 5;', 'uint v = 6;'),
            ('uint v = 5;', 'uint v = 4;'),
            ('uint z = 0;', 'uint z = 1;'),
        ])

    def test_lsc(self):
        """Test loop conditions are forced"""
        text = """contract C {
    function f() public pure returns (uint i) {
        while (i < 3) { i++; }
    }
}
"""
        self.assertMutants('LSC', text, [
            ('while (i < 3)', 'while (true)'),
            ('while (i < 3)', 'while (false)'),
        ])

    def test_orfd(self):
        """Test overriding functions are commented out"""
        override = 'function f() public override returns (uint) { return 2; }'
        text = """contract A { function f() public virtual returns (uint) { return 1; } }
contract B is A {
    """ + override + """
}
"""
        self.assertMutants('ORFD', text, [(override, '/*' + override + '*/')])

    def test_skd(self):
        """Test the super keyword is deleted"""
        text = """contract A { function f() public virtual {} }
contract B is A {
    function f() public override { super.f(); }
}
"""
        self.assertMutants('SKD', text, [('super.f();', 'f();')])

    def test_ski(self):
        """Test the super keyword is inserted before calls to overridden functions"""
        text = """contract A { function g() internal virtual {} }
contract B is A {
    function g() internal override {}
    function h() public { g(); }
}
"""
        self.assertMutants('SKI', text, [('{ g(); }', '{ super.g(); }')])

    def test_slr(self):
        """Test string literals are emptied, empty strings filled"""
        text = """contract C {
    function f() public pure returns (string memory, string memory) {
        string memory s = "abc";
        string memory e = "";
        return (s, e);
    }
}
"""
        self.assertMutants('SLR', text, [('"abc"', '""'), ('e = ""', 'e = "sumo"')])

    def test_uord(self):
        """Test increments are mirrored and unary operators deleted"""
        text = """contract C {
    function f(bool b, int y) public pure returns (uint i, bool n, int m) {
        i++;
        n = !b;
        m = -y;
    }
}
"""
        self.assertMutants('UORD', text, [
            ('i++;', 'i--;'),
            ('n = !b;', 'n = b;'),
            ('m = -y;', 'm = y;'),
        ])
