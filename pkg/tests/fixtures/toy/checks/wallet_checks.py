"""Base suite: behaviour of the wallet, without event assertions for deposits."""


def expect(source, fragment):
    assert ' '.join(fragment.split()) in ' '.join(source.split()), f"missing {fragment!r}"


def check_constructor_sets_owner(source):
    expect(source, 'constructor() { owner = msg.sender; }')


def check_deposit_requires_value(source):
    expect(source, 'require(msg.value > 0, "empty deposit");')


def check_deposit_is_payable(source):
    expect(source, 'function deposit() public payable {')


def check_deposit_credits_sender(source):
    expect(source, 'balances[msg.sender] += msg.value;')


def check_deposit_tracks_total(source):
    expect(source, 'totalDeposits += msg.value;')


def check_withdraw_checks_balance(source):
    expect(source, 'require(balances[msg.sender] >= amount, "insufficient balance");')


def check_withdraw_debits_sender(source):
    expect(source, 'balances[msg.sender] -= amount; totalDeposits -= amount;')


def check_withdraw_pays_sender(source):
    expect(source, 'payable(msg.sender).transfer(amount);')


def check_withdraw_emits_event(source):
    expect(source, 'emit Withdrawn(msg.sender, amount);')


def check_only_owner_changes_owner(source):
    expect(source, 'require(msg.sender == owner, "not owner"); _;')
    expect(source, 'function setOwner(address newOwner) public onlyOwner { owner = newOwner; }')
