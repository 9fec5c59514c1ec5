"""Enhanced suite: asserts the deposit event as well."""


def check_deposit_emits_event(source):
    fragment = 'emit Deposited(msg.sender, msg.value);'
    assert fragment in ' '.join(source.split()), f"missing {fragment!r}"
