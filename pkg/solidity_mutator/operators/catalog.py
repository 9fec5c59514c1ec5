"""
Registry of the mutation operators and their enabled flags.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Mapping, Optional

from ..exceptions import UnknownOperatorError
from . import general, solidity
from .base import OperatorRule
from .tables import GENERAL, SOLIDITY

logger = logging.getLogger(__name__)

CATEGORIES = (SOLIDITY, GENERAL)


@dataclass
class OperatorCatalog:
    """
    The operator rules keyed by id, in catalog order, plus per-id enabled flags.
    """

    rules: Dict[str, OperatorRule]
    enabled: Dict[str, bool] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for operator_id in self.rules:
            self.enabled.setdefault(operator_id, True)
        self.validate(self.enabled)

    @classmethod
    def default(cls, flags: Optional[Mapping[str, bool]] = None) -> 'OperatorCatalog':
        """Catalog of all operators, Solidity-specific first, everything enabled unless ``flags`` says otherwise."""
        rules = {rule.id: rule for rule in [*solidity.RULES, *general.RULES]}
        return cls(rules, dict(flags or {}))

    def __len__(self) -> int:
        return len(self.rules)

    def __iter__(self) -> Iterator[OperatorRule]:
        return iter(self.rules.values())

    def __contains__(self, operator_id: object) -> bool:
        return operator_id in self.rules

    def __getitem__(self, operator_id: str) -> OperatorRule:
        self.validate([operator_id])
        return self.rules[operator_id]

    def validate(self, operator_ids: Iterable[str]) -> None:
        """
        Raises:
            UnknownOperatorError: If any id is not part of the catalog
        """
        unknown = sorted(set(operator_ids) - set(self.rules))
        if unknown:
            raise UnknownOperatorError(f"Unknown mutation operator(s): {', '.join(unknown)}")

    def ids(self) -> List[str]:
        return list(self.rules)

    def enabled_ids(self) -> List[str]:
        return [operator_id for operator_id in self.rules if self.enabled[operator_id]]

    def is_enabled(self, operator_id: str) -> bool:
        self.validate([operator_id])
        return self.enabled[operator_id]

    def enable(self, *operator_ids: str) -> None:
        self._set(operator_ids, True)

    def disable(self, *operator_ids: str) -> None:
        self._set(operator_ids, False)

    def _set(self, operator_ids: Iterable[str], value: bool) -> None:
        operator_ids = list(operator_ids)
        self.validate(operator_ids)
        for operator_id in operator_ids:
            self.enabled[operator_id] = value
        logger.info("%s operator(s): %s", 'Enabled' if value else 'Disabled', ', '.join(operator_ids))

    def by_category(self, category: str) -> List[OperatorRule]:
        return [rule for rule in self.rules.values() if rule.category == category]

    def category_of(self, operator_id: str) -> str:
        return self[operator_id].category
