"""
Mutation operators: rule type, replacement tables and the operator catalog.
"""
from .base import OperatorRule, TreeIndex, apply_operator
from .catalog import CATEGORIES, OperatorCatalog
from .general import ecs_generate, er_generate, olfd_acm_generate
from .solidity import rvs_generate, sfr_generate

__all__ = [
    'CATEGORIES',
    'OperatorCatalog',
    'OperatorRule',
    'TreeIndex',
    'apply_operator',
    'ecs_generate',
    'er_generate',
    'olfd_acm_generate',
    'rvs_generate',
    'sfr_generate',
]
