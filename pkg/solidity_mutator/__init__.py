"""
Mutation testing for Solidity smart contracts
"""
__version__ = '1.0.0'
