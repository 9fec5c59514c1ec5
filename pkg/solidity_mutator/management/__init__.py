"""
Management commands package for the Solidity mutator.
"""
