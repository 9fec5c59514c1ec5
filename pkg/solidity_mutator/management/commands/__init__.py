"""
Management commands for the Solidity mutator.
"""
