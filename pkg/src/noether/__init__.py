"""Constructive reductions for Noether's problem."""
