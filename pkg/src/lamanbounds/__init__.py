"""Rigidity toolkit: Laman graphs, realization counts and lower bounds."""
