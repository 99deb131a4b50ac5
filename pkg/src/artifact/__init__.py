"""Exact oriented quantum coalgebras and regular isotopy invariants."""
