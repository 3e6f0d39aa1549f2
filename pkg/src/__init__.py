"""Exact worst-case coverage of random intervals."""
