"""Tests for the coverage library."""
