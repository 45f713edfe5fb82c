"""Test fixtures and hypothesis strategies."""
