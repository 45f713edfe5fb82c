"""Presentation layer - The command-line surface of the toolkit."""
