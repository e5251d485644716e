"""Exact cut-and-glue calculus for Delzant and b-Delzant polytopes."""
