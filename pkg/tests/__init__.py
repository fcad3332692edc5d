"""Test suite for the POLE signed-graph toolkit."""
