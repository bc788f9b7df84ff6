"""Test suite for qpartitions."""
