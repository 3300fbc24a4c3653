"""Tests for tfep."""
