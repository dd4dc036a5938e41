"""Tests for polygauge library."""
