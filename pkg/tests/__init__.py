"""Test package for ska_tropical_newton."""
