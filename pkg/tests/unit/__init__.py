"""Unit test package for ska_oso_slt_services."""
