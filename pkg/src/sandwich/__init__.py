"""Variants of finite full transformation semigroups."""
