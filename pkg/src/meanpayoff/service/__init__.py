"""HTTP service exposing the solver, checker, and evaluation operations."""
