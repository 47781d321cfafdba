"""Resource lambda-calculus and its causal game semantics."""
