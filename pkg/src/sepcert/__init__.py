"""Balanced separators, treewidth-deletion distributions and certificates."""
