"""schemakit: induce, edit, and evaluate event schema libraries."""

__version__ = "0.1.0"
