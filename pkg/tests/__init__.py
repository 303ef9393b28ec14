"""Root-level test package for the project."""
