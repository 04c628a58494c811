# src/__init__.py
# package marker for src so scripts can `import src.*` in CI
__all__ = []
