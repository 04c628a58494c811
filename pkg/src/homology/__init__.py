# src/homology/__init__.py
