# src/roots/__init__.py
