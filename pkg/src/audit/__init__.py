# src/audit/__init__.py
